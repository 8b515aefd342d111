#pragma once

#include <string>
#include <vector>

namespace kpw::acceptance {

struct Metric {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct CriterionResult {
    std::string id;    // "C1" .. "C12"
    std::string title;
    bool pass = false;
    std::vector<Metric> metrics;
    std::vector<std::string> notes;
    double wall_seconds = 0.0;
};

// All criteria, in order. ids may narrow to a subset (e.g. {"C4","C9"}).
std::vector<CriterionResult> run(const std::vector<std::string>& ids = {});

std::vector<std::string> all_ids();

} // namespace kpw::acceptance
