// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. The same criteria back the CLI's `suite` command.

#include "kpw/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);

    bool all = true;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& c : kpw::acceptance::run(ids)) {
        std::printf("[%s] %s: %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
                    c.title.c_str(), c.wall_seconds);
        for (const auto& m : c.metrics)
            std::printf("    %-4s %s = %.6g (threshold %.6g)\n", m.pass ? "ok" : "FAIL",
                        m.name.c_str(), m.value, m.threshold);
        for (const auto& n : c.notes) std::printf("    note: %s\n", n.c_str());
        all = all && c.pass;
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::printf("%s (%.1f s)\n", all ? "acceptance: all criteria passed"
                                     : "acceptance: FAILURES present",
                std::chrono::duration<double>(t1 - t0).count());
    return all ? 0 : 1;
}
