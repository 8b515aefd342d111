#include "kpw/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"spectral Kato-Ponce verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
    CLI::App* runcmd = app.add_subcommand("run", "run a JSON config");
    runcmd->add_option("config", config_path, "path to config JSON")->required();
    runcmd->add_option("--out", out_dir, "output directory");
    runcmd->add_option("--threads", threads, "sweep-instance parallelism");

    CLI11_PARSE(app, argc, argv);

    try {
        kpw::RunConfig cfg = kpw::parse_config_file(config_path);
        if (const char* env = std::getenv("KPW_THREADS")) cfg.threads = std::atoi(env);
        if (threads > 0) cfg.threads = threads;
        const kpw::RunReport rep = kpw::run(cfg);
        kpw::write_outputs(rep, out_dir);
        for (const auto& cr : rep.criteria) {
            std::cout << (cr.pass ? "[PASS] " : "[FAIL] ") << cr.id << ": " << cr.title << "\n";
            for (const auto& m : cr.metrics)
                std::cout << "       " << (m.pass ? "ok   " : "FAIL ") << m.name << " = "
                          << m.value << " (threshold " << m.threshold << ")\n";
            for (const auto& n : cr.notes) std::cout << "       note: " << n << "\n";
        }
        for (const auto& r : rep.rules) {
            if (!rep.criteria.empty()) break; // criteria already printed
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " = " << r.measured
                      << " (threshold " << r.threshold << ")\n";
        }
        std::cout << (rep.all_pass ? "all rules passed" : "some rules FAILED") << " ("
                  << rep.wall_seconds << " s)\n";
        return rep.all_pass ? 0 : 1;
    } catch (const kpw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    }
}
