// Batch driver: coupling sweeps, threshold checks and the brute-force oracle.
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "dicke/scan.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

int report_config_error(const dicke::ConfigError& e) {
    std::cerr << "config error:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
    return kExitConfig;
}

int cmd_scan(const std::string& path) {
    const auto cfg = dicke::load_config(path);
    for (const auto& f : dicke::run_scan(cfg)) std::cout << f.string() << "\n";
    return kExitPass;
}

int cmd_compare(const std::string& dir, const std::string& thresholds_path) {
    const auto thresholds =
        thresholds_path.empty() ? dicke::default_thresholds() : dicke::load_thresholds(thresholds_path);
    const auto rows = dicke::read_rows(dir);
    if (rows.empty()) {
        std::cerr << "no comparison rows found in " << dir << "\n";
        return kExitConfig;
    }
    const auto summary = dicke::compare_report(rows, thresholds);
    std::cout << dicke::format_summary(summary);
    return summary.pass ? kExitPass : kExitFail;
}

int cmd_oracle(const std::string& path) {
    const auto cfg = dicke::load_config(path);
    bool pass = true;
    for (const auto& r : dicke::run_oracle(cfg)) {
        const bool ok = r.max_abs_diff <= dicke::kOracleTolerance;
        pass = pass && ok;
        std::printf("g/g_c=%-10.6g levels=%-5zu max_abs_diff=%.3e max_residual=%.3e %s\n", r.g_over_gc, r.levels,
                    r.max_abs_diff, r.max_residual, ok ? "PASS" : "FAIL");
    }
    return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact diagonalization lab for the collective qubit-cavity model"};
    app.require_subcommand(1);

    std::string scan_path, compare_dir, thresholds_path, oracle_path;
    auto* scan = app.add_subcommand("scan", "Run a coupling sweep and write data files");
    scan->add_option("config", scan_path, "JSON run configuration")->required();
    auto* compare = app.add_subcommand("compare", "Check scan output against deviation thresholds");
    compare->add_option("data-dir", compare_dir, "Directory written by scan")->required();
    compare->add_option("--thresholds", thresholds_path, "JSON map of quantity -> threshold");
    auto* oracle = app.add_subcommand("oracle", "Brute-force cross-check (n_atoms <= 3)");
    oracle->add_option("config", oracle_path, "JSON run configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*scan) return cmd_scan(scan_path);
        if (*compare) return cmd_compare(compare_dir, thresholds_path);
        if (*oracle) return cmd_oracle(oracle_path);
    } catch (const dicke::ConfigError& e) {
        return report_config_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
