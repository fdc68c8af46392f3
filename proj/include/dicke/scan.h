#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/model.h"

namespace dicke {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr double kDeviationEpsilon = 1e-12;
/// Rows whose optimal sector is below this are flagged near the QCP.
inline constexpr int kNearQcpSector = 3;

/// Every problem found while reading a config, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

struct ScanConfig {
    ModelParams model;             // g is ignored; the grid sets it
    std::vector<double> g_over_gc; // ascending, > 0
    std::vector<std::string> quantities;
    std::filesystem::path output_dir;
    std::vector<std::string> formats{"csv"};
    double eigen_tol = 1e-8;
    double truncation_tol = 1e-8;
    int threads = 0;
    std::optional<int> p_max;
    int oracle_n_max = 6;
};

/// Known quantity names, in the order files are written.
const std::vector<std::string>& known_quantities();

ScanConfig parse_config(const std::string& json_text);
ScanConfig load_config(const std::filesystem::path& path);

struct ComparisonRow {
    double g = 0.0;
    double g_over_gc = 0.0;
    std::optional<int> p_star;
    std::string quantity;
    std::optional<double> ed_value;
    std::optional<double> analytic_value;
    std::optional<double> rel_deviation;
    bool near_qcp = false;
    std::map<std::string, double> extras;  // e.g. "envelope", "delta_crw"
};

/// |ed - analytic| / max(|analytic|, eps), empty when either side is.
std::optional<double> relative_deviation(std::optional<double> ed, std::optional<double> analytic);

/// Rows for one requested quantity, in grid order.
struct QuantityTable {
    std::string name;
    std::vector<ComparisonRow> rows;
};

/// Computes every requested quantity; no files touched.
std::vector<QuantityTable> compute_scan(const ScanConfig& config);

/// compute_scan plus one file per quantity and format and manifest.json.
/// Returns the paths written.
std::vector<std::filesystem::path> run_scan(const ScanConfig& config);

std::string format_csv(const QuantityTable& table);
std::string format_json(const QuantityTable& table);

/// Reads every <quantity>.csv written by run_scan.
std::vector<ComparisonRow> read_rows(const std::filesystem::path& data_dir);

struct QuantitySummary {
    std::string quantity;
    std::size_t rows = 0;       // rows with a deviation
    std::size_t enforced = 0;   // rows counted against the threshold
    double max_deviation = 0.0; // over enforced rows
    double median_deviation = 0.0;
    std::optional<double> threshold;
    bool absolute = false;      // Q_M is compared in absolute terms
    bool pass = true;
};

struct CompareSummary {
    std::vector<QuantitySummary> quantities;
    bool pass = true;
};

/// Defaults for comparisons without an explicit threshold.
std::map<std::string, double> default_thresholds();
std::map<std::string, double> load_thresholds(const std::filesystem::path& path);

/// Requires rows non-empty. Near-QCP rows are not enforced for E_G and E_o.
CompareSummary compare_report(const std::vector<ComparisonRow>& rows,
                              const std::map<std::string, double>& thresholds);

std::string format_summary(const CompareSummary& summary);

struct OracleReport {
    double g_over_gc = 0.0;
    double max_abs_diff = 0.0;
    std::size_t levels = 0;
    double max_residual = 0.0;
};

/// Brute-force cross-check at every grid point; requires n_atoms <= 3.
std::vector<OracleReport> run_oracle(const ScanConfig& config);

inline constexpr double kOracleTolerance = 1e-10;

}  // namespace dicke
