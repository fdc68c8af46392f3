#include "dicke/scan.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "dicke/ed.h"
#include "dicke/observables.h"
#include "dicke/oracle.h"
#include "dicke/parallel.h"
#include "dicke/theory.h"
#include "json.hpp"

#ifndef DICKE_LAB_VERSION
#define DICKE_LAB_VERSION "unknown"
#endif

namespace dicke {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double floor_weight(double w) { return std::abs(w) < kWeightFloor ? 0.0 : w; }

// The closed forms only cover the pure dipole model.
bool has_analytic(const ModelParams& p) {
    return p.lambda_z == 0.0 && p.u == 0.0 && saddle_point(p).superradiant;
}

ComparisonRow make_row(double g, double x, std::optional<int> p_star, std::string quantity,
                       std::optional<double> ed, std::optional<double> analytic) {
    ComparisonRow row;
    row.g = g;
    row.g_over_gc = x;
    row.p_star = p_star;
    row.quantity = std::move(quantity);
    row.ed_value = ed;
    row.analytic_value = analytic;
    row.rel_deviation = relative_deviation(ed, analytic);
    row.near_qcp = p_star && *p_star < kNearQcpSector;
    return row;
}

// Everything a grid point can contribute; filled in parallel, read in order.
struct PointResult {
    std::vector<std::pair<std::string, ComparisonRow>> rows;  // (table, row)
};

void sector_rows(const ScanConfig& cfg, const GroundScanPoint& pt, double x, PointResult& out) {
    const ModelParams params = cfg.model.with_g(pt.g);
    std::optional<AnalyticPredictions> an;
    if (has_analytic(params)) an = predictions(params);
    auto pick = [&](double AnalyticPredictions::*field) -> std::optional<double> {
        if (!an) return std::nullopt;
        return (*an).*field;
    };
    auto wants = [&](const char* q) {
        return std::find(cfg.quantities.begin(), cfg.quantities.end(), q) != cfg.quantities.end();
    };
    const auto& G = pt.ground_sector;
    const int P = pt.p_star;

    if (wants("spectrum")) {
        auto row = make_row(pt.g, x, P, "E_0", pt.ground_energy, std::nullopt);
        row.extras["E_goldstone"] = pt.e_goldstone;
        row.extras["E_optical"] = pt.e_optical;
        if (pt.e_higgs) row.extras["E_higgs"] = *pt.e_higgs;
        out.rows.emplace_back("spectrum", std::move(row));
    }
    if (wants("goldstone")) {
        auto row = make_row(pt.g, x, P, "E_G", pt.e_goldstone, pick(&AnalyticPredictions::E_G));
        if (an) row.extras["envelope"] = goldstone_envelope(cfg.model, pt.g);
        out.rows.emplace_back("goldstone", std::move(row));
    }
    if (wants("higgs"))
        out.rows.emplace_back("higgs", make_row(pt.g, x, P, "E_H", pt.e_higgs, pick(&AnalyticPredictions::E_H)));
    if (wants("optical"))
        out.rows.emplace_back("optical", make_row(pt.g, x, P, "E_o", pt.e_optical, pick(&AnalyticPredictions::E_o)));
    if (wants("weights")) {
        const auto pc = photon_correlation(G, pt.next_sector);
        out.rows.emplace_back("weights", make_row(pt.g, x, P, "C_G", floor_weight(pc.weight_of(LineRole::goldstone)),
                                                  pick(&AnalyticPredictions::C_G)));
        out.rows.emplace_back("weights", make_row(pt.g, x, P, "C_o", floor_weight(pc.weight_of(LineRole::optical)),
                                                  pick(&AnalyticPredictions::C_o)));
        std::optional<double> ch;
        if (G.dim() >= 2) ch = floor_weight(number_correlation(G).weight_of(LineRole::higgs));
        out.rows.emplace_back("weights", make_row(pt.g, x, P, "C_H", ch, pick(&AnalyticPredictions::C_H)));
    }
    if (wants("mandel")) {
        std::optional<double> q;
        const double mean = mean_photon_number(G);
        if (mean > 0) q = mandel_q(G);
        auto row = make_row(pt.g, x, P, "Q_M", q, pick(&AnalyticPredictions::Q_M));
        row.extras["mean_photons"] = mean;
        if (an) row.extras["mean_photons_analytic"] = an->mean_photons;
        out.rows.emplace_back("mandel", std::move(row));
    }
}

void anomalous_row(const ScanConfig& cfg, double g, double x, std::optional<int> p_star, PointResult& out) {
    const ModelParams params = cfg.model.with_g(g);
    const int n_max = std::max(auto_nmax(params, 1, cfg.truncation_tol), auto_nmax(params, -1, cfg.truncation_tol));
    const auto even = solve_full(params, n_max, 1, cfg.eigen_tol);
    const auto odd = solve_full(params, n_max, -1, cfg.eigen_tol);
    auto row = make_row(g, x, p_star, "A_aa", floor_weight(anomalous_weight(even, odd)), std::nullopt);
    row.extras["n_max"] = n_max;
    if (has_analytic(params) && params.g_prime > 0) row.extras["delta_crw"] = predictions(params).delta_crw;
    out.rows.emplace_back("anomalous", std::move(row));
}

std::vector<std::string> extra_columns(const QuantityTable& table) {
    std::set<std::string> keys;
    for (const auto& r : table.rows)
        for (const auto& [k, _] : r.extras) keys.insert(k);
    return {keys.begin(), keys.end()};
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("malformed number '" + s + "'");
    return v;
}

// Comparisons that the near-QCP mask applies to.
bool masked_near_qcp(const std::string& q) { return q == "E_G" || q == "E_o"; }
bool absolute_metric(const std::string& q) { return q == "Q_M"; }

}  // namespace

std::optional<double> relative_deviation(std::optional<double> ed, std::optional<double> analytic) {
    if (!ed || !analytic) return std::nullopt;
    return std::abs(*ed - *analytic) / std::max(std::abs(*analytic), kDeviationEpsilon);
}

std::vector<QuantityTable> compute_scan(const ScanConfig& config) {
    const double gc = critical_coupling(config.model);
    std::vector<double> gs;
    gs.reserve(config.g_over_gc.size());
    for (double x : config.g_over_gc) gs.push_back(x * gc);

    const bool sectors = std::any_of(config.quantities.begin(), config.quantities.end(),
                                     [](const std::string& q) { return q != "anomalous"; });
    const bool anomalous =
        std::find(config.quantities.begin(), config.quantities.end(), "anomalous") != config.quantities.end();

    std::vector<GroundScanPoint> points;
    if (sectors || config.model.g_prime == 0.0) {
        ScanOptions opts;
        opts.p_max = config.p_max;
        opts.eigen_tol = config.eigen_tol;
        opts.threads = config.threads;
        ModelParams tmpl = config.model;
        tmpl.g_prime = 0.0;
        points = ground_state_scan(tmpl, gs, opts);
    }

    std::vector<PointResult> results(gs.size());
    parallel_for(gs.size(), resolve_workers(config.threads), [&](std::size_t i) {
        std::optional<int> p_star;
        if (!points.empty()) p_star = points[i].p_star;
        if (sectors) sector_rows(config, points[i], config.g_over_gc[i], results[i]);
        if (anomalous) anomalous_row(config, gs[i], config.g_over_gc[i], p_star, results[i]);
    });

    std::vector<QuantityTable> tables;
    for (const auto& name : known_quantities()) {
        if (std::find(config.quantities.begin(), config.quantities.end(), name) == config.quantities.end()) continue;
        QuantityTable t{name, {}};
        for (const auto& r : results)
            for (const auto& [table, row] : r.rows)
                if (table == name) t.rows.push_back(row);
        tables.push_back(std::move(t));
    }
    return tables;
}

std::string format_csv(const QuantityTable& table) {
    const auto extras = extra_columns(table);
    std::string out = "g,g_over_gc,p_star,quantity,ed_value,analytic_value,rel_deviation,near_qcp";
    for (const auto& e : extras) out += "," + e;
    out += "\n";
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
    for (const auto& r : table.rows) {
        out += fmt(r.g) + "," + fmt(r.g_over_gc) + "," + (r.p_star ? std::to_string(*r.p_star) : "") + "," +
               r.quantity + "," + opt(r.ed_value) + "," + opt(r.analytic_value) + "," + opt(r.rel_deviation) + "," +
               (r.near_qcp ? "true" : "false");
        for (const auto& e : extras) {
            const auto it = r.extras.find(e);
            out += "," + (it == r.extras.end() ? std::string() : fmt(it->second));
        }
        out += "\n";
    }
    return out;
}

std::string format_json(const QuantityTable& table) {
    json rows = json::array();
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    for (const auto& r : table.rows) {
        json j = {{"g", r.g},
                  {"g_over_gc", r.g_over_gc},
                  {"p_star", r.p_star ? json(*r.p_star) : json(nullptr)},
                  {"quantity", r.quantity},
                  {"ed_value", opt(r.ed_value)},
                  {"analytic_value", opt(r.analytic_value)},
                  {"rel_deviation", opt(r.rel_deviation)},
                  {"near_qcp", r.near_qcp}};
        for (const auto& [k, v] : r.extras) j[k] = v;
        rows.push_back(std::move(j));
    }
    return json{{"quantity", table.name}, {"rows", rows}}.dump(2) + "\n";
}

std::vector<fs::path> run_scan(const ScanConfig& config) {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec || !fs::is_directory(config.output_dir))
        throw std::runtime_error("cannot create output directory " + config.output_dir.string());

    const auto tables = compute_scan(config);
    const double gc = critical_coupling(config.model);

    std::vector<fs::path> written;
    json files = json::array();
    for (const auto& t : tables) {
        for (const auto& f : config.formats) {
            const fs::path path = config.output_dir / (t.name + "." + f);
            write_file(path, f == "csv" ? format_csv(t) : format_json(t));
            written.push_back(path);
            files.push_back(path.filename().string());
        }
    }

    json grid_g = json::array();
    for (double x : config.g_over_gc) grid_g.push_back(x * gc);
    const json manifest = {
        {"schema_version", kConfigSchemaVersion},
        {"version", DICKE_LAB_VERSION},
        {"timestamp", utc_timestamp()},
        {"model",
         {{"omega_a", config.model.omega_a},
          {"omega_b", config.model.omega_b},
          {"g_prime", config.model.g_prime},
          {"lambda_z", config.model.lambda_z},
          {"u", config.model.u},
          {"n_atoms", config.model.n_atoms}}},
        {"g_c", gc},
        {"grid", {{"g_over_gc", config.g_over_gc}, {"g", grid_g}}},
        {"quantities", config.quantities},
        {"formats", config.formats},
        {"tolerances",
         {{"eigen", config.eigen_tol},
          {"truncation", config.truncation_tol},
          {"staircase_tie", kStaircaseTie},
          {"degeneracy", kDegeneracyTol},
          {"weight_floor", kWeightFloor}}},
        {"threads", config.threads},
        {"p_max", config.p_max ? json(*config.p_max) : json(nullptr)},
        {"files", files}};
    const fs::path mpath = config.output_dir / "manifest.json";
    write_file(mpath, manifest.dump(2) + "\n");
    written.push_back(mpath);
    return written;
}

std::vector<ComparisonRow> read_rows(const fs::path& data_dir) {
    if (!fs::is_directory(data_dir)) throw std::runtime_error("not a directory: " + data_dir.string());
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(data_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv") paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());

    std::vector<ComparisonRow> rows;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + path.string());
        std::string line;
        if (!std::getline(in, line)) continue;
        const auto header = split(line);
        auto col = [&](const std::string& name) -> std::size_t {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) throw std::runtime_error(path.string() + ": missing column " + name);
            return static_cast<std::size_t>(it - header.begin());
        };
        const std::size_t cg = col("g"), cx = col("g_over_gc"), cp = col("p_star"), cq = col("quantity"),
                          ce = col("ed_value"), ca = col("analytic_value"), cr = col("rel_deviation"),
                          cn = col("near_qcp");
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto cells = split(line);
            if (cells.size() != header.size())
                throw std::runtime_error(path.string() + ": row has " + std::to_string(cells.size()) + " cells");
            ComparisonRow r;
            r.g = parse_double(cells[cg]).value_or(0.0);
            r.g_over_gc = parse_double(cells[cx]).value_or(0.0);
            if (!cells[cp].empty()) r.p_star = std::stoi(cells[cp]);
            r.quantity = cells[cq];
            r.ed_value = parse_double(cells[ce]);
            r.analytic_value = parse_double(cells[ca]);
            r.rel_deviation = parse_double(cells[cr]);
            r.near_qcp = cells[cn] == "true";
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::map<std::string, double> default_thresholds() {
    return {{"E_H", 0.10}, {"E_o", 0.05}, {"C_G", 0.15}, {"C_o", 0.15}, {"C_H", 0.10}, {"Q_M", 0.05}};
}

std::map<std::string, double> load_thresholds(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read thresholds file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("thresholds: not valid JSON: ") + e.what()});
    }
    if (!doc.is_object()) throw ConfigError({"thresholds: expected an object of quantity -> number"});
    std::vector<std::string> problems;
    auto out = default_thresholds();
    for (const auto& [k, v] : doc.items()) {
        if (!v.is_number() || !(v.get<double>() >= 0))
            problems.push_back("thresholds." + k + ": expected a non-negative number");
        else
            out[k] = v.get<double>();
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return out;
}

CompareSummary compare_report(const std::vector<ComparisonRow>& rows,
                              const std::map<std::string, double>& thresholds) {
    if (rows.empty()) throw std::invalid_argument("compare_report: no rows");

    std::vector<std::string> order;
    std::map<std::string, std::vector<const ComparisonRow*>> by_quantity;
    for (const auto& r : rows) {
        if (!by_quantity.count(r.quantity)) order.push_back(r.quantity);
        by_quantity[r.quantity].push_back(&r);
    }

    CompareSummary summary;
    for (const auto& q : order) {
        QuantitySummary s;
        s.quantity = q;
        s.absolute = absolute_metric(q);
        if (const auto it = thresholds.find(q); it != thresholds.end()) s.threshold = it->second;

        std::vector<double> devs;
        for (const ComparisonRow* r : by_quantity[q]) {
            if (!r->ed_value || !r->analytic_value) continue;
            ++s.rows;
            if (r->near_qcp && masked_near_qcp(q)) continue;
            devs.push_back(s.absolute ? std::abs(*r->ed_value - *r->analytic_value)
                                      : relative_deviation(r->ed_value, r->analytic_value).value());
        }
        s.enforced = devs.size();
        if (!devs.empty()) {
            std::sort(devs.begin(), devs.end());
            s.max_deviation = devs.back();
            const std::size_t n = devs.size();
            s.median_deviation = n % 2 ? devs[n / 2] : 0.5 * (devs[n / 2 - 1] + devs[n / 2]);
        }
        s.pass = !s.threshold || s.max_deviation <= *s.threshold;
        summary.pass = summary.pass && s.pass;
        summary.quantities.push_back(s);
    }
    return summary;
}

std::string format_summary(const CompareSummary& summary) {
    std::ostringstream out;
    for (const auto& s : summary.quantities) {
        out << s.quantity << ": rows=" << s.rows << " enforced=" << s.enforced << " max=" << fmt(s.max_deviation)
            << " median=" << fmt(s.median_deviation) << (s.absolute ? " (abs)" : " (rel)");
        if (s.threshold)
            out << " threshold=" << fmt(*s.threshold) << (s.pass ? " PASS" : " FAIL");
        else
            out << " report-only";
        out << "\n";
    }
    out << (summary.pass ? "overall: PASS" : "overall: FAIL") << "\n";
    return out.str();
}

std::vector<OracleReport> run_oracle(const ScanConfig& config) {
    if (config.model.n_atoms > oracle::kMaxAtoms)
        throw std::invalid_argument("oracle: n_atoms must be <= " + std::to_string(oracle::kMaxAtoms));
    const double gc = critical_coupling(config.model);
    std::vector<OracleReport> out(config.g_over_gc.size());
    parallel_for(out.size(), resolve_workers(config.threads), [&](std::size_t i) {
        const double x = config.g_over_gc[i];
        const auto c = oracle::compare_with_full_basis(config.model.with_g(x * gc), config.oracle_n_max);
        out[i] = {x, c.max_abs_diff, c.levels, c.max_residual};
    });
    return out;
}

}  // namespace dicke
