#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dicke/scan.h"
#include "dicke/theory.h"
#include "json.hpp"

namespace dicke {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
    return out;
}

// Collects problems instead of throwing on the first one.
struct Reader {
    std::vector<std::string> problems;

    void unknown_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
        for (const auto& [key, _] : obj.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                problems.push_back(where + ": unknown key '" + key + "'");
        }
    }

    std::optional<double> number(const json& obj, const char* key, const std::string& where) {
        if (!obj.contains(key)) return std::nullopt;
        const auto& v = obj.at(key);
        if (!v.is_number()) {
            problems.push_back(where + "." + key + ": expected a number");
            return std::nullopt;
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            problems.push_back(where + "." + key + ": must be finite");
            return std::nullopt;
        }
        return d;
    }

    std::optional<int> integer(const json& obj, const char* key, const std::string& where) {
        if (!obj.contains(key)) return std::nullopt;
        const auto& v = obj.at(key);
        if (!v.is_number_integer()) {
            problems.push_back(where + "." + key + ": expected an integer");
            return std::nullopt;
        }
        return v.get<int>();
    }

    std::vector<std::string> strings(const json& obj, const char* key) {
        std::vector<std::string> out;
        const auto& v = obj.at(key);
        if (!v.is_array()) {
            problems.push_back(std::string(key) + ": expected a list of strings");
            return out;
        }
        for (const auto& item : v) {
            if (item.is_string())
                out.push_back(item.get<std::string>());
            else
                problems.push_back(std::string(key) + ": expected a list of strings");
        }
        return out;
    }
};

void read_model(Reader& r, const json& m, ScanConfig& cfg) {
    if (!m.is_object()) {
        r.problems.push_back("model: expected an object");
        return;
    }
    r.unknown_keys(m, "model", {"omega_a", "omega_b", "g_prime", "lambda_z", "u", "n_atoms"});
    if (auto v = r.number(m, "omega_a", "model")) cfg.model.omega_a = *v;
    if (auto v = r.number(m, "omega_b", "model")) cfg.model.omega_b = *v;
    if (auto v = r.number(m, "g_prime", "model")) cfg.model.g_prime = *v;
    if (auto v = r.number(m, "lambda_z", "model")) cfg.model.lambda_z = *v;
    if (auto v = r.number(m, "u", "model")) cfg.model.u = *v;
    if (auto v = r.integer(m, "n_atoms", "model"))
        cfg.model.n_atoms = *v;
    else if (!m.contains("n_atoms"))
        r.problems.push_back("model.n_atoms: required");
    try {
        cfg.model.with_g(0.0).validate();
    } catch (const std::exception& e) {
        r.problems.push_back(std::string("model: ") + e.what());
    }
}

void read_grid(Reader& r, const json& g, ScanConfig& cfg) {
    if (g.is_array()) {
        for (const auto& v : g) {
            if (v.is_number())
                cfg.g_over_gc.push_back(v.get<double>());
            else
                r.problems.push_back("g_over_gc: list entries must be numbers");
        }
        if (cfg.g_over_gc.empty()) r.problems.push_back("g_over_gc: list must not be empty");
    } else if (g.is_object()) {
        r.unknown_keys(g, "g_over_gc", {"start", "stop", "count"});
        const auto start = r.number(g, "start", "g_over_gc");
        const auto stop = r.number(g, "stop", "g_over_gc");
        const auto count = r.integer(g, "count", "g_over_gc");
        if (!start || !stop || !count) {
            r.problems.push_back("g_over_gc: range needs start, stop and count");
            return;
        }
        if (*count < 2) {
            r.problems.push_back("g_over_gc.count: must be >= 2");
            return;
        }
        if (!(*stop > *start)) r.problems.push_back("g_over_gc: stop must exceed start");
        for (int i = 0; i < *count; ++i)
            cfg.g_over_gc.push_back(*start + (*stop - *start) * i / (*count - 1));
    } else {
        r.problems.push_back("g_over_gc: expected a list or {start, stop, count}");
        return;
    }
    if (std::any_of(cfg.g_over_gc.begin(), cfg.g_over_gc.end(), [](double x) { return !(x > 0) || !std::isfinite(x); }))
        r.problems.push_back("g_over_gc: values must be positive and finite");
    if (!std::is_sorted(cfg.g_over_gc.begin(), cfg.g_over_gc.end()))
        r.problems.push_back("g_over_gc: values must be ascending");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid config: " + join(problems)), problems_(std::move(problems)) {}

const std::vector<std::string>& known_quantities() {
    static const std::vector<std::string> names{"spectrum", "goldstone", "higgs",    "optical",
                                                "weights",  "mandel",    "anomalous"};
    return names;
}

ScanConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("not valid JSON: ") + e.what()});
    }
    if (!doc.is_object()) throw ConfigError({"top level must be an object"});

    Reader r;
    ScanConfig cfg;
    r.unknown_keys(doc, "config", {"schema_version", "model", "g_over_gc", "quantities", "output_dir", "formats",
                                   "tolerances", "threads", "p_max", "oracle"});

    if (auto v = r.integer(doc, "schema_version", "config")) {
        if (*v != kConfigSchemaVersion)
            r.problems.push_back("schema_version: unsupported value " + std::to_string(*v));
    } else if (!doc.contains("schema_version")) {
        r.problems.push_back("schema_version: required");
    }

    const std::size_t before_model = r.problems.size();
    if (doc.contains("model"))
        read_model(r, doc.at("model"), cfg);
    else
        r.problems.push_back("model: required");
    const bool model_ok = r.problems.size() == before_model;

    if (doc.contains("g_over_gc"))
        read_grid(r, doc.at("g_over_gc"), cfg);
    else
        r.problems.push_back("g_over_gc: required");

    if (doc.contains("quantities")) {
        cfg.quantities = r.strings(doc, "quantities");
        const auto& known = known_quantities();
        std::set<std::string> seen;
        for (const auto& q : cfg.quantities) {
            if (std::find(known.begin(), known.end(), q) == known.end())
                r.problems.push_back("quantities: unknown quantity '" + q + "'");
            if (!seen.insert(q).second) r.problems.push_back("quantities: duplicate '" + q + "'");
        }
        if (cfg.quantities.empty()) r.problems.push_back("quantities: must not be empty");
    } else {
        r.problems.push_back("quantities: required");
    }

    if (doc.contains("output_dir") && doc.at("output_dir").is_string() &&
        !doc.at("output_dir").get<std::string>().empty())
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    else
        r.problems.push_back("output_dir: required non-empty string");

    if (doc.contains("formats")) {
        cfg.formats = r.strings(doc, "formats");
        for (const auto& f : cfg.formats)
            if (f != "csv" && f != "json") r.problems.push_back("formats: unknown format '" + f + "'");
        if (cfg.formats.empty()) r.problems.push_back("formats: must not be empty");
    }

    if (doc.contains("tolerances")) {
        const auto& t = doc.at("tolerances");
        if (!t.is_object()) {
            r.problems.push_back("tolerances: expected an object");
        } else {
            r.unknown_keys(t, "tolerances", {"eigen", "truncation"});
            if (auto v = r.number(t, "eigen", "tolerances")) cfg.eigen_tol = *v;
            if (auto v = r.number(t, "truncation", "tolerances")) cfg.truncation_tol = *v;
            if (!(cfg.eigen_tol > 0) || !(cfg.truncation_tol > 0))
                r.problems.push_back("tolerances: must be positive");
        }
    }

    if (auto v = r.integer(doc, "threads", "config")) {
        if (*v < 0) r.problems.push_back("threads: must be >= 0");
        cfg.threads = *v;
    }
    if (auto v = r.integer(doc, "p_max", "config")) {
        if (*v < 2) r.problems.push_back("p_max: must be >= 2");
        cfg.p_max = *v;
    }
    if (doc.contains("oracle")) {
        const auto& o = doc.at("oracle");
        if (!o.is_object()) {
            r.problems.push_back("oracle: expected an object");
        } else {
            r.unknown_keys(o, "oracle", {"n_max"});
            if (auto v = r.integer(o, "n_max", "oracle")) {
                if (*v < 1) r.problems.push_back("oracle.n_max: must be >= 1");
                cfg.oracle_n_max = *v;
            }
        }
    }

    // Cross-field checks.
    const bool sector_quantities = std::any_of(cfg.quantities.begin(), cfg.quantities.end(),
                                               [](const std::string& q) { return q != "anomalous"; });
    if (cfg.model.g_prime != 0.0 && sector_quantities)
        r.problems.push_back("model.g_prime: must be 0 unless 'anomalous' is the only quantity");
    if (model_ok) {
        try {
            critical_coupling(cfg.model);
        } catch (const std::exception& e) {
            r.problems.push_back(std::string("model: ") + e.what());
        }
    }

    if (!r.problems.empty()) throw ConfigError(std::move(r.problems));
    return cfg;
}

ScanConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace dicke
