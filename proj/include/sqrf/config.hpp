// config.hpp — run configuration: JSON document + flag overrides -> validated
// RunConfig. Unknown keys are hard errors.

#pragma once

#include "sqrf/sweep.hpp"

#include <json.hpp>

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqrf {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { point, sweep, optimize, threshold, homodyne };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::point:     return "point";
        case Command::sweep:     return "sweep";
        case Command::optimize:  return "optimize";
        case Command::threshold: return "threshold";
        case Command::homodyne:  return "homodyne";
    }
    return "?";
}

enum class OutputFormat { csv, json };

struct SweepSection {
    SweepAxis axis = SweepAxis::delta_a;
    std::vector<double> values;
    bool include_free_space = false;
    bool converge = true;
};

struct OptimizeSection {
    SweepAxis axis = SweepAxis::delta_a;
    double lo = 0.0;
    double hi = 0.0;
    double xtol = 1e-4;
    int grid_points = 33;
};

struct ThresholdSection {
    double target = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool reoptimize_delta_a = false;
    double rel_tol = 1e-3;
    double delta_a_halfwidth = 2.0;
};

struct HomodyneSection {
    double i_fl = 0.0;
    double i_lo = 0.0;
    std::optional<double> variance;  // when absent, taken from the steady state
};

struct RunConfig {
    Command command = Command::point;
    SystemParams params;
    double tol = kDefaultSolveTol;
    double obs_tol = kDefaultObsTol;
    double chi_sq = 1.0;
    std::optional<SweepSection> sweep;
    std::optional<OptimizeSection> optimize;
    std::optional<ThresholdSection> threshold;
    std::optional<HomodyneSection> homodyne;
    std::string out_path;  // empty -> stdout
    OutputFormat format = OutputFormat::csv;
    std::string dump_liouvillian_path;
};

// ------------------------------ presets --------------------------------------

// The strong-drive cavity operating point: rabi/g = 14, kappa/g = 1.58,
// gamma/g = 13/300, delta_c/g = -34. "fig2" sweeps the atom detuning across
// the cavity resonance; "fig3" probes the dephasing thresholds at the
// resonance detuning.
inline std::string preset_config(const std::string& name) {
    static const char* common = R"("rabi": 14.0,
  "delta_a": -19.0,
  "delta_c": -34.0,
  "coupling": 1.0,
  "kappa": 1.58,
  "gamma": 0.043333333333333335,
  "gamma_d": 0.0)";
    if (name == "fig2") {
        return std::string("{\n  ") + common + R"(,
  "sweep": {"axis": "delta_a", "start": -30.0, "stop": -10.0, "step": 0.1,
            "include_free_space": true},
  "optimize": {"axis": "delta_a", "lo": -25.0, "hi": -15.0, "xtol": 1e-4}
}
)";
    }
    if (name == "fig3") {
        return std::string("{\n  ") + common + R"(,
  "sweep": {"axis": "gamma_d", "start": 0.0, "stop": 0.3466666666666667, "step": 0.0173333333333333},
  "threshold": {"target": 0.0, "lo": 0.0, "hi": 0.65}
}
)";
    }
    throw config_error("unknown preset \"" + name + "\" (available: fig2, fig3)");
}

// ------------------------------ json helpers ---------------------------------

namespace detail {

using json = nlohmann::json;

inline void require_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& prefix) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key))
            throw config_error("unknown key \"" + prefix + key + "\"");
    }
}

inline double get_number(const json& obj, const std::string& key, double fallback,
                         const std::string& prefix) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw config_error("key \"" + prefix + key + "\" must be a number");
    return v.get<double>();
}

inline double require_number(const json& obj, const std::string& key,
                             const std::string& prefix) {
    if (!obj.contains(key)) throw config_error("missing required key \"" + prefix + key + "\"");
    return get_number(obj, key, 0.0, prefix);
}

inline int get_int(const json& obj, const std::string& key, int fallback,
                   const std::string& prefix) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw config_error("key \"" + prefix + key + "\" must be an integer");
    return v.get<int>();
}

inline bool get_bool(const json& obj, const std::string& key, bool fallback,
                     const std::string& prefix) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw config_error("key \"" + prefix + key + "\" must be a boolean");
    return v.get<bool>();
}

inline std::string get_string(const json& obj, const std::string& key,
                              const std::string& fallback, const std::string& prefix) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw config_error("key \"" + prefix + key + "\" must be a string");
    return v.get<std::string>();
}

// "a.b=value" applied onto the document; the value is parsed as JSON when it
// is one, otherwise taken as a string.
inline void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override \"" + assignment + "\" is not of the form key=value");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string part = path.substr(start, dot - start);
        if (part.empty()) throw config_error("override \"" + assignment + "\" has an empty key");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            break;
        }
        node = &(*node)[part];
        if (!node->is_object() && !node->is_null())
            throw config_error("override \"" + path + "\" descends into a non-object");
        start = dot + 1;
    }
}

inline std::vector<double> sweep_values(const json& s) {
    const bool has_values = s.contains("values");
    const bool has_range = s.contains("start") || s.contains("stop") || s.contains("step");
    if (has_values && has_range)
        throw config_error("sweep: give either \"values\" or start/stop/step, not both");
    std::vector<double> values;
    if (has_values) {
        const json& arr = s.at("values");
        if (!arr.is_array()) throw config_error("key \"sweep.values\" must be an array");
        for (const auto& v : arr) {
            if (!v.is_number()) throw config_error("key \"sweep.values\" must hold numbers");
            values.push_back(v.get<double>());
        }
    } else if (has_range) {
        const double start = require_number(s, "start", "sweep.");
        const double stop = require_number(s, "stop", "sweep.");
        const double step = require_number(s, "step", "sweep.");
        if (!(step != 0.0) || (stop - start) * step < 0.0)
            throw config_error("sweep: step must move start towards stop");
        const double count = std::floor((stop - start) / step + 1e-9) + 1.0;
        if (!(count >= 1.0) || count > 1e7)
            throw config_error("sweep: start/stop/step describe an unreasonable point count");
        const int n = static_cast<int>(count);
        values.reserve(n);
        for (int k = 0; k < n; ++k) values.push_back(start + k * step);
    } else {
        throw config_error("missing required key \"sweep.values\" (or start/stop/step)");
    }
    if (values.empty()) throw config_error("key \"sweep.values\" must be nonempty");
    for (std::size_t k = 1; k < values.size(); ++k) {
        const bool up = values[1] > values[0];
        if (!(up ? values[k] > values[k - 1] : values[k] < values[k - 1]))
            throw config_error("key \"sweep.values\" must be strictly monotone");
    }
    return values;
}

}  // namespace detail

// ------------------------------ parse_config ---------------------------------

inline RunConfig parse_config(Command command, const std::string& json_text,
                              const std::vector<std::string>& overrides = {}) {
    using detail::json;
    json doc;
    try {
        doc = json_text.empty() ? json::object() : json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("config must be a JSON object");
    for (const auto& ov : overrides) detail::apply_override(doc, ov);

    detail::require_keys(doc,
                         {"rabi", "delta_a", "delta_c", "coupling", "kappa", "gamma", "gamma_d",
                          "n_max", "tol", "obs_tol", "chi_sq", "sweep", "optimize", "threshold",
                          "homodyne"},
                         "");

    RunConfig cfg;
    cfg.command = command;
    SystemParams defaults;
    cfg.params.rabi = detail::get_number(doc, "rabi", defaults.rabi, "");
    cfg.params.delta_a = detail::get_number(doc, "delta_a", defaults.delta_a, "");
    cfg.params.delta_c = detail::get_number(doc, "delta_c", defaults.delta_c, "");
    cfg.params.coupling = detail::get_number(doc, "coupling", defaults.coupling, "");
    cfg.params.kappa = detail::get_number(doc, "kappa", defaults.kappa, "");
    cfg.params.gamma = detail::get_number(doc, "gamma", defaults.gamma, "");
    cfg.params.gamma_d = detail::get_number(doc, "gamma_d", defaults.gamma_d, "");
    cfg.params.n_max = detail::get_int(doc, "n_max", defaults.n_max, "");
    cfg.params.rate_unit = cfg.params.coupling > 0.0 ? "g" : "Gamma";
    cfg.tol = detail::get_number(doc, "tol", kDefaultSolveTol, "");
    cfg.obs_tol = detail::get_number(doc, "obs_tol", kDefaultObsTol, "");
    cfg.chi_sq = detail::get_number(doc, "chi_sq", 1.0, "");

    if (!(cfg.params.coupling >= 0.0)) throw config_error("key \"coupling\" must be >= 0");
    if (!(cfg.params.kappa >= 0.0)) throw config_error("key \"kappa\" must be >= 0");
    if (!(cfg.params.gamma >= 0.0)) throw config_error("key \"gamma\" must be >= 0");
    if (!(cfg.params.gamma_d >= 0.0)) throw config_error("key \"gamma_d\" must be >= 0");
    if (cfg.params.n_max < 0) throw config_error("key \"n_max\" must be >= 0");
    if (cfg.params.gamma == 0.0 && cfg.params.kappa == 0.0)
        throw config_error("keys \"gamma\" and \"kappa\" cannot both be zero");
    if (!(cfg.tol > 0.0)) throw config_error("key \"tol\" must be > 0");
    if (!(cfg.obs_tol > 0.0)) throw config_error("key \"obs_tol\" must be > 0");
    if (!(cfg.chi_sq > 0.0)) throw config_error("key \"chi_sq\" must be > 0");

    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        if (!s.is_object()) throw config_error("key \"sweep\" must be an object");
        detail::require_keys(
            s, {"axis", "values", "start", "stop", "step", "include_free_space", "converge"},
            "sweep.");
        if (!s.contains("axis")) throw config_error("missing required key \"sweep.axis\"");
        SweepSection sec;
        try {
            sec.axis = sweep_axis_from_string(detail::get_string(s, "axis", "", "sweep."));
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("key \"sweep.axis\": ") + e.what());
        }
        sec.values = detail::sweep_values(s);
        sec.include_free_space = detail::get_bool(s, "include_free_space", false, "sweep.");
        sec.converge = detail::get_bool(s, "converge", true, "sweep.");
        cfg.sweep = std::move(sec);
    }
    if (doc.contains("optimize")) {
        const json& s = doc.at("optimize");
        if (!s.is_object()) throw config_error("key \"optimize\" must be an object");
        detail::require_keys(s, {"axis", "lo", "hi", "xtol", "grid_points"}, "optimize.");
        if (!s.contains("axis")) throw config_error("missing required key \"optimize.axis\"");
        OptimizeSection sec;
        try {
            sec.axis = sweep_axis_from_string(detail::get_string(s, "axis", "", "optimize."));
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("key \"optimize.axis\": ") + e.what());
        }
        sec.lo = detail::require_number(s, "lo", "optimize.");
        sec.hi = detail::require_number(s, "hi", "optimize.");
        sec.xtol = detail::get_number(s, "xtol", 1e-4, "optimize.");
        sec.grid_points = detail::get_int(s, "grid_points", 33, "optimize.");
        if (!(sec.lo < sec.hi)) throw config_error("optimize: need lo < hi");
        if (!(sec.xtol > 0.0)) throw config_error("key \"optimize.xtol\" must be > 0");
        if (sec.grid_points < 3) throw config_error("key \"optimize.grid_points\" must be >= 3");
        cfg.optimize = sec;
    }
    if (doc.contains("threshold")) {
        const json& s = doc.at("threshold");
        if (!s.is_object()) throw config_error("key \"threshold\" must be an object");
        detail::require_keys(
            s, {"target", "lo", "hi", "reoptimize_delta_a", "rel_tol", "delta_a_halfwidth"},
            "threshold.");
        ThresholdSection sec;
        sec.target = detail::require_number(s, "target", "threshold.");
        sec.lo = detail::require_number(s, "lo", "threshold.");
        sec.hi = detail::require_number(s, "hi", "threshold.");
        sec.reoptimize_delta_a = detail::get_bool(s, "reoptimize_delta_a", false, "threshold.");
        sec.rel_tol = detail::get_number(s, "rel_tol", 1e-3, "threshold.");
        sec.delta_a_halfwidth = detail::get_number(s, "delta_a_halfwidth", 2.0, "threshold.");
        if (!(sec.lo < sec.hi)) throw config_error("threshold: need lo < hi");
        if (!(sec.rel_tol > 0.0)) throw config_error("key \"threshold.rel_tol\" must be > 0");
        cfg.threshold = sec;
    }
    if (doc.contains("homodyne")) {
        const json& s = doc.at("homodyne");
        if (!s.is_object()) throw config_error("key \"homodyne\" must be an object");
        detail::require_keys(s, {"i_fl", "i_lo", "variance"}, "homodyne.");
        HomodyneSection sec;
        sec.i_fl = detail::require_number(s, "i_fl", "homodyne.");
        sec.i_lo = detail::require_number(s, "i_lo", "homodyne.");
        if (s.contains("variance")) sec.variance = detail::get_number(s, "variance", 0.0, "homodyne.");
        if (!(sec.i_fl >= 0.0)) throw config_error("key \"homodyne.i_fl\" must be >= 0");
        if (!(sec.i_lo >= 0.0)) throw config_error("key \"homodyne.i_lo\" must be >= 0");
        cfg.homodyne = sec;
    }

    // The command must find its section.
    switch (command) {
        case Command::point:
            break;
        case Command::sweep:
            if (!cfg.sweep) throw config_error("missing required key \"sweep\"");
            break;
        case Command::optimize:
            if (!cfg.optimize) throw config_error("missing required key \"optimize\"");
            break;
        case Command::threshold:
            if (!cfg.threshold) throw config_error("missing required key \"threshold\"");
            break;
        case Command::homodyne:
            if (!cfg.homodyne) throw config_error("missing required key \"homodyne\"");
            break;
    }
    return cfg;
}

}  // namespace sqrf
