// output.hpp — deterministic machine-readable emission. Every number is
// serialized with 17 significant digits so doubles round-trip exactly and
// repeated runs produce byte-identical files. JSON is emitted by hand for the
// same reason.

#pragma once

#include "sqrf/config.hpp"
#include "sqrf/homodyne.hpp"
#include "sqrf/steady_state.hpp"
#include "sqrf/sweep.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace sqrf {

inline constexpr const char* kVersion = "0.1.0";

inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Flat key/value JSON object writer; keeps insertion order.
class JsonObject {
public:
    void add_raw(const std::string& key, const std::string& raw) {
        fields_.emplace_back(key, raw);
    }
    void add(const std::string& key, double v) { add_raw(key, g17(v)); }
    void add(const std::string& key, int v) { add_raw(key, std::to_string(v)); }
    void add(const std::string& key, bool v) { add_raw(key, v ? "true" : "false"); }
    void add(const std::string& key, const std::string& v) {
        add_raw(key, "\"" + json_escape(v) + "\"");
    }
    std::string str(int indent = 0) const {
        const std::string pad(indent, ' ');
        std::string out = "{";
        for (std::size_t k = 0; k < fields_.size(); ++k) {
            if (k) out += ",";
            out += "\n" + pad + "  \"" + json_escape(fields_[k].first) +
                   "\": " + fields_[k].second;
        }
        out += "\n" + pad + "}";
        return out;
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

inline std::string config_echo_json(const RunConfig& cfg) {
    JsonObject o;
    o.add("rabi", cfg.params.rabi);
    o.add("delta_a", cfg.params.delta_a);
    o.add("delta_c", cfg.params.delta_c);
    o.add("coupling", cfg.params.coupling);
    o.add("kappa", cfg.params.kappa);
    o.add("gamma", cfg.params.gamma);
    o.add("gamma_d", cfg.params.gamma_d);
    o.add("n_max", cfg.params.n_max);
    o.add("tol", cfg.tol);
    o.add("obs_tol", cfg.obs_tol);
    o.add("chi_sq", cfg.chi_sq);
    return o.str(4);
}

inline std::string meta_json(const RunConfig& cfg) {
    std::string out = "  \"meta\": {\n";
    out += "    \"version\": \"" + std::string(kVersion) + "\",\n";
    out += "    \"command\": \"" + std::string(to_string(cfg.command)) + "\",\n";
    out += "    \"rate_unit\": \"" + json_escape(cfg.params.rate_unit) + "\",\n";
    out += "    \"config\": " + config_echo_json(cfg) + "\n  }";
    return out;
}

inline JsonObject observables_json(const Observables& o) {
    JsonObject j;
    j.add("a22", o.a22);
    j.add("cpae", o.cpae);
    j.add("cpae_max", o.cpae_max);
    j.add("coherence_re", o.coherence.real());
    j.add("coherence_im", o.coherence.imag());
    j.add("purity", o.purity);
    j.add("variance", o.variance);
    j.add("variance_min", o.variance_min);
    j.add("identity_residual", o.identity_residual);
    j.add("cavity_n", o.cavity_n);
    return j;
}

}  // namespace detail

// ------------------------------ sweep ----------------------------------------

inline void write_sweep_csv(const SweepResult& r, std::ostream& os) {
    os << "axis_value,a22,cpae,cpae_max,coherence_re,coherence_im,purity,variance,"
          "variance_min,identity_residual,cavity_n,free_space_variance,n_max_used,residual\n";
    for (const SweepRow& row : r.rows) {
        os << g17(row.axis_value) << ',';
        if (row.ok) {
            const Observables& o = row.obs;
            os << g17(o.a22) << ',' << g17(o.cpae) << ',' << g17(o.cpae_max) << ','
               << g17(o.coherence.real()) << ',' << g17(o.coherence.imag()) << ','
               << g17(o.purity) << ',' << g17(o.variance) << ',' << g17(o.variance_min) << ','
               << g17(o.identity_residual) << ',' << g17(o.cavity_n) << ',';
            os << (row.free_space_variance ? g17(*row.free_space_variance) : std::string());
            os << ',' << row.n_max_used << ',' << g17(row.residual) << '\n';
        } else {
            os << ",,,,,,,,,,,,\n";
        }
    }
}

inline void write_sweep_json(const SweepResult& r, const RunConfig& cfg, std::ostream& os) {
    os << "{\n" << detail::meta_json(cfg) << ",\n  \"rows\": [";
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        const SweepRow& row = r.rows[k];
        detail::JsonObject j;
        j.add("axis_value", row.axis_value);
        j.add("ok", row.ok);
        if (row.ok) {
            detail::JsonObject obs = detail::observables_json(row.obs);
            j.add_raw("observables", obs.str(6));
            if (row.free_space_variance)
                j.add("free_space_variance", *row.free_space_variance);
            else
                j.add_raw("free_space_variance", "null");
            j.add("n_max_used", row.n_max_used);
            j.add("residual", row.residual);
            j.add("converged", row.converged);
        } else {
            j.add("error", row.error);
        }
        os << (k ? "," : "") << "\n    " << j.str(4);
    }
    os << "\n  ]\n}\n";
}

// ------------------------------ point ----------------------------------------

inline void write_point_csv(const Observables& o, const SteadyStateResult& ss,
                            std::ostream& os) {
    os << "a22,cpae,cpae_max,coherence_re,coherence_im,purity,variance,variance_min,"
          "identity_residual,cavity_n,n_max_used,residual\n";
    os << g17(o.a22) << ',' << g17(o.cpae) << ',' << g17(o.cpae_max) << ','
       << g17(o.coherence.real()) << ',' << g17(o.coherence.imag()) << ',' << g17(o.purity)
       << ',' << g17(o.variance) << ',' << g17(o.variance_min) << ','
       << g17(o.identity_residual) << ',' << g17(o.cavity_n) << ',' << ss.n_max_used << ','
       << g17(ss.residual) << '\n';
}

inline void write_point_json(const Observables& o, const SteadyStateResult& ss,
                             const RunConfig& cfg, std::ostream& os) {
    detail::JsonObject obs = detail::observables_json(o);
    detail::JsonObject j;
    j.add_raw("observables", obs.str(4));
    j.add("n_max_used", ss.n_max_used);
    j.add("residual", ss.residual);
    j.add("converged", ss.converged);
    j.add("hermiticity_correction", ss.hermiticity_correction);
    j.add("trace_correction", ss.trace_correction);
    os << "{\n" << detail::meta_json(cfg) << ",\n  \"result\": " << j.str(2) << "\n}\n";
}

// ------------------------------ optimize / threshold -------------------------

inline void write_optimize_csv(const OptimizeResult& r, std::ostream& os) {
    os << "record,axis_value,variance\n";
    for (const auto& [x, v] : r.trace) os << "eval," << g17(x) << ',' << g17(v) << '\n';
    os << "result," << g17(r.x_star) << ',' << g17(r.obs.variance) << '\n';
}

inline void write_optimize_json(const OptimizeResult& r, const RunConfig& cfg,
                                std::ostream& os) {
    detail::JsonObject res;
    res.add("x_star", r.x_star);
    res.add("interior", r.interior);
    detail::JsonObject obs = detail::observables_json(r.obs);
    res.add_raw("observables", obs.str(4));
    os << "{\n" << detail::meta_json(cfg) << ",\n  \"result\": " << res.str(2)
       << ",\n  \"trace\": [";
    for (std::size_t k = 0; k < r.trace.size(); ++k)
        os << (k ? "," : "") << "\n    [" << g17(r.trace[k].first) << ", "
           << g17(r.trace[k].second) << "]";
    os << "\n  ]\n}\n";
}

inline void write_threshold_csv(const ThresholdResult& r, std::ostream& os) {
    os << "record,gamma_d,variance\n";
    for (const auto& [gd, v] : r.trace) os << "eval," << g17(gd) << ',' << g17(v) << '\n';
    os << "result," << g17(r.gamma_d_star) << ",\n";
}

inline void write_threshold_json(const ThresholdResult& r, const RunConfig& cfg,
                                 std::ostream& os) {
    os << "{\n" << detail::meta_json(cfg) << ",\n  \"result\": {\n    \"gamma_d_star\": "
       << g17(r.gamma_d_star) << "\n  },\n  \"trace\": [";
    for (std::size_t k = 0; k < r.trace.size(); ++k)
        os << (k ? "," : "") << "\n    [" << g17(r.trace[k].first) << ", "
           << g17(r.trace[k].second) << "]";
    os << "\n  ]\n}\n";
}

// ------------------------------ homodyne -------------------------------------

inline void write_homodyne_csv(const HomodynePrediction& h, std::ostream& os) {
    os << "i_fl,i_lo,variance,delta_g22,detected,min_lo_intensity\n";
    os << g17(h.i_fl) << ',' << g17(h.i_lo) << ',' << g17(h.variance) << ','
       << g17(h.delta_g22) << ',' << (h.detected ? 1 : 0) << ',';
    if (h.variance < 0.0 && h.i_fl > 0.0) os << g17(min_lo_intensity(h.i_fl, h.variance));
    os << '\n';
}

inline void write_homodyne_json(const HomodynePrediction& h, const RunConfig& cfg,
                                std::ostream& os) {
    detail::JsonObject j;
    j.add("i_fl", h.i_fl);
    j.add("i_lo", h.i_lo);
    j.add("variance", h.variance);
    j.add("delta_g22", h.delta_g22);
    j.add("detected", h.detected);
    if (h.variance < 0.0 && h.i_fl > 0.0)
        j.add("min_lo_intensity", min_lo_intensity(h.i_fl, h.variance));
    else
        j.add_raw("min_lo_intensity", "null");
    os << "{\n" << detail::meta_json(cfg) << ",\n  \"result\": " << j.str(2) << "\n}\n";
}

}  // namespace sqrf
