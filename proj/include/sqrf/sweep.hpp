// sweep.hpp — parameter sweeps, derivative-free minimization of the variance
// along one axis, and root-finding of dephasing thresholds.

#pragma once

#include "sqrf/bloch.hpp"
#include "sqrf/steady_state.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sqrf {

struct sweep_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct bracket_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------ sweep spec/result ----------------------------

enum class SweepAxis { delta_a, gamma_d, delta_c, rabi, kappa };

inline const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::delta_a: return "delta_a";
        case SweepAxis::gamma_d: return "gamma_d";
        case SweepAxis::delta_c: return "delta_c";
        case SweepAxis::rabi:    return "rabi";
        case SweepAxis::kappa:   return "kappa";
    }
    return "?";
}

inline SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "delta_a") return SweepAxis::delta_a;
    if (s == "gamma_d") return SweepAxis::gamma_d;
    if (s == "delta_c") return SweepAxis::delta_c;
    if (s == "rabi")    return SweepAxis::rabi;
    if (s == "kappa")   return SweepAxis::kappa;
    throw std::invalid_argument("unknown sweep axis \"" + s + "\"");
}

inline SystemParams with_axis_value(SystemParams p, SweepAxis axis, double x) {
    switch (axis) {
        case SweepAxis::delta_a: p.delta_a = x; break;
        case SweepAxis::gamma_d: p.gamma_d = x; break;
        case SweepAxis::delta_c: p.delta_c = x; break;
        case SweepAxis::rabi:    p.rabi = x; break;
        case SweepAxis::kappa:   p.kappa = x; break;
    }
    return p;
}

struct SweepSpec {
    SystemParams base;
    SweepAxis axis = SweepAxis::delta_a;
    std::vector<double> values;
    double chi_sq = 1.0;
    bool include_free_space = false;
    bool converge = true;  // per-point truncation-doubling check
    double tol = kDefaultSolveTol;
    double obs_tol = kDefaultObsTol;

    void validate() const {
        if (values.empty()) throw std::invalid_argument("SweepSpec: values must be nonempty");
        for (std::size_t k = 1; k < values.size(); ++k) {
            if (!((values[k] > values[k - 1] && values[1] > values[0]) ||
                  (values[k] < values[k - 1] && values[1] < values[0])))
                throw std::invalid_argument("SweepSpec: values must be strictly monotone");
        }
    }
};

struct SweepRow {
    double axis_value = 0.0;
    bool ok = false;
    Observables obs;
    std::optional<double> free_space_variance;
    int n_max_used = 0;
    double residual = 0.0;
    bool converged = false;
    std::string error;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
};

// One steady-state solve per axis value, rows in input order; per-point
// failures are recorded in the row instead of aborting the sweep.
inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    result.spec = spec;
    result.rows.reserve(spec.values.size());
    std::size_t failures = 0;
    std::string first_error;
    for (double x : spec.values) {
        SweepRow row;
        row.axis_value = x;
        const SystemParams p = with_axis_value(spec.base, spec.axis, x);
        try {
            const SteadyStateResult ss = spec.converge
                                             ? converge_truncation(p, spec.obs_tol, spec.tol)
                                             : solve_steady(p, spec.tol);
            row.obs = compute_observables(ss.rho, spec.chi_sq);
            row.n_max_used = ss.n_max_used;
            row.residual = ss.residual;
            row.converged = ss.converged;
            row.ok = true;
            if (spec.include_free_space && p.gamma > 0.0) {
                row.free_space_variance =
                    free_space_variance(BlochParams{p.rabi, p.delta_a, p.gamma, p.gamma_d});
            }
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            if (first_error.empty()) first_error = row.error;
            ++failures;
        }
        result.rows.push_back(std::move(row));
    }
    if (failures == result.rows.size())
        throw sweep_error("run_sweep: every point failed; first error: " + first_error);
    return result;
}

// --------------------------- scalar minimization ------------------------------

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
    bool interior = true;  // false when the coarse grid put the best point on a bracket edge
    std::vector<std::pair<double, double>> trace;  // every (x, f) evaluated, in order
};

// Coarse grid to bracket the minimum, then golden-section refinement.
inline ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo,
                                     double hi, double xtol, int grid_points = 33) {
    if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: need lo < hi");
    if (!(xtol > 0.0)) throw std::invalid_argument("minimize_scalar: xtol must be > 0");
    if (grid_points < 3) throw std::invalid_argument("minimize_scalar: need >= 3 grid points");

    ScalarMinimum best;
    const auto eval = [&](double x) {
        const double v = f(x);
        best.trace.emplace_back(x, v);
        return v;
    };

    int k_best = 0;
    double f_best = 0.0;
    for (int k = 0; k < grid_points; ++k) {
        const double x = lo + (hi - lo) * k / (grid_points - 1);
        const double v = eval(x);
        if (k == 0 || v < f_best) {
            f_best = v;
            k_best = k;
        }
    }
    best.interior = (k_best > 0 && k_best < grid_points - 1);

    double a = lo + (hi - lo) * std::max(k_best - 1, 0) / (grid_points - 1);
    double b = lo + (hi - lo) * std::min(k_best + 1, grid_points - 1) / (grid_points - 1);
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = eval(x1);
    double f2 = eval(x2);
    for (int it = 0; it < 200 && b - a > xtol; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(x2);
        }
    }
    // Best point actually evaluated, not the bracket midpoint.
    best.x = best.trace.front().first;
    best.value = best.trace.front().second;
    for (const auto& [x, v] : best.trace) {
        if (v < best.value) {
            best.value = v;
            best.x = x;
        }
    }
    return best;
}

// --------------------------- variance along an axis ---------------------------

// At coupling == 0 the cavity factors off; the Bloch route keeps free-space
// work cheap and exact for the axes that survive the limit.
inline bool free_space_axis(const SystemParams& base, SweepAxis axis) {
    return base.coupling == 0.0 &&
           (axis == SweepAxis::delta_a || axis == SweepAxis::rabi || axis == SweepAxis::gamma_d);
}

inline double variance_on_axis(const SystemParams& base, SweepAxis axis, double x,
                               double tol, double obs_tol) {
    const SystemParams p = with_axis_value(base, axis, x);
    if (free_space_axis(base, axis))
        return free_space_variance(BlochParams{p.rabi, p.delta_a, p.gamma, p.gamma_d});
    const SteadyStateResult r = converge_truncation(p, obs_tol, tol);
    if (!r.converged)
        throw convergence_error("variance_on_axis: truncation did not converge at " +
                                std::string(to_string(axis)) + " = " + std::to_string(x));
    return compute_observables(r.rho).variance;
}

struct OptimizeResult {
    double x_star = 0.0;
    Observables obs;
    bool interior = true;
    std::vector<std::pair<double, double>> trace;
};

// Minimizes the phase-optimized variance over one parameter axis.
inline OptimizeResult optimize_axis(const SystemParams& base, SweepAxis axis, double lo,
                                    double hi, double xtol, double tol = kDefaultSolveTol,
                                    double obs_tol = kDefaultObsTol, int grid_points = 33) {
    const ScalarMinimum m = minimize_scalar(
        [&](double x) { return variance_on_axis(base, axis, x, tol, obs_tol); }, lo, hi, xtol,
        grid_points);

    OptimizeResult res;
    res.x_star = m.x;
    res.interior = m.interior;
    res.trace = m.trace;
    const SystemParams p = with_axis_value(base, axis, m.x);
    if (free_space_axis(base, axis)) {
        res.obs = observables_from_atomic(
            bloch_steady(BlochParams{p.rabi, p.delta_a, p.gamma, p.gamma_d}));
    } else {
        res.obs = compute_observables(converge_truncation(p, obs_tol, tol).rho);
    }
    return res;
}

// --------------------------- free-space optimum -------------------------------

struct FreeSpaceOptimum {
    double rabi = 0.0;
    double delta_a = 0.0;
    double variance = 0.0;
};

// Grid-plus-refine search for the best free-space squeezing. The drive grid is
// log-spaced: near the dephasing boundary the optimum migrates to weak driving.
inline FreeSpaceOptimum free_space_minimum(double gamma, double gamma_d,
                                           double rabi_lo = 1e-4, double rabi_hi = 2.0,
                                           double delta_span = 3.0) {
    BlochParams base{0.0, 0.0, gamma, gamma_d};
    base.validate();
    const int n_rabi = 49;
    const int n_delta = 25;

    FreeSpaceOptimum best{rabi_lo * gamma, 0.0, 1e300};
    for (int i = 0; i < n_rabi; ++i) {
        const double w =
            gamma * rabi_lo * std::pow(rabi_hi / rabi_lo, double(i) / (n_rabi - 1));
        for (int j = 0; j < n_delta; ++j) {
            const double d = gamma * delta_span * (2.0 * j / (n_delta - 1) - 1.0);
            const double v = free_space_variance(BlochParams{w, d, gamma, gamma_d});
            if (v < best.variance) best = {w, d, v};
        }
    }
    // Coordinate refinement: drive, detuning, drive again.
    for (int round = 0; round < 2; ++round) {
        const ScalarMinimum mw = minimize_scalar(
            [&](double w) {
                return free_space_variance(BlochParams{w, best.delta_a, gamma, gamma_d});
            },
            std::max(rabi_lo * gamma * 0.5, best.rabi * 0.25), std::min(rabi_hi * gamma, best.rabi * 4.0),
            1e-8 * gamma, 33);
        best.rabi = mw.x;
        best.variance = mw.value;
        const ScalarMinimum md = minimize_scalar(
            [&](double d) {
                return free_space_variance(BlochParams{best.rabi, d, gamma, gamma_d});
            },
            best.delta_a - 0.5 * gamma, best.delta_a + 0.5 * gamma, 1e-8 * gamma, 33);
        best.delta_a = md.x;
        best.variance = md.value;
    }
    return best;
}

// --------------------------- dephasing threshold ------------------------------

struct ThresholdResult {
    double gamma_d_star = 0.0;
    std::vector<std::pair<double, double>> trace;  // (gamma_d, variance) in order
};

// Bisection for the dephasing rate at which the variance crosses
// target_variance. By default delta_a stays fixed at base.delta_a (the
// figure-as-printed convention); with reoptimize_delta_a the detuning is
// re-optimized in a local bracket around base.delta_a at every step. With
// coupling == 0 the free-space optimum over (rabi, delta_a) is used instead.
inline ThresholdResult dephasing_threshold(const SystemParams& base, double target_variance,
                                           double lo, double hi,
                                           bool reoptimize_delta_a = false,
                                           double rel_tol = 1e-3,
                                           double delta_a_halfwidth = 2.0,
                                           double tol = kDefaultSolveTol,
                                           double obs_tol = kDefaultObsTol) {
    if (!(lo < hi)) throw std::invalid_argument("dephasing_threshold: need lo < hi");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("dephasing_threshold: rel_tol must be > 0");

    ThresholdResult res;
    const auto variance_at = [&](double gd) {
        double v;
        if (base.coupling == 0.0) {
            v = free_space_minimum(base.gamma, gd).variance;
        } else if (reoptimize_delta_a) {
            SystemParams p = base;
            p.gamma_d = gd;
            v = optimize_axis(p, SweepAxis::delta_a, base.delta_a - delta_a_halfwidth,
                              base.delta_a + delta_a_halfwidth, 1e-4 * delta_a_halfwidth, tol,
                              obs_tol)
                    .obs.variance;
        } else {
            SystemParams p = base;
            p.gamma_d = gd;
            v = compute_observables(converge_truncation(p, obs_tol, tol).rho).variance;
        }
        res.trace.emplace_back(gd, v);
        return v;
    };

    double f_lo = variance_at(lo) - target_variance;
    double f_hi = variance_at(hi) - target_variance;
    if (!(f_lo < 0.0 && f_hi > 0.0))
        throw bracket_error("dephasing_threshold: bracket does not straddle the target variance");

    double a = lo, b = hi;
    for (int it = 0; it < 200 && (b - a) > rel_tol * std::max(std::abs(b), 1e-300); ++it) {
        const double mid = 0.5 * (a + b);
        if (variance_at(mid) - target_variance < 0.0)
            a = mid;
        else
            b = mid;
    }
    res.gamma_d_star = 0.5 * (a + b);
    return res;
}

}  // namespace sqrf
