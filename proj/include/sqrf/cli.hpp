// cli.hpp — command dispatch behind the executable: runs one analysis
// command from a validated RunConfig and writes the requested output file.

#pragma once

#include "sqrf/output.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace sqrf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitNoConvergence = 4;
inline constexpr int kExitBracket = 5;

namespace detail {

inline void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot open output file \"" + cfg.out_path + "\"");
    out << payload;
}

}  // namespace detail

// Returns the process exit status; diagnostics go to diag (one line per error).
inline int run(const RunConfig& cfg, std::ostream& diag = std::cerr) {
    bool converged = true;
    try {
        std::ostringstream payload;
        switch (cfg.command) {
            case Command::point: {
                const SteadyStateResult ss =
                    converge_truncation(cfg.params, cfg.obs_tol, cfg.tol);
                const Observables o = compute_observables(ss.rho, cfg.chi_sq);
                converged = ss.converged;
                if (!cfg.dump_liouvillian_path.empty()) {
                    SystemParams p = cfg.params;
                    p.n_max = ss.n_max_used;
                    std::ofstream dump(cfg.dump_liouvillian_path,
                                       std::ios::binary | std::ios::trunc);
                    if (!dump)
                        throw config_error("cannot open dump file \"" +
                                           cfg.dump_liouvillian_path + "\"");
                    dump_coordinates(build_liouvillian_explicit(p), dump);
                }
                if (cfg.format == OutputFormat::csv)
                    write_point_csv(o, ss, payload);
                else
                    write_point_json(o, ss, cfg, payload);
                break;
            }
            case Command::sweep: {
                SweepSpec spec;
                spec.base = cfg.params;
                spec.axis = cfg.sweep->axis;
                spec.values = cfg.sweep->values;
                spec.chi_sq = cfg.chi_sq;
                spec.include_free_space = cfg.sweep->include_free_space;
                spec.converge = cfg.sweep->converge;
                spec.tol = cfg.tol;
                spec.obs_tol = cfg.obs_tol;
                const SweepResult r = run_sweep(spec);
                if (cfg.format == OutputFormat::csv)
                    write_sweep_csv(r, payload);
                else
                    write_sweep_json(r, cfg, payload);
                break;
            }
            case Command::optimize: {
                const OptimizeSection& s = *cfg.optimize;
                const OptimizeResult r = optimize_axis(cfg.params, s.axis, s.lo, s.hi, s.xtol,
                                                       cfg.tol, cfg.obs_tol, s.grid_points);
                if (!r.interior)
                    diag << "optimize: no interior minimum in the bracket, reporting the edge\n";
                if (cfg.format == OutputFormat::csv)
                    write_optimize_csv(r, payload);
                else
                    write_optimize_json(r, cfg, payload);
                break;
            }
            case Command::threshold: {
                const ThresholdSection& s = *cfg.threshold;
                const ThresholdResult r = dephasing_threshold(
                    cfg.params, s.target, s.lo, s.hi, s.reoptimize_delta_a, s.rel_tol,
                    s.delta_a_halfwidth, cfg.tol, cfg.obs_tol);
                if (cfg.format == OutputFormat::csv)
                    write_threshold_csv(r, payload);
                else
                    write_threshold_json(r, cfg, payload);
                break;
            }
            case Command::homodyne: {
                const HomodyneSection& s = *cfg.homodyne;
                double variance;
                if (s.variance) {
                    variance = *s.variance;
                } else {
                    const SteadyStateResult ss =
                        converge_truncation(cfg.params, cfg.obs_tol, cfg.tol);
                    converged = ss.converged;
                    variance = compute_observables(ss.rho, cfg.chi_sq).variance;
                }
                const HomodynePrediction h = predict_homodyne(s.i_fl, s.i_lo, variance);
                if (cfg.format == OutputFormat::csv)
                    write_homodyne_csv(h, payload);
                else
                    write_homodyne_json(h, cfg, payload);
                break;
            }
        }
        detail::emit(cfg, payload.str());
    } catch (const config_error& e) {
        diag << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const bracket_error& e) {
        diag << "error: " << e.what() << '\n';
        return kExitBracket;
    } catch (const convergence_error& e) {
        diag << "error: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    if (!converged) {
        diag << "error: truncation did not converge below the hard cap\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

}  // namespace sqrf::cli
