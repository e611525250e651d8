// steady_state.hpp — stationary solution of L vec(rho) = 0 under Tr rho = 1
// via elimination of one diagonal element, plus a truncation-doubling loop
// that certifies the Fock cutoff against the observables.

#pragma once

#include "sqrf/liouvillian.hpp"
#include "sqrf/observables.hpp"

#include <Eigen/SparseLU>

#include <stdexcept>
#include <vector>

namespace sqrf {

struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncation-doubling ran into the hard cap without certifying the cutoff.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fock truncations beyond this are rejected; the cavity stays nearly empty in
// the regimes of interest, so hitting the cap signals a bad parameter point.
inline constexpr int kTruncationHardCap = 64;

inline constexpr double kDefaultSolveTol = 1e-10;
inline constexpr double kDefaultObsTol = 1e-8;
// Hermitize/renormalize corrections above this indicate an assembly bug.
inline constexpr double kMaxPostCorrection = 1e-6;

// ------------------------------ trace elimination ----------------------------

// L vec(rho) = 0 is singular by trace conservation. Substituting
//   rho_e = 1 - sum_{d in diag, d != e} rho_d
// for one diagonal element e and dropping its row and column yields
// matrix x = -inhomogeneity with a unique solution whenever the steady state
// is unique.
struct EliminatedSystem {
    SparseMatrix matrix;    // (dim-1) x (dim-1)
    Vector inhomogeneity;   // constant terms; solve matrix x = -inhomogeneity
    int eliminated = 0;     // vec position of the removed diagonal element
};

inline EliminatedSystem eliminate_trace(const Liouvillian& l, int elim_n = 0, int elim_i = 1) {
    const int dh = l.dim_hilbert();
    const int idx = composite_index(elim_n, elim_i, l.n_max);
    const int e = idx * dh + idx;
    const int dim = l.dim;

    const auto squeeze = [e](int k) { return k < e ? k : k - 1; };

    Vector b = Vector::Zero(dim - 1);
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(l.entries.nonZeros()) + 8 * dh);
    for (int k = 0; k < l.entries.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(l.entries, k); it; ++it) {
            const int r = static_cast<int>(it.row());
            const int c = static_cast<int>(it.col());
            if (r == e) continue;
            if (c == e) {
                b(squeeze(r)) = it.value();
            } else {
                trip.emplace_back(squeeze(r), squeeze(c), it.value());
            }
        }
    }
    // The substitution sends every remaining diagonal column a -L_{r,e} share.
    for (int r = 0; r < dim - 1; ++r) {
        if (b(r) == Complex(0.0, 0.0)) continue;
        for (int d = 0; d < dh; ++d) {
            const int col = d * dh + d;
            if (col == e) continue;
            trip.emplace_back(r, squeeze(col), -b(r));
        }
    }

    EliminatedSystem sys;
    sys.matrix.resize(dim - 1, dim - 1);
    sys.matrix.setFromTriplets(trip.begin(), trip.end());
    sys.matrix.makeCompressed();
    sys.inhomogeneity = std::move(b);
    sys.eliminated = e;
    return sys;
}

// ------------------------------ direct solve ----------------------------------

struct SteadyStateResult {
    DensityMatrix rho;
    double residual = 0.0;  // max-norm of L vec(rho) for the returned rho
    int n_max_used = 0;
    bool converged = false;
    double hermiticity_correction = 0.0;
    double trace_correction = 0.0;
};

inline SteadyStateResult solve_steady(const SystemParams& p, double tol = kDefaultSolveTol,
                                      int elim_n = 0, int elim_i = 1) {
    p.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("solve_steady: tol must be > 0");
    if (p.n_max > kTruncationHardCap)
        throw solver_error("solve_steady: n_max exceeds the truncation hard cap");

    const Liouvillian l = build_liouvillian_explicit(p);
    const EliminatedSystem sys = eliminate_trace(l, elim_n, elim_i);

    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(sys.matrix);
    if (lu.info() != Eigen::Success)
        throw solver_error("solve_steady: singular system, steady state is not unique");
    const Vector x = lu.solve(-sys.inhomogeneity);
    if (lu.info() != Eigen::Success)
        throw solver_error("solve_steady: linear solve failed");

    const int dh = l.dim_hilbert();
    Vector v = Vector::Zero(l.dim);
    for (int k = 0, src = 0; k < l.dim; ++k) {
        if (k == sys.eliminated) continue;
        v(k) = x(src++);
    }
    Complex partial(0.0, 0.0);
    for (int d = 0; d < dh; ++d) {
        const int col = d * dh + d;
        if (col != sys.eliminated) partial += v(col);
    }
    v(sys.eliminated) = Complex(1.0, 0.0) - partial;

    const Matrix raw = devectorize(v, p.n_max).elements;
    SteadyStateResult res;
    res.hermiticity_correction = 0.5 * (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    Matrix herm = 0.5 * (raw + raw.adjoint());
    const double tr = herm.trace().real();
    res.trace_correction = std::abs(tr - 1.0);
    if (res.hermiticity_correction > kMaxPostCorrection ||
        res.trace_correction > kMaxPostCorrection)
        throw solver_error("solve_steady: post-solve correction exceeds 1e-6, generator is inconsistent");
    herm /= tr;

    res.rho = DensityMatrix(p.n_max, std::move(herm));
    res.residual = (l.entries * vectorize(res.rho)).cwiseAbs().maxCoeff();
    res.n_max_used = p.n_max;
    res.converged = res.residual <= tol;
    return res;
}

// ------------------------------ truncation control ----------------------------

// Doubles the cutoff until no scalar observable moves by more than obs_tol
// between successive levels; the result at the first certified level is
// returned. Hitting the hard cap without agreement leaves converged = false.
inline SteadyStateResult converge_truncation(const SystemParams& p,
                                             double obs_tol = kDefaultObsTol,
                                             double tol = kDefaultSolveTol) {
    if (!(obs_tol > 0.0)) throw std::invalid_argument("converge_truncation: obs_tol must be > 0");
    SystemParams q = p;
    q.n_max = std::min(p.n_max, kTruncationHardCap);

    SteadyStateResult prev = solve_steady(q, tol);
    Observables prev_obs = compute_observables(prev.rho);
    while (q.n_max < kTruncationHardCap) {
        const int next = std::min(std::max(2 * q.n_max, 1), kTruncationHardCap);
        SystemParams qn = q;
        qn.n_max = next;
        SteadyStateResult curr = solve_steady(qn, tol);
        const Observables curr_obs = compute_observables(curr.rho);
        if (observables_change(prev_obs, curr_obs) < obs_tol) {
            prev.converged = prev.converged && curr.converged;
            return prev;
        }
        prev = std::move(curr);
        prev_obs = curr_obs;
        q.n_max = next;
    }
    prev.converged = false;
    return prev;
}

}  // namespace sqrf
