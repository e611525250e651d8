// liouvillian.hpp — the master-equation generator as a sparse operator on
// row-major vectorized density matrices. Two independent assembly routes:
// an element-wise transcription of the coupled equations of motion, and a
// generic superoperator construction from the Hamiltonian and jump operators.
// The two must agree entrywise; the tests cross-check them against each other.

#pragma once

#include "sqrf/hilbert.hpp"

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>
#include <vector>

namespace sqrf {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet      = Eigen::Triplet<Complex>;

struct Liouvillian {
    int n_max = 0;
    int dim = 0;           // (2(n_max+1))^2
    SparseMatrix entries;  // acts on vec(rho), row-major convention
    SystemParams params;

    int dim_hilbert() const { return 2 * (n_max + 1); }
};

// ------------------------------ Hamiltonian ----------------------------------

// Rotating frame, hbar = 1:
//   H = delta_a A_22 + delta_c a†a + g (a† A_12 + A_21 a) + Omega_R (A_12 + A_21)
inline Matrix build_hamiltonian(const SystemParams& p) {
    p.validate_rates();
    const int dh = p.dim_hilbert();
    Matrix h = Matrix::Zero(dh, dh);
    for (int n = 0; n <= p.n_max; ++n) {
        const int i1 = composite_index(n, 1, p.n_max);
        const int i2 = composite_index(n, 2, p.n_max);
        h(i1, i1) = n * p.delta_c;
        h(i2, i2) = p.delta_a + n * p.delta_c;
        h(i1, i2) = p.rabi;
        h(i2, i1) = p.rabi;
        if (n > 0) {
            // g a† A_12 : |n-1,2> -> sqrt(n) |n,1>, plus Hermitian conjugate
            const int j2 = composite_index(n - 1, 2, p.n_max);
            h(i1, j2) = p.coupling * std::sqrt(static_cast<double>(n));
            h(j2, i1) = h(i1, j2);
        }
    }
    return h;
}

// --------------------------- route 1: element-wise ----------------------------

// Transcribes the four coupled equations for rho_{n,1;m,1}, rho_{n,1;m,2},
// rho_{n,2;m,1}, rho_{n,2;m,2}, extended by the pure-dephasing channel which
// adds -gamma_d/2 to the decay of the two atom-off-diagonal families and
// nothing to the atom-diagonal ones. Hard truncation: any element with a
// photon index < 0 or > n_max is zero.
inline Liouvillian build_liouvillian_explicit(const SystemParams& p) {
    p.validate_rates();
    const int nmax = p.n_max;
    const int dh = p.dim_hilbert();
    const int dim = dh * dh;
    const double g = p.coupling, kap = p.kappa, gam = p.gamma, gd = p.gamma_d;
    const double da = p.delta_a, dc = p.delta_c, om = p.rabi;
    const Complex iu(0.0, 1.0);

    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(dim) * 7);

    const auto pos = [dh](int n, int i, int m, int j) {
        return (2 * n + i - 1) * dh + (2 * m + j - 1);
    };
    // d/dt rho_{row} += coeff * rho_{np,ip;mp,jp}
    const auto add = [&](int row, int np, int ip, int mp, int jp, Complex coeff) {
        if (np < 0 || np > nmax || mp < 0 || mp > nmax) return;
        if (coeff == Complex(0.0, 0.0)) return;
        trip.emplace_back(row, pos(np, ip, mp, jp), coeff);
    };

    for (int n = 0; n <= nmax; ++n) {
        for (int m = 0; m <= nmax; ++m) {
            const double sn = std::sqrt(static_cast<double>(n));
            const double sm = std::sqrt(static_cast<double>(m));
            const double sn1 = std::sqrt(static_cast<double>(n + 1));
            const double sm1 = std::sqrt(static_cast<double>(m + 1));
            const double feed = kap * std::sqrt(static_cast<double>((n + 1) * (m + 1)));

            // rho_{n,1;m,1}
            int r = pos(n, 1, m, 1);
            add(r, n, 1, m, 1, -iu * (dc * (n - m)) - 0.5 * kap * (n + m));
            add(r, n - 1, 2, m, 1, -iu * g * sn);
            add(r, n, 1, m - 1, 2, iu * g * sm);
            add(r, n, 2, m, 1, -iu * om);
            add(r, n, 1, m, 2, iu * om);
            add(r, n, 2, m, 2, gam);
            add(r, n + 1, 1, m + 1, 1, feed);

            // rho_{n,1;m,2}
            r = pos(n, 1, m, 2);
            add(r, n, 1, m, 2,
                iu * (da - (n - m) * dc) - 0.5 * (gam + kap * (n + m)) - 0.5 * gd);
            add(r, n - 1, 2, m, 2, -iu * g * sn);
            add(r, n, 1, m + 1, 1, iu * g * sm1);
            add(r, n, 2, m, 2, -iu * om);
            add(r, n, 1, m, 1, iu * om);
            add(r, n + 1, 1, m + 1, 2, feed);

            // rho_{n,2;m,1}
            r = pos(n, 2, m, 1);
            add(r, n, 2, m, 1,
                -iu * (da + (n - m) * dc) - 0.5 * (gam + kap * (n + m)) - 0.5 * gd);
            add(r, n + 1, 1, m, 1, -iu * g * sn1);
            add(r, n, 2, m - 1, 2, iu * g * sm);
            add(r, n, 1, m, 1, -iu * om);
            add(r, n, 2, m, 2, iu * om);
            add(r, n + 1, 2, m + 1, 1, feed);

            // rho_{n,2;m,2}
            r = pos(n, 2, m, 2);
            add(r, n, 2, m, 2, -iu * (dc * (n - m)) - gam - 0.5 * kap * (n + m));
            add(r, n + 1, 1, m, 2, -iu * g * sn1);
            add(r, n, 2, m + 1, 1, iu * g * sm1);
            add(r, n, 1, m, 2, -iu * om);
            add(r, n, 2, m, 1, iu * om);
            add(r, n + 1, 2, m + 1, 2, feed);
        }
    }

    SparseMatrix mat(dim, dim);
    mat.setFromTriplets(trip.begin(), trip.end());
    mat.makeCompressed();
    return Liouvillian{nmax, dim, std::move(mat), p};
}

// --------------------------- route 2: superoperators --------------------------

// a ⊗ I_atom on the composite space.
inline SparseMatrix annihilation_op(int n_max) {
    const int dh = 2 * (n_max + 1);
    std::vector<Triplet> trip;
    for (int n = 1; n <= n_max; ++n)
        for (int i = 1; i <= 2; ++i)
            trip.emplace_back(composite_index(n - 1, i, n_max),
                              composite_index(n, i, n_max),
                              std::sqrt(static_cast<double>(n)));
    SparseMatrix m(dh, dh);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

// I_cav ⊗ |1><2| (atomic lowering).
inline SparseMatrix atomic_lowering_op(int n_max) {
    const int dh = 2 * (n_max + 1);
    std::vector<Triplet> trip;
    for (int n = 0; n <= n_max; ++n)
        trip.emplace_back(composite_index(n, 1, n_max), composite_index(n, 2, n_max), 1.0);
    SparseMatrix m(dh, dh);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

// I_cav ⊗ |2><2| (excited-state projector, the dephasing jump operator).
inline SparseMatrix excited_projector_op(int n_max) {
    const int dh = 2 * (n_max + 1);
    std::vector<Triplet> trip;
    for (int n = 0; n <= n_max; ++n)
        trip.emplace_back(composite_index(n, 2, n_max), composite_index(n, 2, n_max), 1.0);
    SparseMatrix m(dh, dh);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

// With row-major vectorization, vec(A rho B) = (A ⊗ B^T) vec(rho).
inline SparseMatrix superop_sandwich(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix bt = b.transpose();
    SparseMatrix out = Eigen::kroneckerProduct(a, bt);
    return out;
}

// Assembles -i[H, .] plus (rate/2)(2 X . X† - X†X . - . X†X) for the three
// channels: atomic decay (gamma), cavity loss (kappa), pure dephasing (gamma_d).
inline Liouvillian build_liouvillian_generic(const SystemParams& p) {
    p.validate_rates();
    const int dh = p.dim_hilbert();
    const int dim = dh * dh;
    const Complex iu(0.0, 1.0);

    SparseMatrix id(dh, dh);
    id.setIdentity();
    SparseMatrix h = build_hamiltonian(p).sparseView();

    SparseMatrix mat(dim, dim);
    mat = -iu * superop_sandwich(h, id) + iu * superop_sandwich(id, h);

    const auto dissipator = [&](const SparseMatrix& x, double rate) {
        if (rate == 0.0) return;
        SparseMatrix xc = x.conjugate();
        SparseMatrix xdx = SparseMatrix(x.adjoint()) * x;
        mat = mat + rate * SparseMatrix(Eigen::kroneckerProduct(x, xc)) -
              (rate / 2.0) * superop_sandwich(xdx, id) -
              (rate / 2.0) * superop_sandwich(id, xdx);
    };
    dissipator(atomic_lowering_op(p.n_max), p.gamma);
    dissipator(annihilation_op(p.n_max), p.kappa);
    dissipator(excited_projector_op(p.n_max), p.gamma_d);

    mat.prune([](Eigen::Index, Eigen::Index, const Complex& v) {
        return v != Complex(0.0, 0.0);
    });
    mat.makeCompressed();
    return Liouvillian{p.n_max, dim, std::move(mat), p};
}

// ------------------------------ application ----------------------------------

// d rho / dt = devec(L vec(rho)); traceless, Hermiticity-preserving.
inline Matrix apply(const Liouvillian& l, const DensityMatrix& rho) {
    if (rho.n_max != l.n_max)
        throw std::invalid_argument("apply: truncation mismatch between generator and state");
    return devectorize(l.entries * vectorize(rho), l.n_max).elements;
}

// ------------------------------ diagnostics ----------------------------------

// Max over columns of |sum of the rows that feed diagonal elements|; zero for
// any trace-preserving generator.
inline double trace_preservation_defect(const Liouvillian& l) {
    const int dh = l.dim_hilbert();
    Vector colsum = Vector::Zero(l.dim);
    for (int k = 0; k < l.entries.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(l.entries, k); it; ++it) {
            const int r = static_cast<int>(it.row());
            if (r / dh == r % dh) colsum(it.col()) += it.value();
        }
    }
    return colsum.cwiseAbs().maxCoeff();
}

inline double entrywise_max_diff(const Liouvillian& a, const Liouvillian& b) {
    if (a.dim != b.dim)
        throw std::invalid_argument("entrywise_max_diff: dimension mismatch");
    SparseMatrix diff = a.entries - b.entries;
    double d = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
            d = std::max(d, std::abs(it.value()));
    return d;
}

// Coordinate-format text dump (row, col, re, im), sorted by (row, col).
inline void dump_coordinates(const Liouvillian& l, std::ostream& os) {
    std::vector<std::tuple<int, int, double, double>> entries;
    entries.reserve(static_cast<std::size_t>(l.entries.nonZeros()));
    for (int k = 0; k < l.entries.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(l.entries, k); it; ++it)
            entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                 it.value().real(), it.value().imag());
    std::sort(entries.begin(), entries.end());
    char buf[96];
    for (const auto& [r, c, re, im] : entries) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", r, c, re, im);
        os << buf;
    }
}

}  // namespace sqrf
