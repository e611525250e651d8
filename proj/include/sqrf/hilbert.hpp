// hilbert.hpp — composite cavity(Fock) ⊗ atom(two-level) space: parameters,
// flat indexing, density-matrix representation, vectorization, reductions.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace sqrf {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

// ------------------------------ system parameters ---------------------------

// All rates and detunings are expressed in one common rate unit (the
// atom-cavity coupling g by default; when the coupling is switched off the
// natural unit is the atomic decay rate).
struct SystemParams {
    double rabi     = 0.0;  // drive amplitude Omega_R (real)
    double delta_a  = 0.0;  // atom detuning omega_21 - omega_L
    double delta_c  = 0.0;  // cavity detuning omega_c - omega_L
    double coupling = 1.0;  // atom-cavity coupling g
    double kappa    = 0.0;  // cavity emission rate
    double gamma    = 1.0;  // atomic energy relaxation rate
    double gamma_d  = 0.0;  // pure dephasing rate
    int    n_max    = 6;    // Fock truncation: photon numbers 0..n_max
    std::string rate_unit = "g";

    int dim_hilbert() const { return 2 * (n_max + 1); }

    // Shape and sign constraints; enough for building operators.
    void validate_rates() const {
        if (!(coupling >= 0.0)) throw std::invalid_argument("SystemParams: coupling must be >= 0");
        if (!(kappa >= 0.0))    throw std::invalid_argument("SystemParams: kappa must be >= 0");
        if (!(gamma >= 0.0))    throw std::invalid_argument("SystemParams: gamma must be >= 0");
        if (!(gamma_d >= 0.0))  throw std::invalid_argument("SystemParams: gamma_d must be >= 0");
        if (n_max < 0)          throw std::invalid_argument("SystemParams: n_max must be >= 0");
    }

    // Full validation for steady-state work: some dissipation is required,
    // otherwise no unique stationary solution exists.
    void validate() const {
        validate_rates();
        if (gamma == 0.0 && kappa == 0.0)
            throw std::invalid_argument(
                "SystemParams: gamma and kappa are both zero, steady state is not unique");
    }
};

// ------------------------------ flat indexing --------------------------------

// |n,i> -> 2n + (i-1): atom index fastest, so atomic 2x2 blocks stay
// contiguous. Bijective onto [0, 2(n_max+1)).
inline int composite_index(int n, int i, int n_max) {
    if (n < 0 || n > n_max)
        throw std::out_of_range("composite_index: photon number out of range");
    if (i != 1 && i != 2)
        throw std::out_of_range("composite_index: atomic level must be 1 or 2");
    return 2 * n + (i - 1);
}

// ------------------------------ density matrices -----------------------------

// Full state on the composite space, entry (row, col) = <n,i|rho|m,j> with
// row = composite_index(n, i), col = composite_index(m, j).
struct DensityMatrix {
    int n_max = 0;
    Matrix elements;

    DensityMatrix() : elements(Matrix::Zero(2, 2)) {}
    DensityMatrix(int n_max_, Matrix m) : n_max(n_max_), elements(std::move(m)) {
        const int d = 2 * (n_max + 1);
        if (elements.rows() != d || elements.cols() != d)
            throw std::invalid_argument("DensityMatrix: matrix dimension does not match n_max");
    }

    int dim() const { return 2 * (n_max + 1); }

    // |0,1><0,1|: empty cavity, atom in the ground state.
    static DensityMatrix vacuum_ground(int n_max) {
        DensityMatrix rho(n_max, Matrix::Zero(2 * (n_max + 1), 2 * (n_max + 1)));
        rho.elements(0, 0) = 1.0;
        return rho;
    }
};

// Row-major flattening: component row*D + col equals elements(row, col).
inline Vector vectorize(const DensityMatrix& rho) {
    const int d = rho.dim();
    Vector v(d * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            v(r * d + c) = rho.elements(r, c);
    return v;
}

inline DensityMatrix devectorize(const Vector& v, int n_max) {
    const int d = 2 * (n_max + 1);
    if (v.size() != static_cast<Eigen::Index>(d) * d)
        throw std::invalid_argument("devectorize: vector length does not match n_max");
    Matrix m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            m(r, c) = v(r * d + c);
    return DensityMatrix(n_max, std::move(m));
}

// ------------------------------ atomic state ---------------------------------

// 2x2 reduced state of the atom. Layout:
//   sigma = [ <A_11>  <A_21> ]
//           [ <A_12>  <A_22> ]
// so sigma(1,0) is the coherence <A_12> and sigma(1,1) the excitation <A_22>.
struct AtomicState {
    Eigen::Matrix2cd sigma = Eigen::Matrix2cd::Zero();

    double a11() const { return sigma(0, 0).real(); }
    double a22() const { return sigma(1, 1).real(); }
    Complex coherence() const { return sigma(1, 0); }  // <A_12>
};

// Partial trace over the cavity: sigma_{ij} = sum_n rho_{n,i;n,j}.
inline AtomicState reduce_atom(const DensityMatrix& rho) {
    AtomicState s;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            Complex acc(0.0, 0.0);
            for (int n = 0; n <= rho.n_max; ++n)
                acc += rho.elements(composite_index(n, i, rho.n_max),
                                    composite_index(n, j, rho.n_max));
            s.sigma(i - 1, j - 1) = acc;
        }
    }
    return s;
}

// Mean photon number <a†a> = sum_{n,i} n rho_{n,i;n,i}.
inline double cavity_excitation(const DensityMatrix& rho) {
    double acc = 0.0;
    for (int n = 0; n <= rho.n_max; ++n)
        for (int i = 1; i <= 2; ++i)
            acc += n * rho.elements(composite_index(n, i, rho.n_max),
                                    composite_index(n, i, rho.n_max)).real();
    return acc;
}

// ------------------------------ state diagnostics ----------------------------

inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline double trace_defect(const Matrix& m) {
    return std::abs(m.trace() - Complex(1.0, 0.0));
}

inline double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("min_eigenvalue: eigensolver failed");
    return es.eigenvalues().minCoeff();
}

// det(sigma) >= 0 is the positivity bound that caps the coherence.
inline double atomic_det(const AtomicState& s) {
    return (s.sigma(0, 0) * s.sigma(1, 1) - s.sigma(0, 1) * s.sigma(1, 0)).real();
}

}  // namespace sqrf
