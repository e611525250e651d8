// support.hpp — deterministic random generators shared by the test suites.

#pragma once

#include "sqrf/hilbert.hpp"

#include <random>

namespace sqrf::test {

// Valid atomic state: excitation uniform in [0,1], coherence magnitude a
// uniform fraction of the positivity bound, random phase.
inline AtomicState random_atomic_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a22 = unit(rng);
    const double cap = a22 * (1.0 - a22);
    const double mag = std::sqrt(unit(rng) * cap);
    const double phase = 2.0 * M_PI * unit(rng);
    AtomicState s;
    const Complex c = std::polar(mag, phase);
    s.sigma(0, 0) = 1.0 - a22;
    s.sigma(1, 1) = a22;
    s.sigma(1, 0) = c;
    s.sigma(0, 1) = std::conj(c);
    return s;
}

// Ginibre construction: rho = M M† / Tr(M M†) is Hermitian, PSD, unit trace.
inline DensityMatrix random_density_matrix(std::mt19937_64& rng, int n_max) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int d = 2 * (n_max + 1);
    Matrix m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            m(r, c) = Complex(gauss(rng), gauss(rng));
    Matrix rho = m * m.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(n_max, std::move(rho));
}

// Random Hermitian matrix (not necessarily positive or normalized).
inline Matrix random_hermitian(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            m(r, c) = Complex(gauss(rng), gauss(rng));
    return Matrix(0.5 * (m + m.adjoint()));
}

// Modest O(1) parameter draws keep generator entries small enough that the
// two assembly routes can be compared at absolute 1e-14.
inline SystemParams random_params(std::mt19937_64& rng, int n_max) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    SystemParams p;
    p.rabi = unit(rng);
    p.delta_a = sym(rng);
    p.delta_c = sym(rng);
    p.coupling = unit(rng);
    p.kappa = unit(rng);
    p.gamma = unit(rng);
    p.gamma_d = unit(rng);
    p.n_max = n_max;
    return p;
}

}  // namespace sqrf::test
