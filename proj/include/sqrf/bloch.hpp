// bloch.hpp — free-space steady state of the driven, damped, dephased
// two-level atom. Independent of the composite-space machinery: the same
// master equation restricted to the atom collapses to a 3x3 real linear
// system for (Re<A_12>, Im<A_12>, <A_22>). Serves as the oracle for the
// g -> 0 limit of the full solver and for the free-space baselines.

#pragma once

#include "sqrf/observables.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace sqrf {

struct BlochParams {
    double rabi = 0.0;
    double delta_a = 0.0;
    double gamma = 1.0;
    double gamma_d = 0.0;

    void validate() const {
        if (!(gamma > 0.0)) throw std::invalid_argument("BlochParams: gamma must be > 0");
        if (!(gamma_d >= 0.0)) throw std::invalid_argument("BlochParams: gamma_d must be >= 0");
    }
};

// Stationary point of
//   d<A_12>/dt = -i Omega (1 - 2<A_22>) - i delta_a <A_12> - (gamma+gamma_d)/2 <A_12>
//   d<A_22>/dt = -2 Omega Im<A_12> - gamma <A_22>
// written as a real system in u = Re<A_12>, v = Im<A_12>, p = <A_22>.
// The coherence decays at (gamma + gamma_d)/2.
inline AtomicState bloch_steady(const BlochParams& p) {
    p.validate();
    const double gc = 0.5 * (p.gamma + p.gamma_d);
    Eigen::Matrix3d a;
    a << -gc,        p.delta_a,      0.0,
         -p.delta_a, -gc,            2.0 * p.rabi,
          0.0,       -2.0 * p.rabi, -p.gamma;
    const Eigen::Vector3d rhs(0.0, p.rabi, 0.0);
    const Eigen::Vector3d sol = a.partialPivLu().solve(rhs);

    AtomicState s;
    const Complex c(sol(0), sol(1));
    s.sigma(0, 0) = 1.0 - sol(2);
    s.sigma(1, 1) = sol(2);
    s.sigma(1, 0) = c;
    s.sigma(0, 1) = std::conj(c);
    return s;
}

inline double free_space_variance(const BlochParams& p) {
    return normally_ordered_variance(bloch_steady(p));
}

}  // namespace sqrf
