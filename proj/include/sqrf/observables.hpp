// observables.hpp — scalar quantities of the fluorescence field and of the
// atomic state: phase-resolved and phase-optimized normally ordered variance,
// coherence bound, purity, the squeezing-purity decomposition, Mollow sideband
// frequencies and the cavity resonance condition.

#pragma once

#include "sqrf/hilbert.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sqrf {

// Everything derived from one steady state, variances in units of |chi|^2.
// chi_sq is a pure reporting multiplier carried along for downstream use;
// none of the stored values are scaled by it.
struct Observables {
    double a22 = 0.0;              // atomic excitation <A_22>
    Complex coherence{0.0, 0.0};   // <A_12>
    double cpae = 0.0;             // coherent part of atomic excitation |<A_12>|^2
    double cpae_max = 0.0;         // positivity bound <A_11><A_22>
    double purity = 1.0;           // Tr sigma^2
    double variance = 0.0;         // phase-optimized normally ordered variance
    double variance_min = 0.0;     // variance at maximal coherence for this a22
    double cavity_n = 0.0;         // <a†a>
    double identity_residual = 0.0;  // defect of the squeezing-purity identity
    double chi_sq = 1.0;
};

// variance/|chi|^2 at detection phase phi, before phase optimization:
//   2<A_22> - 2|<A_12>|^2 - 2 Re(e^{2i phi} <A_12>^2)
inline double variance_at_phase(const AtomicState& s, double phi) {
    const Complex c = s.coherence();
    const Complex rot = std::polar(1.0, 2.0 * phi) * c * c;
    return 2.0 * s.a22() - 2.0 * std::norm(c) - 2.0 * rot.real();
}

// Minimum of variance_at_phase over phi: 2(<A_22> - 2|<A_12>|^2).
// Negative values mean squeezing.
inline double normally_ordered_variance(const AtomicState& s) {
    return 2.0 * (s.a22() - 2.0 * std::norm(s.coherence()));
}

// Largest |<A_12>|^2 compatible with positivity: a22 - a22^2.
inline double max_coherence_sq(double a22) {
    if (!(a22 >= 0.0 && a22 <= 1.0))
        throw std::invalid_argument("max_coherence_sq: a22 must lie in [0, 1]");
    return a22 - a22 * a22;
}

// Variance at maximal coherence: 2 a22 (2 a22 - 1). Global minimum -1/4 at
// a22 = 1/4; that is the absolute squeezing limit of a two-level emitter.
inline double min_variance(double a22) {
    if (!(a22 >= 0.0 && a22 <= 1.0))
        throw std::invalid_argument("min_variance: a22 must lie in [0, 1]");
    return 2.0 * a22 * (2.0 * a22 - 1.0);
}

// Tr sigma^2 = 1 - 2(a22 - a22^2 - |<A_12>|^2).
inline double purity(const AtomicState& s) {
    const double a22 = s.a22();
    return 1.0 - 2.0 * (a22 - a22 * a22 - std::norm(s.coherence()));
}

// Defect of the exact decomposition
//   variance = variance_at_maximal_coherence + 2 (1 - purity),
// which splits the variance into an excitation part and a mixedness penalty.
inline double identity_residual(const AtomicState& s) {
    const double a22 = std::clamp(s.a22(), 0.0, 1.0);
    return std::abs(normally_ordered_variance(s) - min_variance(a22) -
                    2.0 * (1.0 - purity(s)));
}

// Mollow sideband offsets from the drive frequency: (-w, 0, +w) with
// w = sqrt((2 Omega_R)^2 + delta_a^2).
inline std::array<double, 3> sideband_frequencies(const SystemParams& p) {
    const double w = std::sqrt(4.0 * p.rabi * p.rabi + p.delta_a * p.delta_a);
    return {-w, 0.0, w};
}

// |delta_a| that puts a Mollow sideband on the cavity: delta_c^2 = (2 Omega_R)^2 + delta_a^2.
inline double resonant_atom_detuning(double rabi, double delta_c) {
    const double rhs = delta_c * delta_c - 4.0 * rabi * rabi;
    if (rhs < 0.0)
        throw std::invalid_argument(
            "resonant_atom_detuning: |delta_c| < 2|rabi|, sidebands are out of cavity reach");
    return std::sqrt(rhs);
}

inline Observables observables_from_atomic(const AtomicState& s, double cavity_n = 0.0,
                                           double chi_sq = 1.0) {
    Observables o;
    o.coherence = s.coherence();
    o.cpae = std::norm(o.coherence);
    o.a22 = std::clamp(s.a22(), 0.0, 1.0);  // guards rounding at the physical boundary
    o.cpae_max = max_coherence_sq(o.a22);
    o.purity = purity(s);
    o.variance = normally_ordered_variance(s);
    o.variance_min = min_variance(o.a22);
    o.cavity_n = cavity_n;
    o.identity_residual = identity_residual(s);
    o.chi_sq = chi_sq;
    return o;
}

inline Observables compute_observables(const DensityMatrix& rho, double chi_sq = 1.0) {
    return observables_from_atomic(reduce_atom(rho), cavity_excitation(rho), chi_sq);
}

// Largest change over all scalar fields; used by the truncation loop.
inline double observables_change(const Observables& a, const Observables& b) {
    double d = 0.0;
    const auto upd = [&d](double x, double y) { d = std::max(d, std::abs(x - y)); };
    upd(a.a22, b.a22);
    upd(a.coherence.real(), b.coherence.real());
    upd(a.coherence.imag(), b.coherence.imag());
    upd(a.cpae, b.cpae);
    upd(a.cpae_max, b.cpae_max);
    upd(a.purity, b.purity);
    upd(a.variance, b.variance);
    upd(a.variance_min, b.variance_min);
    upd(a.cavity_n, b.cavity_n);
    return d;
}

}  // namespace sqrf
