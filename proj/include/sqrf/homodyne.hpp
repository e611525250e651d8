// homodyne.hpp — weak-local-oscillator correlation measurement: the
// equal-time intensity-correlation difference and the detection criterion.
// Intensities and the variance are supplied in units of |chi|^2.

#pragma once

#include <stdexcept>

namespace sqrf {

struct HomodynePrediction {
    double i_fl = 0.0;       // fluorescence intensity
    double i_lo = 0.0;       // local-oscillator intensity
    double variance = 0.0;   // normally ordered field variance
    double delta_g22 = 0.0;
    bool detected = false;
};

// Delta G^(2,2) = -(I_fl^2 + I_lo * variance) / 4
inline double delta_g22(double i_fl, double i_lo, double variance) {
    if (!(i_fl >= 0.0) || !(i_lo >= 0.0))
        throw std::invalid_argument("delta_g22: intensities must be >= 0");
    return -0.25 * (i_fl * i_fl + i_lo * variance);
}

// Squeezing is certified by a strictly positive correlation difference.
inline bool squeezing_detected(double dg22) { return dg22 > 0.0; }

// Local-oscillator intensity above which delta_g22 turns positive.
inline double min_lo_intensity(double i_fl, double variance) {
    if (!(i_fl > 0.0))
        throw std::invalid_argument("min_lo_intensity: i_fl must be > 0");
    if (!(variance < 0.0))
        throw std::invalid_argument("min_lo_intensity: no squeezing, threshold is infinite");
    return i_fl * i_fl / (-variance);
}

inline HomodynePrediction predict_homodyne(double i_fl, double i_lo, double variance) {
    HomodynePrediction h;
    h.i_fl = i_fl;
    h.i_lo = i_lo;
    h.variance = variance;
    h.delta_g22 = delta_g22(i_fl, i_lo, variance);
    h.detected = squeezing_detected(h.delta_g22);
    return h;
}

}  // namespace sqrf
