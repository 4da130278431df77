#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace hdecay {

// Map an angle to the half-open interval (-pi, pi].
inline double normalize_phase(double phase) {
    if (!std::isfinite(phase)) return 0.0;
    double p = std::remainder(phase, 2.0 * M_PI);  // (-pi, pi] up to the boundary
    if (p <= -M_PI) p = M_PI;
    return p;
}

// Complex value stored as (log|z|, arg z).  log_mag = -inf encodes exact zero.
struct LogComplex {
    double log_mag;
    double phase;

    static LogComplex zero() {
        return {-std::numeric_limits<double>::infinity(), 0.0};
    }
    static LogComplex from(std::complex<double> v) {
        double m = std::abs(v);
        if (m == 0.0) return zero();
        return {std::log(m), normalize_phase(std::arg(v))};
    }
    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }
    std::complex<double> value() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mag), phase);
    }
};

inline LogComplex operator*(LogComplex x, LogComplex y) {
    if (x.is_zero() || y.is_zero()) return LogComplex::zero();
    return {x.log_mag + y.log_mag, normalize_phase(x.phase + y.phase)};
}

}  // namespace hdecay
