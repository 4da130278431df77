#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "hdecay/logcomplex.hpp"

namespace hdecay {

enum class SequenceKind {
    hermite_inner_product,  // <f, phi_n>
    bargmann_taylor,        // Taylor coefficients c_n of the transform
};

// Entry n holds (log|value|, arg value); log_mag = -inf flags an exact zero.
struct CoefficientEntry {
    double log_mag;
    double phase;
};

struct CoefficientSequence {
    SequenceKind kind = SequenceKind::hermite_inner_product;
    std::vector<CoefficientEntry> entries;  // indexed n = 0..n_max

    std::size_t n_max() const { return entries.empty() ? 0 : entries.size() - 1; }

    bool is_zero(std::size_t n) const {
        const auto& e = entries[n];
        return std::isinf(e.log_mag) && e.log_mag < 0;
    }

    void set(std::size_t n, LogComplex v) {
        entries[n] = {v.log_mag, v.phase};
    }
    void set_zero(std::size_t n) {
        entries[n] = {-std::numeric_limits<double>::infinity(), 0.0};
    }

    LogComplex log_value(std::size_t n) const {
        return {entries[n].log_mag, entries[n].phase};
    }

    // May under/overflow double for extreme log magnitudes; fine for moderate entries.
    std::complex<double> value(std::size_t n) const { return log_value(n).value(); }

    std::size_t nonzero_count() const {
        std::size_t c = 0;
        for (std::size_t n = 0; n < entries.size(); ++n)
            if (!is_zero(n)) ++c;
        return c;
    }
};

}  // namespace hdecay
