#pragma once

#include <string>

#include "hdecay/bargmann.hpp"
#include "hdecay/coefficients.hpp"
#include "hdecay/constants.hpp"

namespace hdecay {

// 17-significant-digit decimal representation (round-trip safe); "-inf"/"inf"
// for infinities.
std::string format_number(double v);

// Keys a, b, mu, nu, A, tau, theta0, theta1, m plus the six identity
// residuals; near_degenerate flag included when set.
std::string constants_json(const DecayConstants& dc, const IdentityResiduals& res);

// Columns n,log10_abs,phase_rad,log10_envelope; envelope is the decay bound
// with C = 1 (n = 0 row emits 0); zero entries emit -inf with phase 0.
std::string coeffs_csv(const CoefficientSequence& seq, const DecayConstants& dc);

// Columns r,log10_abs_Bf,log10_bound,excess; trailing summary line
// "# max_excess = <value>".
std::string ray_csv(const RayBoundReport& report);

// Static SVG log-plot from a CSV produced by the two emitters above
// (dispatch on the header).  Deterministic byte output.  Throws
// std::invalid_argument on malformed or empty input.
std::string svg_from_csv(const std::string& csv_text);

}  // namespace hdecay
