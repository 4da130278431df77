#pragma once

#include <vector>

#include "hdecay/coefficients.hpp"
#include "hdecay/gaussians.hpp"
#include "hdecay/quadrature.hpp"

namespace hdecay {

// phi_0(x) = pi^{-1/4} e^{-x^2/2};
// phi_{n+1}(x) = x sqrt(2/(n+1)) phi_n(x) - sqrt(n/(n+1)) phi_{n-1}(x).
// The recurrence runs in a scaled representation so values stay meaningful
// beyond the underflow point of phi_0 (|x| up to ~40, n up to ~512); entries
// below the double range come back as 0.
std::vector<double> hermite_values(int n_max, double x);

// <f, phi_n> for n = 0..n_max as sum_i w_i e^{x_i^2} f(x_i) phi_n(x_i).
// Accumulation is compensated extended-precision: the coefficients decay
// geometrically while the integrand mass is O(1), so plain double would lose
// the small entries (n ~ 60 needs ~1e-8 relative).
// Policy: rule.order >= 2 n_max + 64, else QuadraturePolicyError
// (override with allow_low_order for deliberately coarse runs).
CoefficientSequence hermite_coefficients(const TestFunction& f, int n_max,
                                         const QuadratureRule& rule,
                                         bool allow_low_order = false);

// Max over a xi-grid of |(F phi_n)(xi) - (-i)^n phi_n(xi)| with F phi_n
// computed by quadrature of (2 pi)^{-1/2} integral phi_n(x) e^{-i xi x} dx.
// Grid: xi in [-8, 8], step 1/4.  n <= 64.
double fourier_eigen_check(int n, const QuadratureRule& rule);

}  // namespace hdecay
