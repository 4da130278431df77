#pragma once

#include <complex>

#include "hdecay/coefficients.hpp"
#include "hdecay/constants.hpp"
#include "hdecay/gaussians.hpp"
#include "hdecay/logcomplex.hpp"
#include "hdecay/quadrature.hpp"

namespace hdecay {

// Bf(w) = (e^{-w^2/4}/sqrt(pi)) integral e^{xw} e^{-x^2/2} f(x) dx.
// ComplexGaussian inputs use the closed form sqrt(2/(1+z)) exp(beta w^2/4)
// (valid for any w); HermiteExpansion inputs use B phi_n(w) = w^n/sqrt(2^n n! sqrt(pi))
// summed in log-domain; Sampled inputs use Gauss-Hermite quadrature with the
// integrand's log computed first and its maximum factored out.
// Non-closed-form inputs are limited to the envelope |w|^2 * rate/4 <= 40
// (rate_hint, default 1), beyond which AccuracyRangeError is thrown.
LogComplex bargmann_eval_log(const TestFunction& f, std::complex<double> w);
std::complex<double> bargmann_eval(const TestFunction& f, std::complex<double> w);

// Taylor coefficients c_n of the transform by trapezoidal contour integrals on
// circles of radius sqrt(2n/rate) (radius 1 for n = 0), Mt = max(8n+64, 256)
// angular samples, log-rescaled by the circle maximum before summation.
CoefficientSequence contour_coefficients(const TestFunction& f, int n_max);

// |<f, phi_n>| = sqrt(2^n n! pi^{1/2}) |c_n|: log-domain multiplication by
// (n log 2 + logGamma(n+1) + (1/2) log pi)/2.  Phases carried unchanged.
CoefficientSequence coefficient_relation(const CoefficientSequence& taylor);

enum class BoundTag { eq3, eq4, eq5, eq6 };

// One ray theta: log|Bf(r e^{i theta})| against the applicable bound
//   log C + (1/2) log(2/(1+m)) + exponent(theta) r^2/4,
// where the exponent is A sin(2θ-2τ) on [θ0,θ1] and its +pi translate (eq3),
// A sin(-2θ-2τ) on the reflected sectors (eq4), and otherwise the smaller of
// mu+(1-mu)sin^2θ (eq5) and nu+(1-nu)cos^2θ (eq6), which hold at every angle.
struct RayBoundReport {
    double theta;
    std::vector<double> r_samples;
    std::vector<double> log_transform;
    std::vector<double> log_bound;
    double max_excess;
    BoundTag applicable_bound;
};

// C comes from the membership report; throws std::invalid_argument when the
// report says f is not a member of the pair's class.
RayBoundReport ray_bound_check(const TestFunction& f, const MembershipReport& membership,
                               double theta, double r_max, int samples);

// The three sector integrals at circle radius sqrt(2n/A):
//   I_n over [0, θ0]      of exp((mu+(1-mu) sin^2 t) n/(2A)),
//   J_n over [θ0, θ1]     of exp((n/2) sin(2t-2τ)),
//   K_n over [θ1, pi/2]   of exp((nu+(1-nu) cos^2 t) n/(2A)).
// Returned as natural logs; internally the peak value is factored out so the
// panelled Gauss-Legendre sums stay in range at any n.
struct SectorIntegrals {
    double log_i, log_j, log_k;
};

SectorIntegrals ijk_integrals(const GaussianEnvelopePair& pair, int n);

}  // namespace hdecay
