#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "hdecay/coefficients.hpp"
#include "hdecay/constants.hpp"

namespace hdecay {

// x -> exp(-z x^2/2), Re z > 0.  |g_z(x)| = e^{-Re(z) x^2/2} and, under the
// convention f^(xi) = (2 pi)^{-1/2} integral f(x) e^{-i xi x} dx,
// |g_z^(xi)| = |z|^{-1/2} e^{-Re(1/z) xi^2/2}.
struct ComplexGaussian {
    std::complex<double> z;
};

// (Re z, Re(1/z)) — the envelope exponents of g_z and its transform.
// Their product is <= 1, with equality iff Im z = 0.
std::pair<double, double> envelope_exponents(const ComplexGaussian& g);

// g_z^ = scale * g_{1/z} with scale = z^{-1/2} (principal branch).
struct FourierResult {
    std::complex<double> scale;
    ComplexGaussian transformed;
};
FourierResult fourier(const ComplexGaussian& g);

// The member of the family attaining the decay rate for (a, b):
// z = (1 + i A e^{-2i tau}) / (1 - i A e^{-2i tau}), which satisfies
// Re z = a, Re(1/z) = b, Im z = +sqrt(a(1-ab)/b).
ComplexGaussian extremal_function(const GaussianEnvelopePair& pair);

// beta = (1-z)/(1+z); |beta| < 1 whenever Re z > 0.
std::complex<double> gaussian_beta(const ComplexGaussian& g);

// sqrt(2/(1+z)), principal branch (Re(1+z) > 1 keeps the cut far away).
std::complex<double> bargmann_prefactor(const ComplexGaussian& g);

// <g_z, phi_n> in closed form: the transform of g_z is
// sqrt(2/(1+z)) exp(beta w^2/4), so for n = 2k
//   <g_z, phi_n> = sqrt(2/(1+z)) pi^{1/4} sqrt(n!) beta^k / (2^k k!),
// odd entries exactly zero.  Factorials combined via log-Gamma.  n_max <= 400.
CoefficientSequence closed_form_coefficients(const ComplexGaussian& g, int n_max);

// Finite sum over a coefficient sequence: f = sum_n c_n phi_n.
struct HermiteExpansion {
    CoefficientSequence coeffs;
};

// Tabulated complex values with natural cubic spline interpolation.
// Evaluation outside [xs.front(), xs.back()] throws UnsupportedInputError.
class Sampled {
public:
    Sampled(std::vector<double> xs, std::vector<std::complex<double>> values);
    std::complex<double> operator()(double x) const;
    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }

private:
    std::vector<double> xs_;
    std::vector<std::complex<double>> values_;
    std::vector<std::complex<double>> second_;  // spline second derivatives
};

using TestFunction = std::variant<ComplexGaussian, HermiteExpansion, Sampled>;

std::complex<double> eval(const TestFunction& f, double x);

// Transform side; throws UnsupportedInputError for Sampled inputs.
std::complex<double> eval_fourier(const TestFunction& f, double xi);

// True for inputs known even by construction (ComplexGaussian always;
// HermiteExpansion iff its odd entries are all zero-flagged).
bool is_even_function(const TestFunction& f);

// Geometric decay rate hint used for contour radii and accuracy envelopes:
// |(1-z)/(1+z)| for Gaussians (when not degenerate-small), absent otherwise.
std::optional<double> rate_hint(const TestFunction& f);

// Smallest C with |f| <= C e^{-a x^2/2} and |f^| <= C e^{-b xi^2/2} on the
// grids, or the point where the ratio diverges (log-ratio slope over the
// outer 25% of the grid above 1e-3).
struct MembershipReport {
    GaussianEnvelopePair pair;
    bool is_member = false;
    double witness_constant = 0.0;
    std::optional<double> violation_point;
};

MembershipReport check_membership(const TestFunction& f, const GaussianEnvelopePair& pair,
                                  const std::vector<double>& x_grid,
                                  const std::vector<double>& xi_grid);

}  // namespace hdecay
