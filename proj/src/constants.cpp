#include "hdecay/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hdecay/errors.hpp"

namespace hdecay {

namespace {

void require_positive(const GaussianEnvelopePair& pair) {
    if (!(pair.a > 0.0) || !(pair.b > 0.0))
        throw std::domain_error("envelope exponents must be positive (a = " +
                                std::to_string(pair.a) + ", b = " + std::to_string(pair.b) + ")");
}

void require_regime(const GaussianEnvelopePair& pair) {
    require_positive(pair);
    if (pair.a * pair.b >= 1.0)
        throw OutOfRegimeError("a*b = " + std::to_string(pair.a * pair.b) +
                               " >= 1: outside the decay regime (ab < 1 required)");
}

}  // namespace

double IdentityResiduals::max_abs() const {
    return std::max({std::fabs(rate_ab), std::fabs(rate_munu), std::fabs(angle0_sin),
                     std::fabs(angle0_cos), std::fabs(angle1_sin), std::fabs(angle1_cos)});
}

double SymmetryResiduals::max_abs() const {
    return std::max({std::fabs(rate), std::fabs(tau), std::fabs(theta0), std::fabs(theta1)});
}

std::pair<double, double> derive_mu_nu(const GaussianEnvelopePair& pair) {
    require_positive(pair);
    return {(1.0 - pair.a) / (1.0 + pair.a), (1.0 - pair.b) / (1.0 + pair.b)};
}

double decay_rate(const GaussianEnvelopePair& pair) {
    require_regime(pair);
    const double a = pair.a, b = pair.b;
    return std::sqrt((a + b - 2.0 * a * b) / (a + b + 2.0 * a * b));
}

DecayConstants solve_lemma21(const GaussianEnvelopePair& pair) {
    require_regime(pair);
    DecayConstants dc;
    dc.a = pair.a;
    dc.b = pair.b;
    dc.m = std::min(pair.a, pair.b);
    dc.near_degenerate = pair.a * pair.b > 1.0 - 1e-12;
    auto [mu, nu] = derive_mu_nu(pair);
    dc.mu = mu;
    dc.nu = nu;
    dc.A = decay_rate(pair);

    // (mu+nu-2 mu nu)(2-mu-nu) - (nu-mu)^2 = 2(1-mu)(1-nu)(mu+nu) > 0 keeps
    // the sine in range; tau is the arcsin branch 2tau in (-pi/2, pi/2).
    const double sin2tau = (nu - mu) / std::sqrt((mu + nu - 2.0 * mu * nu) * (2.0 - mu - nu));
    dc.tau = 0.5 * std::asin(sin2tau);

    const double s2t = std::sin(2.0 * dc.tau);
    const double c2t = std::cos(2.0 * dc.tau);
    const double cos2theta0 = ((1.0 - mu) - 2.0 * dc.A * s2t) / (1.0 + mu);
    const double sin2theta0 = 2.0 * dc.A * c2t / (1.0 + mu);
    const double cos2theta1 = ((nu - 1.0) - 2.0 * dc.A * s2t) / (1.0 + nu);
    const double sin2theta1 = 2.0 * dc.A * c2t / (1.0 + nu);

    // sin 2theta > 0 on both, so atan2 lands in (0, pi) and theta in (0, pi/2).
    dc.theta0 = 0.5 * std::atan2(sin2theta0, cos2theta0);
    dc.theta1 = 0.5 * std::atan2(sin2theta1, cos2theta1);
    return dc;
}

IdentityResiduals identity_residuals(const DecayConstants& dc) {
    IdentityResiduals r;
    const double a = dc.a, b = dc.b, mu = dc.mu, nu = dc.nu, A = dc.A;
    r.rate_ab = A * A - (a + b - 2.0 * a * b) / (a + b + 2.0 * a * b);
    r.rate_munu = A * A - (mu + nu - 2.0 * mu * nu) / (2.0 - mu - nu);
    const double s0 = std::sin(2.0 * dc.theta0), c0 = std::cos(2.0 * dc.theta0);
    const double s1 = std::sin(2.0 * dc.theta1), c1 = std::cos(2.0 * dc.theta1);
    const double sin_sq_t0 = 0.5 * (1.0 - c0);  // sin^2 theta0
    const double cos_sq_t1 = 0.5 * (1.0 + c1);  // cos^2 theta1
    r.angle0_sin = A * std::sin(2.0 * dc.theta0 - 2.0 * dc.tau) - (mu + (1.0 - mu) * sin_sq_t0);
    r.angle0_cos = 2.0 * A * std::cos(2.0 * dc.theta0 - 2.0 * dc.tau) - (1.0 - mu) * s0;
    r.angle1_sin = A * std::sin(2.0 * dc.theta1 - 2.0 * dc.tau) - (nu + (1.0 - nu) * cos_sq_t1);
    r.angle1_cos = 2.0 * A * std::cos(2.0 * dc.theta1 - 2.0 * dc.tau) + (1.0 - nu) * s1;
    return r;
}

SymmetryResiduals check_symmetry(const GaussianEnvelopePair& pair) {
    const DecayConstants fwd = solve_lemma21(pair);
    const DecayConstants swp = solve_lemma21({pair.b, pair.a, pair.c_env});
    SymmetryResiduals r;
    r.rate = swp.A - fwd.A;
    r.tau = swp.tau + fwd.tau;
    r.theta0 = swp.theta0 - (M_PI / 2.0 - fwd.theta1);
    r.theta1 = swp.theta1 - (M_PI / 2.0 - fwd.theta0);
    return r;
}

}  // namespace hdecay
