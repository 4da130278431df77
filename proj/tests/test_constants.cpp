#include <cmath>
#include <random>

#include "doctest.h"
#include "hdecay/constants.hpp"
#include "hdecay/errors.hpp"
#include "reference.hpp"

using namespace hdecay;
using oracle::rel_err;

namespace {

struct Frozen {
    double a, b;
    double mu, nu, A, tau, theta0, theta1;
};

// Reference values computed independently (half-angle recovery of the sector
// boundaries cross-checked in extended precision); good to a few ulps.
const Frozen kFrozen[] = {
    {0.6, 0.6, 0.25, 0.25, 0.5, 0.0, 0.46364760900080613, 1.1071487177940905},
    {0.3, 1.2, 0.53846153846153847, -0.090909090909090891, 0.59274897836381917,
     -0.37657564048109719, 0.29849893158617929, 0.94200004037946365},
    {1.2, 0.3, -0.090909090909090891, 0.53846153846153847, 0.59274897836381917,
     0.37657564048109719, 0.62879628641543297, 1.2722973952087173},
    {0.05, 5.0, 0.90476190476190477, -0.66666666666666667, 0.90543902048664758,
     -0.69879734269880116, 0.082292343240947449, 0.60589111883924634},
    {2.0, 0.25, -0.33333333333333333, 0.6, 0.62017367294604228,
     0.52582510627418683, 0.58800260354756755, 1.3734007669450159},
};

// Log-uniform admissible pair; b capped so that ab stays below 1.
GaussianEnvelopePair random_pair(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a = std::exp(std::log(0.05) + u(rng) * std::log(20.0 / 0.05));
    const double b_hi = std::min(20.0, 0.999 / a);
    const double b = std::exp(std::log(0.01) + u(rng) * std::log(b_hi / 0.01));
    return {a, b};
}

}  // namespace

TEST_CASE("solved constants match the reference table") {
    for (const auto& f : kFrozen) {
        CAPTURE(f.a);
        CAPTURE(f.b);
        const DecayConstants dc = solve_lemma21({f.a, f.b});
        CHECK(rel_err(dc.mu, f.mu) < 2e-15);
        CHECK(rel_err(dc.nu, f.nu) < 2e-15);
        CHECK(rel_err(dc.A, f.A) < 2e-15);
        if (f.tau == 0.0) {
            CHECK(dc.tau == 0.0);
        } else {
            CHECK(rel_err(dc.tau, f.tau) < 2e-15);
        }
        // Angles absolutely: the arcsin branch for 2 tau amplifies a rounding
        // of its argument by 1/cos(2 tau), which lands on theta0's small value
        // for lopsided pairs.
        CHECK(std::fabs(dc.theta0 - f.theta0) < 5e-15);
        CHECK(std::fabs(dc.theta1 - f.theta1) < 5e-15);
        CHECK(dc.m == std::min(f.a, f.b));
        CHECK_FALSE(dc.near_degenerate);
    }
}

TEST_CASE("moebius images have the closed form") {
    const auto [mu, nu] = derive_mu_nu({0.6, 0.25});
    CHECK(rel_err(mu, 0.25) < 1e-15);
    CHECK(rel_err(nu, 0.6) < 1e-15);
    CHECK(derive_mu_nu({1.0, 1.0}).first == 0.0);
    CHECK_THROWS_AS(derive_mu_nu({0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(derive_mu_nu({0.5, -2.0}), std::domain_error);
}

TEST_CASE("the degenerate regime is rejected") {
    CHECK_THROWS_AS(decay_rate({1.0, 1.0}), OutOfRegimeError);
    CHECK_THROWS_AS(decay_rate({2.0, 0.5}), OutOfRegimeError);
    CHECK_THROWS_AS(decay_rate({3.0, 1.0}), OutOfRegimeError);
    CHECK_THROWS_AS(solve_lemma21({2.0, 0.5}), OutOfRegimeError);
    CHECK_THROWS_AS(solve_lemma21({-0.3, 0.5}), std::domain_error);
}

TEST_CASE("the boundary flag trips only near ab = 1") {
    CHECK(solve_lemma21({1.0 - 5e-13, 1.0}).near_degenerate);
    CHECK_FALSE(solve_lemma21({0.9, 1.0}).near_degenerate);
    CHECK_FALSE(solve_lemma21({0.05, 5.0}).near_degenerate);
}

TEST_CASE("identity residuals vanish across the admissible region") {
    std::mt19937 rng(20260812);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const GaussianEnvelopePair p = random_pair(rng);
        CAPTURE(p.a);
        CAPTURE(p.b);
        const DecayConstants dc = solve_lemma21(p);
        CHECK(dc.A > 0.0);
        CHECK(dc.A < 1.0);
        CHECK(std::fabs(dc.tau) < M_PI / 4);
        CHECK(dc.theta0 > 0.0);
        CHECK(dc.theta1 < M_PI / 2);
        CHECK(dc.theta0 < dc.tau + M_PI / 4);
        CHECK(dc.tau + M_PI / 4 < dc.theta1);
        worst = std::max(worst, identity_residuals(dc).max_abs());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("swapping the envelope exponents reflects the constants") {
    std::mt19937 rng(771);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const GaussianEnvelopePair p = random_pair(rng);
        CAPTURE(p.a);
        CAPTURE(p.b);
        worst = std::max(worst, check_symmetry(p).max_abs());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("equal exponents give the diagonal closed form") {
    for (int i = 1; i <= 30; ++i) {
        const double a = i / 31.0;
        CAPTURE(a);
        const DecayConstants dc = solve_lemma21({a, a});
        CHECK(rel_err(dc.A, std::sqrt((1.0 - a) / (1.0 + a))) < 1e-14);
        CHECK(dc.tau == 0.0);
        CHECK(std::fabs(dc.theta0 + dc.theta1 - M_PI / 2) < 1e-14);
    }
}
