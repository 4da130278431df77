#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "hdecay/bargmann.hpp"
#include "hdecay/errors.hpp"
#include "hdecay/gaussians.hpp"
#include "hdecay/quadrature.hpp"
#include "reference.hpp"

using namespace hdecay;
using oracle::rel_err;

namespace {

using cld = std::complex<long double>;

// Transform straight from the defining integral, on the library's rule but
// with an independent long-double summation.
std::complex<double> transform_by_integral(const ComplexGaussian& g, std::complex<double> w) {
    static const QuadratureRule rule = gauss_hermite(200);
    const cld zl(g.z.real(), g.z.imag());
    const cld wl(w.real(), w.imag());
    cld sum = 0.0L;
    for (int i = 0; i < rule.order; ++i) {
        const long double x = rule.nodes_ld[i];
        const cld expo = x * wl - x * x / 2.0L - zl * (x * x) / 2.0L;
        sum += expl(rule.log_boosted[i]) * std::exp(expo);
    }
    const cld head = std::exp(-wl * wl / 4.0L) / sqrtl(3.14159265358979323846264338328L);
    const cld r = head * sum;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

double cabs_rel(std::complex<double> got, std::complex<double> want) {
    const double denom = std::abs(want);
    return denom == 0.0 ? std::abs(got) : std::abs(got - want) / denom;
}

double log_phi_norm_ref(int n) {
    return 0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(M_PI));
}

HermiteExpansion delta(int k, int n_max) {
    CoefficientSequence seq;
    seq.entries.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) seq.set_zero(n);
    seq.set(k, LogComplex{0.0, 0.0});
    return {seq};
}

std::vector<double> symmetric_grid(double half_span, double step) {
    std::vector<double> g;
    for (double x = -half_span; x <= half_span + step / 2; x += step) g.push_back(x);
    return g;
}

}  // namespace

TEST_CASE("gaussian transforms match the defining integral") {
    const std::complex<double> zs[] = {{1.0, 0.0}, {0.6, 0.8}, {2.0, 2.0}};
    const std::complex<double> ws[] = {{0.0, 0.0}, {1.5, 0.0}, {-2.0, 0.5}, {0.0, 3.0}, {2.0, 2.0}};
    for (const auto& z : zs) {
        for (const auto& w : ws) {
            CAPTURE(z.real());
            CAPTURE(z.imag());
            CAPTURE(w.real());
            CAPTURE(w.imag());
            const TestFunction f = ComplexGaussian{z};
            CHECK(cabs_rel(bargmann_eval(f, w), transform_by_integral({z}, w)) < 1e-12);
        }
    }
}

TEST_CASE("log-form and plain evaluation agree") {
    const TestFunction f = ComplexGaussian{{0.6, 0.8}};
    const std::complex<double> w{3.0, -1.0};
    CHECK(cabs_rel(bargmann_eval_log(f, w).value(), bargmann_eval(f, w)) < 1e-15);
}

TEST_CASE("basis elements transform to normalized monomials") {
    const std::complex<double> w{1.2, -0.7};
    const TestFunction d5 = delta(5, 8);
    const std::complex<double> want = std::pow(w, 5) / std::exp(log_phi_norm_ref(5));
    CHECK(cabs_rel(bargmann_eval(d5, w), want) < 1e-13);
    CHECK(bargmann_eval_log(d5, {0.0, 0.0}).is_zero());

    const TestFunction d0 = delta(0, 4);
    CHECK(rel_err(bargmann_eval(d0, {0.0, 0.0}).real(), 0.7511255444649425) < 1e-14);
}

TEST_CASE("expansion evaluation is linear in the coefficients") {
    CoefficientSequence seq;
    seq.entries.resize(5);
    for (int n = 0; n < 5; ++n) seq.set_zero(n);
    seq.set(0, LogComplex::from({0.4, 0.1}));
    seq.set(3, LogComplex::from({-0.2, 0.9}));
    const std::complex<double> w{0.8, 1.1};
    const std::complex<double> got = bargmann_eval(TestFunction{HermiteExpansion{seq}}, w);
    const std::complex<double> want =
        std::complex<double>(0.4, 0.1) / std::exp(log_phi_norm_ref(0)) +
        std::complex<double>(-0.2, 0.9) * std::pow(w, 3) / std::exp(log_phi_norm_ref(3));
    CHECK(cabs_rel(got, want) < 1e-13);
}

TEST_CASE("a truncated expansion of a Gaussian matches its closed form") {
    const ComplexGaussian g{{0.6, 0.8}};
    const TestFunction exp_form = HermiteExpansion{closed_form_coefficients(g, 160)};
    for (const std::complex<double> w : {std::complex<double>{4.0, 3.0},
                                         std::complex<double>{-6.0, 1.0},
                                         std::complex<double>{0.5, -7.5}}) {
        CAPTURE(w.real());
        CAPTURE(w.imag());
        CHECK(cabs_rel(bargmann_eval(exp_form, w), bargmann_eval(TestFunction{g}, w)) < 1e-10);
    }
}

TEST_CASE("a sampled Gaussian transforms like its parent") {
    const ComplexGaussian g{{0.6, 0.8}};
    std::vector<double> xs;
    std::vector<std::complex<double>> vs;
    for (int i = 0; i <= 1400; ++i) {
        const double x = -14.0 + i * 0.02;
        xs.push_back(x);
        vs.push_back(std::exp(-g.z * (x * x) / 2.0));
    }
    const TestFunction fs = Sampled(xs, vs);
    for (const std::complex<double> w : {std::complex<double>{2.0, -1.0},
                                         std::complex<double>{-1.0, 2.5}}) {
        CAPTURE(w.real());
        CAPTURE(w.imag());
        CHECK(std::abs(bargmann_eval(fs, w) - bargmann_eval(TestFunction{g}, w)) < 1e-6);
    }
}

TEST_CASE("the accuracy envelope guards non-closed-form inputs") {
    const TestFunction d4 = delta(4, 6);
    CHECK_THROWS_AS(bargmann_eval(d4, {13.0, 0.0}), AccuracyRangeError);   // |w|^2/4 > 40
    CHECK_NOTHROW(bargmann_eval(d4, {12.0, 0.0}));
    // closed-form Gaussians have no such limit
    CHECK_NOTHROW(bargmann_eval(TestFunction{ComplexGaussian{{1.0, 0.0}}}, {100.0, 0.0}));
}

TEST_CASE("contour coefficients recover the closed form through the norm relation") {
    const ComplexGaussian g = extremal_function({0.6, 0.6});
    const auto taylor = contour_coefficients(TestFunction{g}, 40);
    CHECK(taylor.kind == SequenceKind::bargmann_taylor);
    const auto got = coefficient_relation(taylor);
    CHECK(got.kind == SequenceKind::hermite_inner_product);
    const auto want = closed_form_coefficients(g, 40);
    for (int n = 0; n <= 40; n += 2) {
        CAPTURE(n);
        CHECK(std::fabs(std::expm1(got.entries[n].log_mag - want.entries[n].log_mag)) < 1e-10);
        const double dp = std::remainder(got.entries[n].phase - want.entries[n].phase, 2.0 * M_PI);
        CHECK(std::fabs(dp) < 1e-10);
    }
    for (int n = 1; n <= 39; n += 2) {
        CAPTURE(n);
        CHECK((got.is_zero(n) || got.entries[n].log_mag < want.entries[n - 1].log_mag - 25.0));
    }
}

TEST_CASE("contour coefficients of a basis element form its indicator") {
    const auto taylor = contour_coefficients(TestFunction{delta(6, 10)}, 12);
    for (int n = 0; n <= 12; ++n) {
        CAPTURE(n);
        if (n == 6) {
            CHECK(std::fabs(taylor.entries[n].log_mag + log_phi_norm_ref(6)) < 1e-10);
            CHECK(std::fabs(taylor.entries[n].phase) < 1e-10);
        } else {
            CHECK((taylor.is_zero(n) ||
                   taylor.entries[n].log_mag < -log_phi_norm_ref(6) - 25.0));
        }
    }
    CHECK_THROWS_AS(contour_coefficients(TestFunction{delta(0, 2)}, 401), std::domain_error);
}

TEST_CASE("the norm relation multiplies by the exact factor") {
    CoefficientSequence taylor;
    taylor.kind = SequenceKind::bargmann_taylor;
    taylor.entries.resize(9);
    for (int n = 0; n < 9; ++n) taylor.set(n, LogComplex{-0.5 * n, 0.3});
    taylor.set_zero(4);
    const auto lifted = coefficient_relation(taylor);
    for (int n = 0; n < 9; ++n) {
        CAPTURE(n);
        if (n == 4) {
            CHECK(lifted.is_zero(n));
        } else {
            CHECK(std::fabs(lifted.entries[n].log_mag - (-0.5 * n + log_phi_norm_ref(n))) < 1e-12);
            CHECK(lifted.entries[n].phase == taylor.entries[n].phase);
        }
    }
    CHECK_THROWS_AS(coefficient_relation(lifted), std::invalid_argument);
}

TEST_CASE("ray reports classify the four sector families") {
    const GaussianEnvelopePair p{0.6, 0.6};
    const TestFunction f = extremal_function(p);
    const auto grid = symmetric_grid(15.5, 0.25);
    const auto member = check_membership(f, p, grid, grid);
    REQUIRE(member.is_member);

    const struct {
        double theta;
        BoundTag tag;
    } cases[] = {
        {0.6, BoundTag::eq3},          {M_PI + 0.6, BoundTag::eq3},
        {M_PI - 0.6, BoundTag::eq4},   {2.0 * M_PI - 0.6, BoundTag::eq4},
        {0.2, BoundTag::eq5},          {1.4, BoundTag::eq6},
    };
    for (const auto& c : cases) {
        CAPTURE(c.theta);
        const auto report = ray_bound_check(f, member, c.theta, 10.0, 16);
        CHECK(report.applicable_bound == c.tag);
        REQUIRE(report.r_samples.size() == 16);
        REQUIRE(report.log_transform.size() == 16);
        REQUIRE(report.log_bound.size() == 16);
        double worst = -1e300;
        for (std::size_t k = 0; k < 16; ++k)
            worst = std::max(worst, report.log_transform[k] - report.log_bound[k]);
        CHECK(report.max_excess == worst);
        CHECK(report.max_excess < std::log1p(1e-6));
    }

    // negative and wrapped angles normalize into [0, 2pi)
    const auto wrapped = ray_bound_check(f, member, -0.5, 5.0, 4);
    CHECK(rel_err(wrapped.theta, 2.0 * M_PI - 0.5) < 1e-15);
    const auto spun = ray_bound_check(f, member, 7.0, 5.0, 4);
    CHECK(rel_err(spun.theta, 7.0 - 2.0 * M_PI) < 1e-14);
    CHECK(spun.applicable_bound == BoundTag::eq3);
}

TEST_CASE("ray bounds carry the documented envelope shape") {
    const GaussianEnvelopePair p{0.6, 0.6};
    const TestFunction f = extremal_function(p);
    const auto grid = symmetric_grid(15.5, 0.25);
    const auto member = check_membership(f, p, grid, grid);
    const DecayConstants dc = solve_lemma21(p);
    const double theta = 0.6;
    const auto report = ray_bound_check(f, member, theta, 8.0, 8);
    const double head =
        std::log(member.witness_constant) + 0.5 * std::log(2.0 / (1.0 + dc.m));
    for (std::size_t k = 0; k < 8; ++k) {
        CAPTURE(k);
        const double r = report.r_samples[k];
        CHECK(rel_err(r, 8.0 * (k + 1) / 8.0) < 1e-15);
        const double want =
            head + dc.A * std::sin(2.0 * theta - 2.0 * dc.tau) * r * r / 4.0;
        CHECK(std::fabs(report.log_bound[k] - want) < 1e-12);
    }

    MembershipReport outsider;
    outsider.pair = p;
    outsider.is_member = false;
    CHECK_THROWS_AS(ray_bound_check(f, outsider, 0.3, 5.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(ray_bound_check(f, member, 0.3, -1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(ray_bound_check(f, member, 0.3, 5.0, 0), std::invalid_argument);
}

TEST_CASE("sector integrals reduce to arc lengths at n = 0") {
    for (const GaussianEnvelopePair p : {GaussianEnvelopePair{0.6, 0.6},
                                         GaussianEnvelopePair{0.3, 1.2},
                                         GaussianEnvelopePair{2.0, 0.25}}) {
        CAPTURE(p.a);
        CAPTURE(p.b);
        const DecayConstants dc = solve_lemma21(p);
        const SectorIntegrals s = ijk_integrals(p, 0);
        CHECK(rel_err(std::exp(s.log_i), dc.theta0) < 1e-12);
        CHECK(rel_err(std::exp(s.log_j), dc.theta1 - dc.theta0) < 1e-12);
        CHECK(rel_err(std::exp(s.log_k), M_PI / 2 - dc.theta1) < 1e-12);
    }
    CHECK_THROWS_AS(ijk_integrals({0.6, 0.6}, -1), std::domain_error);
}

TEST_CASE("sector integrals match direct integration") {
    for (const GaussianEnvelopePair p : {GaussianEnvelopePair{0.6, 0.6},
                                         GaussianEnvelopePair{2.0, 0.25}}) {
        CAPTURE(p.a);
        CAPTURE(p.b);
        const DecayConstants dc = solve_lemma21(p);
        const long double lam = 1.0L / (2.0L * dc.A);
        const SectorIntegrals s = ijk_integrals(p, 1);
        const long double i_ref = oracle::simpson(
            [&](long double t) {
                const long double sin_t = sinl(t);
                return expl(lam * (dc.mu + (1.0L - dc.mu) * sin_t * sin_t));
            },
            0.0L, static_cast<long double>(dc.theta0), 20000);
        const long double j_ref = oracle::simpson(
            [&](long double t) { return expl(0.5L * sinl(2.0L * t - 2.0L * dc.tau)); },
            static_cast<long double>(dc.theta0), static_cast<long double>(dc.theta1), 20000);
        const long double k_ref = oracle::simpson(
            [&](long double t) {
                const long double cos_t = cosl(t);
                return expl(lam * (dc.nu + (1.0L - dc.nu) * cos_t * cos_t));
            },
            static_cast<long double>(dc.theta1), 3.14159265358979323846264338328L / 2, 20000);
        CHECK(rel_err(std::exp(s.log_i), static_cast<double>(i_ref)) < 1e-10);
        CHECK(rel_err(std::exp(s.log_j), static_cast<double>(j_ref)) < 1e-10);
        CHECK(rel_err(std::exp(s.log_k), static_cast<double>(k_ref)) < 1e-10);
    }

    // sharp-peak regime against the same oracle, compared in the log domain
    const GaussianEnvelopePair p{0.6, 0.6};
    const DecayConstants dc = solve_lemma21(p);
    const SectorIntegrals s = ijk_integrals(p, 100);
    const long double j_ref = oracle::simpson(
        [&](long double t) { return expl(50.0L * (sinl(2.0L * t - 2.0L * dc.tau) - 1.0L)); },
        static_cast<long double>(dc.theta0), static_cast<long double>(dc.theta1), 200000);
    CHECK(std::fabs(s.log_j - (50.0 + static_cast<double>(logl(j_ref)))) < 1e-10);
}

TEST_CASE("the middle integral approaches its scaling limit") {
    // n/2 and (1/2) log n removed; the remainder settles at (1/2) log pi
    const struct {
        GaussianEnvelopePair p;
        double s100, s400, s1600;
    } frozen[] = {
        {{0.6, 0.6}, 0.57488229, 0.57299151, 0.57252129},
        {{0.3, 1.2}, 0.51280224, 0.57206238, 0.57252129},
        {{2.0, 0.25}, 0.3637131, 0.53268056, 0.57230095},
    };
    for (const auto& row : frozen) {
        CAPTURE(row.p.a);
        CAPTURE(row.p.b);
        auto window = [&](int n) {
            return ijk_integrals(row.p, n).log_j - n / 2.0 + 0.5 * std::log(n);
        };
        CHECK(std::fabs(window(100) - row.s100) < 5e-7);
        CHECK(std::fabs(window(400) - row.s400) < 5e-7);
        CHECK(std::fabs(window(1600) - row.s1600) < 5e-7);
        CHECK(std::fabs(window(1600) - 0.5 * std::log(M_PI)) < 2e-3);
    }
}

TEST_CASE("flank integrals stay below their middle-integral multiples") {
    for (const GaussianEnvelopePair p : {GaussianEnvelopePair{0.6, 0.6},
                                         GaussianEnvelopePair{0.3, 1.2},
                                         GaussianEnvelopePair{2.0, 0.25}}) {
        CAPTURE(p.a);
        CAPTURE(p.b);
        const DecayConstants dc = solve_lemma21(p);
        const double i_cap = dc.theta0 / (dc.tau + M_PI / 4 - dc.theta0);
        const double k_cap = (M_PI / 2 - dc.theta1) / (dc.theta1 - dc.tau - M_PI / 4);
        for (int n : {50, 100, 200}) {
            CAPTURE(n);
            const SectorIntegrals s = ijk_integrals(p, n);
            CHECK(s.log_i - s.log_j <= std::log(i_cap) + 1e-9);
            CHECK(s.log_k - s.log_j <= std::log(k_cap) + 1e-9);
        }
    }
}
