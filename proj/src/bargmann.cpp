#include "hdecay/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdecay/errors.hpp"

namespace hdecay {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// (1/2)(n log 2 + logGamma(n+1) + (1/2) log pi) — the log norm sqrt(2^n n! sqrt(pi)).
double log_phi_norm(int n) {
    return 0.5 * (n * M_LN2 + std::lgamma(n + 1.0) + 0.5 * std::log(M_PI));
}

double envelope_rate(const TestFunction& f) {
    return rate_hint(f).value_or(1.0);
}

void require_in_envelope(const TestFunction& f, std::complex<double> w) {
    const double budget = std::norm(w) * envelope_rate(f) / 4.0;
    if (budget > 40.0)
        throw AccuracyRangeError(
            "Bargmann evaluation outside the supported envelope: |w|^2 rate/4 = " +
            std::to_string(budget) + " > 40");
}

LogComplex gaussian_bargmann(const ComplexGaussian& g, std::complex<double> w) {
    const std::complex<double> pref = bargmann_prefactor(g);
    const std::complex<double> quad = gaussian_beta(g) * w * w / 4.0;
    return {std::log(std::abs(pref)) + quad.real(),
            normalize_phase(std::arg(pref) + quad.imag())};
}

LogComplex expansion_bargmann(const HermiteExpansion& fn, std::complex<double> w) {
    const CoefficientSequence& seq = fn.coeffs;
    if (seq.nonzero_count() == 0) return LogComplex::zero();
    const double abs_w = std::abs(w);
    const double arg_w = std::arg(w);

    // term_n = c_n w^n / sqrt(2^n n! sqrt(pi)), summed with the peak log
    // factored out so extreme n or |w| cannot overflow.
    std::vector<double> lm(seq.entries.size(),
                           -std::numeric_limits<double>::infinity());
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < seq.entries.size(); ++n) {
        if (seq.is_zero(n)) continue;
        if (abs_w == 0.0 && n > 0) continue;
        lm[n] = seq.entries[n].log_mag - log_phi_norm(static_cast<int>(n)) +
                (n > 0 ? n * std::log(abs_w) : 0.0);
        peak = std::max(peak, lm[n]);
    }
    if (!std::isfinite(peak)) return LogComplex::zero();

    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 0; n < seq.entries.size(); ++n) {
        if (!std::isfinite(lm[n])) continue;
        const double ph = seq.entries[n].phase + n * arg_w;
        sum += std::polar(std::exp(lm[n] - peak), ph);
    }
    if (sum == std::complex<double>(0.0, 0.0)) return LogComplex::zero();
    return {peak + std::log(std::abs(sum)), normalize_phase(std::arg(sum))};
}

LogComplex sampled_bargmann(const Sampled& fn, std::complex<double> w) {
    // Quadrature of the defining integral; the tabulated range is the support.
    static const QuadratureRule rule = gauss_hermite(512);
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> re_eta(rule.order), lw(rule.order);
    std::vector<std::complex<double>> fx(rule.order);
    for (int i = 0; i < rule.order; ++i) {
        const double x = rule.nodes[i];
        if (x < fn.x_min() || x > fn.x_max()) {
            lw[i] = -std::numeric_limits<double>::infinity();
            continue;
        }
        fx[i] = fn(x);
        re_eta[i] = x * w.real() - x * x / 2.0;
        lw[i] = re_eta[i] + (fx[i] == std::complex<double>(0.0, 0.0)
                                 ? -std::numeric_limits<double>::infinity()
                                 : std::log(std::abs(fx[i])));
        peak = std::max(peak, lw[i]);
    }
    if (!std::isfinite(peak)) return LogComplex::zero();

    std::complex<double> sum{0.0, 0.0};
    for (int i = 0; i < rule.order; ++i) {
        if (!std::isfinite(lw[i])) continue;
        const double x = rule.nodes[i];
        const double scale = rule.boosted_weight(i) * std::exp(re_eta[i] - peak);
        sum += scale * fx[i] * std::polar(1.0, x * w.imag());
    }
    if (sum == std::complex<double>(0.0, 0.0)) return LogComplex::zero();

    const std::complex<double> quarter = w * w / 4.0;
    return {peak + std::log(std::abs(sum)) - quarter.real() - 0.5 * std::log(M_PI),
            normalize_phase(std::arg(sum) - quarter.imag())};
}

}  // namespace

LogComplex bargmann_eval_log(const TestFunction& f, std::complex<double> w) {
    if (const auto* g = std::get_if<ComplexGaussian>(&f)) return gaussian_bargmann(*g, w);
    require_in_envelope(f, w);
    if (const auto* h = std::get_if<HermiteExpansion>(&f)) return expansion_bargmann(*h, w);
    return sampled_bargmann(std::get<Sampled>(f), w);
}

std::complex<double> bargmann_eval(const TestFunction& f, std::complex<double> w) {
    return bargmann_eval_log(f, w).value();
}

CoefficientSequence contour_coefficients(const TestFunction& f, int n_max) {
    if (n_max < 0 || n_max > 400)
        throw std::domain_error("contour_coefficients supports n_max in [0, 400], got " +
                                std::to_string(n_max));
    const double rate = envelope_rate(f);

    CoefficientSequence seq;
    seq.kind = SequenceKind::bargmann_taylor;
    seq.entries.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double r = n == 0 ? 1.0 : std::sqrt(2.0 * n / rate);
        const int mt = std::max(8 * n + 64, 256);

        std::vector<LogComplex> vals(mt);
        double peak = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < mt; ++j) {
            const double th = kTwoPi * j / mt;
            vals[j] = bargmann_eval_log(f, std::polar(r, th));
            if (!vals[j].is_zero()) peak = std::max(peak, vals[j].log_mag);
        }
        if (!std::isfinite(peak)) {
            seq.set_zero(n);
            continue;
        }

        std::complex<double> sum{0.0, 0.0};
        for (int j = 0; j < mt; ++j) {
            if (vals[j].is_zero()) continue;
            const double th = kTwoPi * j / mt;
            sum += std::polar(std::exp(vals[j].log_mag - peak), vals[j].phase - n * th);
        }
        const double abs_sum = std::abs(sum);
        // Trapezoid mean over the circle: anything at the noise floor of the
        // rescaled sum is a true zero washed by roundoff — flag it as zero.
        if (abs_sum <= mt * 1e-13) {
            seq.set_zero(n);
            continue;
        }
        seq.set(n, LogComplex{peak + std::log(abs_sum) - std::log(mt) - n * std::log(r),
                              normalize_phase(std::arg(sum))});
    }
    return seq;
}

CoefficientSequence coefficient_relation(const CoefficientSequence& taylor) {
    if (taylor.kind != SequenceKind::bargmann_taylor)
        throw std::invalid_argument(
            "coefficient_relation expects a Taylor-coefficient sequence");
    CoefficientSequence seq;
    seq.kind = SequenceKind::hermite_inner_product;
    seq.entries.resize(taylor.entries.size());
    for (std::size_t n = 0; n < taylor.entries.size(); ++n) {
        if (taylor.is_zero(n)) {
            seq.set_zero(n);
        } else {
            seq.set(n, LogComplex{taylor.entries[n].log_mag +
                                      log_phi_norm(static_cast<int>(n)),
                                  taylor.entries[n].phase});
        }
    }
    return seq;
}

RayBoundReport ray_bound_check(const TestFunction& f, const MembershipReport& membership,
                               double theta, double r_max, int samples) {
    if (!membership.is_member)
        throw std::invalid_argument(
            "ray bounds are only certified for members of the envelope class");
    if (samples < 1 || !(r_max > 0.0))
        throw std::invalid_argument("ray_bound_check needs samples >= 1 and r_max > 0");

    const DecayConstants dc = solve_lemma21(membership.pair);
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;

    const auto in = [](double x, double lo, double hi) { return x >= lo && x <= hi; };
    double exponent;
    BoundTag tag;
    if (in(t, dc.theta0, dc.theta1) || in(t - M_PI, dc.theta0, dc.theta1)) {
        exponent = dc.A * std::sin(2.0 * t - 2.0 * dc.tau);
        tag = BoundTag::eq3;
    } else if (in(M_PI - t, dc.theta0, dc.theta1) || in(kTwoPi - t, dc.theta0, dc.theta1)) {
        exponent = dc.A * std::sin(-2.0 * t - 2.0 * dc.tau);
        tag = BoundTag::eq4;
    } else {
        const double s = std::sin(t), c = std::cos(t);
        const double e5 = dc.mu + (1.0 - dc.mu) * s * s;
        const double e6 = dc.nu + (1.0 - dc.nu) * c * c;
        exponent = std::min(e5, e6);
        tag = e5 <= e6 ? BoundTag::eq5 : BoundTag::eq6;
    }

    const double log_c = std::log(membership.witness_constant) +
                         0.5 * std::log(2.0 / (1.0 + dc.m));

    RayBoundReport report;
    report.theta = t;  // the normalized angle actually classified and sampled
    report.applicable_bound = tag;
    report.r_samples.resize(samples);
    report.log_transform.resize(samples);
    report.log_bound.resize(samples);
    report.max_excess = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double r = r_max * (k + 1) / samples;
        const LogComplex bf = bargmann_eval_log(f, std::polar(r, t));
        report.r_samples[k] = r;
        report.log_transform[k] = bf.log_mag;
        report.log_bound[k] = log_c + exponent * r * r / 4.0;
        report.max_excess =
            std::max(report.max_excess, report.log_transform[k] - report.log_bound[k]);
    }
    return report;
}

namespace {

// log of integral exp(g(t)) dt over [lo, hi] for g with one maximum at t_peak
// (interior or endpoint).  Panels refine geometrically toward the peak so the
// Laplace width ~ lambda^{-1/2} is always resolved; 64-point Gauss-Legendre
// per panel.  The peak value is factored out, so nothing overflows.
template <class G>
double log_integral_exp(double lo, double hi, double t_peak, G&& g) {
    std::vector<double> cuts{lo, hi, t_peak};
    for (int j = 1; j <= 8; ++j) {
        const double f = std::pow(4.0, -j);
        if (t_peak - lo > 0.0) cuts.push_back(t_peak - (t_peak - lo) * f);
        if (hi - t_peak > 0.0) cuts.push_back(t_peak + (hi - t_peak) * f);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    static const LegendreRule gl = gauss_legendre(64);
    const double g_max = g(t_peak);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
        const double hl = 0.5 * (cuts[p + 1] - cuts[p]);
        if (hl <= 0.0) continue;
        double acc = 0.0;
        for (int i = 0; i < gl.order; ++i)
            acc += gl.weights[i] * std::exp(g(mid + hl * gl.nodes[i]) - g_max);
        total += hl * acc;
    }
    return g_max + std::log(total);
}

}  // namespace

SectorIntegrals ijk_integrals(const GaussianEnvelopePair& pair, int n) {
    if (n < 0) throw std::domain_error("ijk_integrals needs n >= 0");
    const DecayConstants dc = solve_lemma21(pair);
    const double lam = n / (2.0 * dc.A);

    SectorIntegrals out;
    out.log_i = log_integral_exp(0.0, dc.theta0, dc.theta0, [&](double t) {
        const double s = std::sin(t);
        return lam * (dc.mu + (1.0 - dc.mu) * s * s);
    });
    out.log_j = log_integral_exp(dc.theta0, dc.theta1, dc.tau + M_PI / 4.0, [&](double t) {
        return (n / 2.0) * std::sin(2.0 * t - 2.0 * dc.tau);
    });
    out.log_k = log_integral_exp(dc.theta1, M_PI / 2.0, dc.theta1, [&](double t) {
        const double c = std::cos(t);
        return lam * (dc.nu + (1.0 - dc.nu) * c * c);
    });
    return out;
}

}  // namespace hdecay
