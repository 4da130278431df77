#include "hdecay/gaussians.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "hdecay/errors.hpp"
#include "hdecay/hermite.hpp"

namespace hdecay {

namespace {

void require_integrable(const ComplexGaussian& g) {
    if (!(g.z.real() > 0.0))
        throw std::domain_error("complex Gaussian needs Re z > 0, got Re z = " +
                                std::to_string(g.z.real()));
}

}  // namespace

std::pair<double, double> envelope_exponents(const ComplexGaussian& g) {
    require_integrable(g);
    return {g.z.real(), (1.0 / g.z).real()};
}

FourierResult fourier(const ComplexGaussian& g) {
    require_integrable(g);
    return {1.0 / std::sqrt(g.z), ComplexGaussian{1.0 / g.z}};
}

ComplexGaussian extremal_function(const GaussianEnvelopePair& pair) {
    const DecayConstants dc = solve_lemma21(pair);
    const std::complex<double> iAe = std::complex<double>(0.0, 1.0) * dc.A *
                                     std::exp(std::complex<double>(0.0, -2.0 * dc.tau));
    return ComplexGaussian{(1.0 + iAe) / (1.0 - iAe)};
}

std::complex<double> gaussian_beta(const ComplexGaussian& g) {
    return (1.0 - g.z) / (1.0 + g.z);
}

std::complex<double> bargmann_prefactor(const ComplexGaussian& g) {
    require_integrable(g);
    return std::sqrt(2.0 / (1.0 + g.z));
}

CoefficientSequence closed_form_coefficients(const ComplexGaussian& g, int n_max) {
    require_integrable(g);
    if (n_max < 0 || n_max > 400)
        throw std::domain_error("closed_form_coefficients supports n_max in [0, 400], got " +
                                std::to_string(n_max));
    const std::complex<double> pref = bargmann_prefactor(g);
    const std::complex<double> beta = gaussian_beta(g);
    const double log_pref = std::log(std::abs(pref)) + 0.25 * std::log(M_PI);
    const double arg_pref = std::arg(pref);
    const double abs_beta = std::abs(beta);
    const double arg_beta = std::arg(beta);

    CoefficientSequence seq;
    seq.kind = SequenceKind::hermite_inner_product;
    seq.entries.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        if (n % 2 == 1) {
            seq.set_zero(n);
            continue;
        }
        const int k = n / 2;
        if (k > 0 && abs_beta == 0.0) {
            seq.set_zero(n);
            continue;
        }
        double lm = log_pref + 0.5 * std::lgamma(n + 1.0) - k * M_LN2 - std::lgamma(k + 1.0);
        double ph = arg_pref;
        if (k > 0) {
            lm += k * std::log(abs_beta);
            ph += k * arg_beta;
        }
        seq.set(n, LogComplex{lm, normalize_phase(ph)});
    }
    return seq;
}

Sampled::Sampled(std::vector<double> xs, std::vector<std::complex<double>> values)
    : xs_(std::move(xs)), values_(std::move(values)) {
    if (xs_.size() != values_.size() || xs_.size() < 4)
        throw std::invalid_argument("sampled function needs >= 4 matching points");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1]))
            throw std::invalid_argument("sample grid must be strictly ascending");

    // Natural cubic spline second derivatives (Thomas algorithm), componentwise.
    const std::size_t n = xs_.size();
    second_.assign(n, {0.0, 0.0});
    std::vector<std::complex<double>> u(n, {0.0, 0.0});
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sig = (xs_[i] - xs_[i - 1]) / (xs_[i + 1] - xs_[i - 1]);
        const std::complex<double> p = sig * second_[i - 1] + 2.0;
        second_[i] = (sig - 1.0) / p;
        const std::complex<double> d =
            (values_[i + 1] - values_[i]) / (xs_[i + 1] - xs_[i]) -
            (values_[i] - values_[i - 1]) / (xs_[i] - xs_[i - 1]);
        u[i] = (6.0 * d / (xs_[i + 1] - xs_[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 0;)
        second_[i] = second_[i] * second_[i + 1] + u[i];
    second_[n - 1] = {0.0, 0.0};
}

std::complex<double> Sampled::operator()(double x) const {
    if (x < xs_.front() || x > xs_.back())
        throw UnsupportedInputError("sampled function evaluated at x = " + std::to_string(x) +
                                    " outside its grid [" + std::to_string(xs_.front()) + ", " +
                                    std::to_string(xs_.back()) + "]");
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t hi = std::min<std::size_t>(
        std::max<std::ptrdiff_t>(1, it - xs_.begin()), xs_.size() - 1);
    const std::size_t lo = hi - 1;
    const double h = xs_[hi] - xs_[lo];
    const double A = (xs_[hi] - x) / h;
    const double B = (x - xs_[lo]) / h;
    return A * values_[lo] + B * values_[hi] +
           ((A * A * A - A) * second_[lo] + (B * B * B - B) * second_[hi]) * (h * h) / 6.0;
}

std::complex<double> eval(const TestFunction& f, double x) {
    return std::visit(
        [x](const auto& fn) -> std::complex<double> {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, ComplexGaussian>) {
                return std::exp(-fn.z * (x * x) / 2.0);
            } else if constexpr (std::is_same_v<T, HermiteExpansion>) {
                const auto& seq = fn.coeffs;
                if (seq.entries.empty()) return {0.0, 0.0};
                const std::vector<double> phis =
                    hermite_values(static_cast<int>(seq.n_max()), x);
                std::complex<double> s{0.0, 0.0};
                for (std::size_t n = 0; n < seq.entries.size(); ++n)
                    if (!seq.is_zero(n)) s += seq.value(n) * phis[n];
                return s;
            } else {
                return fn(x);
            }
        },
        f);
}

std::complex<double> eval_fourier(const TestFunction& f, double xi) {
    return std::visit(
        [xi](const auto& fn) -> std::complex<double> {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, ComplexGaussian>) {
                const FourierResult fr = fourier(fn);
                return fr.scale * std::exp(-fr.transformed.z * (xi * xi) / 2.0);
            } else if constexpr (std::is_same_v<T, HermiteExpansion>) {
                // F phi_n = (-i)^n phi_n, so the transform is the expansion with
                // rotated coefficients.
                const auto& seq = fn.coeffs;
                if (seq.entries.empty()) return {0.0, 0.0};
                const std::vector<double> phis =
                    hermite_values(static_cast<int>(seq.n_max()), xi);
                const std::complex<double> mi{0.0, -1.0};
                std::complex<double> s{0.0, 0.0};
                std::complex<double> rot{1.0, 0.0};
                for (std::size_t n = 0; n < seq.entries.size(); ++n) {
                    if (!seq.is_zero(n)) s += rot * seq.value(n) * phis[n];
                    rot *= mi;
                }
                return s;
            } else {
                throw UnsupportedInputError(
                    "transform side is not available for sampled functions");
            }
        },
        f);
}

bool is_even_function(const TestFunction& f) {
    return std::visit(
        [](const auto& fn) -> bool {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, ComplexGaussian>) {
                return true;
            } else if constexpr (std::is_same_v<T, HermiteExpansion>) {
                const auto& seq = fn.coeffs;
                for (std::size_t n = 1; n < seq.entries.size(); n += 2)
                    if (!seq.is_zero(n)) return false;
                return true;
            } else {
                return false;  // no structural evenness claim for samples
            }
        },
        f);
}

std::optional<double> rate_hint(const TestFunction& f) {
    if (const auto* g = std::get_if<ComplexGaussian>(&f)) {
        const double r = std::abs(gaussian_beta(*g));
        if (r > 1e-6) return r;
    }
    return std::nullopt;
}

namespace {

// Least-squares slope of log_ratio against |x| over the outer 25% of the grid
// (both tails pooled); returns 0 when too few finite points remain.
double outer_log_slope(const std::vector<double>& xs, const std::vector<double>& log_ratio) {
    double xmax = 0.0;
    for (double x : xs) xmax = std::max(xmax, std::fabs(x));
    const double cut = 0.75 * xmax;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double ax = std::fabs(xs[i]);
        if (ax < cut || !std::isfinite(log_ratio[i])) continue;
        sx += ax;
        sy += log_ratio[i];
        sxx += ax * ax;
        sxy += ax * log_ratio[i];
        ++cnt;
    }
    if (cnt < 3) return 0.0;
    const double denom = cnt * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (cnt * sxy - sx * sy) / denom;
}

struct SideResult {
    double sup_ratio;
    std::optional<double> violation;
};

SideResult domination_side(const std::vector<double>& grid, double exponent,
                           const std::function<std::complex<double>(double)>& fn) {
    std::vector<double> lr(grid.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double mag = std::abs(fn(x));
        sup = std::max(sup, mag * std::exp(exponent * x * x / 2.0));
        lr[i] = std::log(mag) + exponent * x * x / 2.0;
    }
    SideResult res{sup, std::nullopt};
    if (outer_log_slope(grid, lr) > 1e-3) {
        double best = -1.0, where = 0.0;
        double xmax = 0.0;
        for (double x : grid) xmax = std::max(xmax, std::fabs(x));
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::fabs(grid[i]) >= 0.75 * xmax && std::isfinite(lr[i]) && lr[i] > best) {
                best = lr[i];
                where = grid[i];
            }
        res.violation = where;
    }
    return res;
}

}  // namespace

MembershipReport check_membership(const TestFunction& f, const GaussianEnvelopePair& pair,
                                  const std::vector<double>& x_grid,
                                  const std::vector<double>& xi_grid) {
    if (!(pair.a > 0.0) || !(pair.b > 0.0))
        throw std::domain_error("membership check needs positive envelope exponents");
    if (x_grid.size() < 8 || xi_grid.size() < 8)
        throw std::invalid_argument("membership grids need at least 8 points");
    const double need_x = 12.0 / std::sqrt(std::min(pair.a, 1.0));
    const double need_xi = 12.0 / std::sqrt(std::min(pair.b, 1.0));
    auto span = [](const std::vector<double>& g) {
        double m = 0.0;
        for (double x : g) m = std::max(m, std::fabs(x));
        return m;
    };
    if (span(x_grid) < need_x || span(xi_grid) < need_xi)
        throw std::invalid_argument("membership grids must cover |x| <= 12/sqrt(min(a,1)) "
                                    "and |xi| <= 12/sqrt(min(b,1))");

    const SideResult time_side = domination_side(
        x_grid, pair.a, [&](double x) { return eval(f, x); });
    const SideResult freq_side = domination_side(
        xi_grid, pair.b, [&](double xi) { return eval_fourier(f, xi); });

    MembershipReport report;
    report.pair = pair;
    report.witness_constant = std::max(time_side.sup_ratio, freq_side.sup_ratio);
    report.violation_point = time_side.violation ? time_side.violation : freq_side.violation;
    report.is_member = !report.violation_point.has_value();
    return report;
}

}  // namespace hdecay
