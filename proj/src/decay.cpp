#include "hdecay/decay.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hdecay/errors.hpp"
#include "hdecay/gaussians.hpp"
#include "hdecay/hermite.hpp"

namespace hdecay {

namespace {

// Solve the 3x3 normal equations by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        if (m[col][col] == 0.0)
            throw InsufficientDataError("degenerate envelope-fit system");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double fac = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= fac * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

std::vector<std::pair<int, double>> even_nonzero(const CoefficientSequence& seq) {
    std::vector<std::pair<int, double>> out;
    for (std::size_t n = 0; n < seq.entries.size(); n += 2)
        if (!seq.is_zero(n)) out.emplace_back(static_cast<int>(n), seq.entries[n].log_mag);
    return out;
}

}  // namespace

EnvelopeFit theorem13_envelope(const CoefficientSequence& seq,
                               const GaussianEnvelopePair& pair) {
    const auto pts = even_nonzero(seq);
    if (pts.size() < 10)
        throw InsufficientDataError("envelope fit needs >= 10 even nonzero entries, got " +
                                    std::to_string(pts.size()));
    if (seq.n_max() < 40)
        throw InsufficientDataError("envelope fit needs entries up to n >= 40");
    const double log_a_rate = std::log(solve_lemma21(pair).A);

    // Weighted LS for log|c_n| = c0 + p log n + R n on n in [20, n_hi], w ~ n.
    std::array<std::array<double, 4>, 3> m{};
    int n_lo = 0, n_hi = 0, used = 0;
    for (const auto& [n, y] : pts) {
        if (n < 20) continue;
        if (n_lo == 0) n_lo = n;
        n_hi = n;
        ++used;
        const double w = n;
        const std::array<double, 3> row{1.0, std::log(static_cast<double>(n)),
                                        static_cast<double>(n)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += w * row[i] * row[j];
            m[i][3] += w * row[i] * y;
        }
    }
    if (used < 4)
        throw InsufficientDataError("envelope fit window [20, n_max] has " +
                                    std::to_string(used) + " points; needs >= 4");
    const std::array<double, 3> sol = solve3(m);

    EnvelopeFit fit;
    fit.n_lo = n_lo;
    fit.n_hi = n_hi;
    fit.fitted_constant = std::exp(sol[0]);
    fit.fitted_power = sol[1];
    fit.fitted_rate = sol[2];
    fit.max_envelope_excess = -std::numeric_limits<double>::infinity();
    for (const auto& [n, y] : pts) {
        if (n == 0) continue;
        const double envelope = sol[0] - 0.25 * std::log(static_cast<double>(n)) +
                                0.5 * n * log_a_rate;
        fit.max_envelope_excess = std::max(fit.max_envelope_excess, y - envelope);
    }
    return fit;
}

double rate_estimate(const CoefficientSequence& seq) {
    const auto pts = even_nonzero(seq);
    if (pts.size() < 10)
        throw InsufficientDataError("rate estimate needs >= 10 even nonzero entries, got " +
                                    std::to_string(pts.size()));

    // t_k = (log|c_{2k+2}| - log|c_{2k}|)/2, then s_k = k t_k - (k-1) t_{k-1}
    // cancels the 1/(4k) correction of the coefficient ratio.
    std::vector<std::pair<int, double>> t;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1].first == pts[i].first + 2)
            t.emplace_back(pts[i].first / 2, 0.5 * (pts[i + 1].second - pts[i].second));
    std::vector<double> s;
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i].first == t[i - 1].first + 1) {
            const int k = t[i].first;
            s.push_back(k * t[i].second - (k - 1) * t[i - 1].second);
        }
    if (s.empty()) throw InsufficientDataError("rate estimate needs consecutive even entries");

    const std::size_t start = s.size() - std::max<std::size_t>(1, s.size() / 3);
    double acc = 0.0;
    for (std::size_t i = start; i < s.size(); ++i) acc += s[i];
    return acc / (s.size() - start);
}

double stirling_conversion(int n, double A) {
    if (n < 1) throw std::domain_error("stirling_conversion needs n >= 1");
    if (!(A > 0.0) || !(A < 1.0))
        throw std::domain_error("stirling_conversion needs A in (0, 1)");
    const double ln = std::log(static_cast<double>(n));
    // (n/2) log A from the source form cancels against the envelope target.
    return -0.25 * ln + 0.5 * n - 0.5 * n * ln + 0.5 * std::lgamma(n + 1.0) +
           0.25 * std::log(M_PI);
}

SharpnessReport sharpness_report(const GaussianEnvelopePair& pair, int n_max) {
    if (n_max < 2) throw std::domain_error("sharpness_report needs n_max >= 2");
    const DecayConstants dc = solve_lemma21(pair);
    const CoefficientSequence seq =
        closed_form_coefficients(extremal_function(pair), n_max);
    const int n = n_max - (n_max % 2);
    const double log_est = seq.entries[n].log_mag +
                           0.25 * std::log(static_cast<double>(n)) -
                           0.5 * n * std::log(dc.A);
    return {std::exp(log_est), std::pow(2.0 / (M_PI * M_PI * M_PI), 0.25)};
}

ReconstructionWitness eq1_reconstruction_check(double t, double r, int n_max,
                                               const std::vector<double>& x_grid) {
    if (!(t > 0.0)) throw std::domain_error("reconstruction check needs t > 0");
    if (!(r > 0.0) || r > 1.0) throw std::domain_error("reconstruction check needs r in (0, 1]");
    if (n_max < 1) throw std::domain_error("reconstruction check needs n_max >= 1");
    if (x_grid.size() < 8)
        throw std::invalid_argument("reconstruction grid needs at least 8 points");
    const double tail = std::exp(-2.0 * n_max * t);
    if (tail > 1e-14)
        throw InsufficientTruncationError(
            "truncated tail exp(-2 n_max t) = " + std::to_string(tail) +
            " exceeds 1e-14; raise n_max");

    const double target = std::tanh(2.0 * r * t);
    double c = 0.0;
    for (const double x : x_grid) {
        const std::vector<double> phis = hermite_values(n_max, x);
        double f = 0.0;
        for (int n = 0; n <= n_max; ++n) f += std::exp(-2.0 * n * t) * phis[n];
        c = std::max(c, std::fabs(f) * std::exp(target * x * x / 2.0));
    }
    return {c, target};
}

}  // namespace hdecay
