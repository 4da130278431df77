#include "hdecay/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hdecay {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

// phi_{M-1} and phi_M at x, stored as p * 2^e2 with p kept in [2^-500, 2^500]
// so the recurrence survives |x| ~ 45 where phi_0 itself is ~1e-450.
struct ScaledPair {
    long double prev;  // phi_{M-1} * 2^{-e2}
    long double curr;  // phi_M * 2^{-e2}
    int e2;
};

ScaledPair scaled_phi_pair(int M, long double x) {
    const long double log_phi0 = -0.25L * std::log(kPi) - 0.5L * x * x;
    int e2 = static_cast<int>(std::floor(log_phi0 / kLn2));
    long double p0 = std::exp(log_phi0 - static_cast<long double>(e2) * kLn2);
    long double p1 = x * std::sqrt(2.0L) * p0;
    for (int k = 1; k < M; ++k) {
        const long double next = x * std::sqrt(2.0L / (k + 1)) * p1 -
                                 std::sqrt(static_cast<long double>(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = next;
        const long double mag = std::fabs(p1) + std::fabs(p0);
        if (mag > 0x1p500L) {
            p0 *= 0x1p-500L;
            p1 *= 0x1p-500L;
            e2 += 500;
        } else if (mag < 0x1p-500L && mag > 0.0L) {
            p0 *= 0x1p500L;
            p1 *= 0x1p500L;
            e2 -= 500;
        }
    }
    return {p0, p1, e2};
}

}  // namespace

double QuadratureRule::boosted_weight(int i) const {
    return static_cast<double>(std::exp(log_boosted[i]));
}

QuadratureRule gauss_hermite(int order) {
    if (order < 1 || order > 1024)
        throw std::invalid_argument("gauss_hermite order must be in [1, 1024], got " +
                                    std::to_string(order));
    const int M = order;
    QuadratureRule rule;
    rule.order = M;
    rule.nodes.assign(M, 0.0);
    rule.weights.assign(M, 0.0);
    rule.log_weights.assign(M, 0.0);
    rule.nodes_ld.assign(M, 0.0L);
    rule.log_boosted.assign(M, 0.0L);

    const int half = (M + 1) / 2;

    // Initial guesses: the k-th positive root counted from the outside in
    // satisfies the turning-point quantization
    //   int_{x_k}^{R} sqrt(R^2 - t^2) dt = (k - 1/4) pi,   R = sqrt(2M + 1);
    // with x = R cos(u/2) the left side is R^2 (u - sin u) / 4.  Bisection on
    // the monotone u - sin u puts every guess within a small fraction of the
    // local node spacing, uniformly in k and M.
    const long double R2 = 2.0L * M + 1.0L;
    const long double R = std::sqrt(R2);
    std::vector<long double> guess(half);
    for (int k = 1; k <= half; ++k) {
        const long double c = 4.0L * kPi * (k - 0.25L) / R2;
        long double lo = 0.0L, hi = kPi;
        for (int it = 0; it < 80; ++it) {
            const long double mid = 0.5L * (lo + hi);
            (mid - std::sin(mid) < c ? lo : hi) = mid;
        }
        guess[k - 1] = R * std::cos(0.25L * (lo + hi));
    }

    long double prev_root = R;
    for (int i = 0; i < half; ++i) {
        long double z = guess[i];
        // The local WKB spacing is ~ pi / sqrt(R^2 - z^2); capping the Newton
        // step at half of it keeps each solve inside its own basin.
        const long double cap =
            0.5L * kPi / std::sqrt(std::max(R2 - z * z, std::cbrt(R2)));
        ScaledPair sp{0.0L, 0.0L, 0};
        for (int it = 0; it < 200; ++it) {
            sp = scaled_phi_pair(M, z);
            // Newton step for the orthonormal polynomial: p_M' = sqrt(2M) p_{M-1};
            // the Gaussian factors cancel in the ratio.
            long double dz = sp.curr / (std::sqrt(2.0L * M) * sp.prev);
            if (std::fabs(dz) > cap) dz = dz > 0.0L ? cap : -cap;
            z -= dz;
            if (std::fabs(dz) <= 1e-19L * (1.0L + std::fabs(z))) {
                sp = scaled_phi_pair(M, z);
                break;
            }
        }
        if (!(z < prev_root))
            throw std::runtime_error("gauss_hermite: node ordering lost at order " +
                                     std::to_string(order));
        prev_root = z;

        long double x = z;
        if (M % 2 == 1 && i == half - 1) x = 0.0L;  // center root is exact

        // w_i = 1 / (M p_{M-1}(x_i)^2) with p = phi e^{x^2/2}, so
        // log w + x^2 = -log M - 2 log|phi_{M-1}| — moderate at every node.
        const long double log_b =
            -std::log(static_cast<long double>(M)) -
            2.0L * (std::log(std::fabs(sp.prev)) + static_cast<long double>(sp.e2) * kLn2);
        const long double log_w = log_b - x * x;

        const int hi = M - 1 - i;  // roots found largest-first; store ascending
        rule.nodes_ld[i] = -x;
        rule.nodes_ld[hi] = x;
        rule.nodes[i] = static_cast<double>(-x);
        rule.nodes[hi] = static_cast<double>(x);
        rule.log_boosted[i] = log_b;
        rule.log_boosted[hi] = log_b;
        rule.log_weights[i] = static_cast<double>(log_w);
        rule.log_weights[hi] = static_cast<double>(log_w);
        const double w = static_cast<double>(std::exp(log_w));
        rule.weights[i] = w;
        rule.weights[hi] = w;
    }
    return rule;
}

LegendreRule gauss_legendre(int order) {
    if (order < 1 || order > 512)
        throw std::invalid_argument("gauss_legendre order must be in [1, 512], got " +
                                    std::to_string(order));
    const int M = order;
    LegendreRule rule;
    rule.order = M;
    rule.nodes.assign(M, 0.0);
    rule.weights.assign(M, 0.0);

    // P_M and the derivative factor M (z P_M - P_{M-1}) / (z^2 - 1) at z.
    const auto legendre_pair = [M](double z) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < M; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        const double pp = M * (z * p0 - p1) / (z * z - 1.0);
        return std::pair<double, double>{p0, pp};
    };

    const int half = (M + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (M + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, pp] = legendre_pair(z);
            const double dz = p / pp;
            z -= dz;
            if (std::fabs(dz) <= 1e-15 * (1.0 + std::fabs(z))) break;
        }
        if (M % 2 == 1 && i == half - 1) z = 0.0;
        // Re-evaluate at the converged node: a stale derivative costs ~50 ulp
        // in the edge weights, where 2z/(1-z^2) amplifies the offset.
        const double pp = legendre_pair(z).second;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.nodes[i] = -z;
        rule.nodes[M - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[M - 1 - i] = w;
    }
    return rule;
}

}  // namespace hdecay
