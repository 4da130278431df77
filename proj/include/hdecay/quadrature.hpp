#pragma once

#include <vector>

namespace hdecay {

// Gauss rule for the weight e^{-x^2}:  integral f(x) e^{-x^2} dx = sum w_i f(x_i).
// Nodes ascending and symmetric about 0.  The true weights underflow double at
// the extreme nodes for order >~ 360, so log_weights is the primary
// representation; weights[i] = exp(log_weights[i]) and may be 0 there.
// Inner products over dx use the boosted form W_i = exp(log_weights[i] + x_i^2),
// which stays moderate at every order.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;

    // Extended-precision shadows of the solve.  The compensated inner-product
    // kernels need node/weight noise below ~1e-17 relative: coefficients near
    // n = 60 sit ten orders below the integrand mass, so double-rounded
    // weights alone would cap the attainable relative accuracy near 1e-7.
    // log_boosted[i] = log w_i + x_i^2 stays O(10) at every order.
    std::vector<long double> nodes_ld;
    std::vector<long double> log_boosted;

    double boosted_weight(int i) const;  // w_i e^{x_i^2}
};

// Newton iteration on the Hermite functions (scaled three-term recurrence),
// carried out in long double; accuracy a few long-double ulps per node.
// order in [1, 1024].
QuadratureRule gauss_hermite(int order);

// Gauss-Legendre rule on [-1, 1]; nodes ascending.  order in [1, 512].
struct LegendreRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

LegendreRule gauss_legendre(int order);

}  // namespace hdecay
