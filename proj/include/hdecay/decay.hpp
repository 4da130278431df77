#pragma once

#include <vector>

#include "hdecay/coefficients.hpp"
#include "hdecay/constants.hpp"

namespace hdecay {

// Weighted least-squares fit of log|coef_n| = c0 + p log n + R n on even
// nonzero entries (weights proportional to n, window n in [20, n_hi]), plus
// the excess of the sequence over the decay envelope
//   log C_fit - (1/4) log n + (n/2) log A
// taken over all even nonzero entries.
struct EnvelopeFit {
    int n_lo = 0, n_hi = 0;
    double fitted_rate = 0.0;      // R: log-magnitude slope per unit n; target (1/2) log A
    double fitted_power = 0.0;     // p: polynomial exponent; target -1/4
    double fitted_constant = 0.0;  // e^{c0}
    double max_envelope_excess = 0.0;
};

// Throws InsufficientDataError below 10 nonzero entries; requires n_max >= 40.
EnvelopeFit theorem13_envelope(const CoefficientSequence& seq, const GaussianEnvelopePair& pair);

// Limit estimate of (log|coef_{n+2}| - log|coef_n|)/2 over even entries with
// Richardson extrapolation (s_k = k t_k - (k-1) t_{k-1} removes the known
// 1/(4k) ratio correction), averaged over the last third.  Converges to
// (1/2) log A on the extremal family.  Throws InsufficientDataError below
// 10 nonzero entries.
double rate_estimate(const CoefficientSequence& seq);

// Remainder after converting log[n^{-1/2} (Ae/2n)^{n/2}] plus the coefficient
// relation factor into the envelope form log[n^{-1/4} A^{n/2}].  Independent
// of A (the (n/2) log A terms cancel); tends to (1/4) log(2 pi^2).
double stirling_conversion(int n, double A);

// Limit of |<f, phi_n>| n^{1/4} A^{-n/2} over even n for the extremal member,
// reported next to the nominal (2/pi^3)^{1/4} without asserting equality
// (the two differ by a constant prefactor; the rate and power are what the
// estimate pins down).
struct SharpnessReport {
    double constant_estimate;
    double nominal_constant;  // (2/pi^3)^{1/4} ~ 0.504
};

SharpnessReport sharpness_report(const GaussianEnvelopePair& pair, int n_max);

// Builds f = sum_n e^{-2nt} phi_n (truncated at n_max) and reports the
// smallest C with |f(x)| <= C exp(-tanh(2rt) x^2/2) on the grid.
// Throws InsufficientTruncationError when the tail e^{-2 n_max t} > 1e-14.
struct ReconstructionWitness {
    double c_witness;
    double target_exponent;  // tanh(2rt)
};

ReconstructionWitness eq1_reconstruction_check(double t, double r, int n_max,
                                               const std::vector<double>& x_grid);

}  // namespace hdecay
