#pragma once

#include <utility>

namespace hdecay {

// Class parameters: |f(x)| <= C e^{-a x^2/2} and |f^(xi)| <= C e^{-b xi^2/2}.
struct GaussianEnvelopePair {
    double a;
    double b;
    double c_env = 1.0;  // the domination constant C; optional, defaults to 1
};

// Derived quantities of the decay estimate.  All angles in radians.
// mu, nu in (-1,1); A in (0,1); tau in (-pi/4, pi/4); theta0 < tau + pi/4 < theta1,
// both in (0, pi/2); m = min(a, b).
struct DecayConstants {
    double a, b;
    double mu, nu;
    double A;
    double tau;
    double theta0, theta1;
    double m;
    bool near_degenerate = false;  // ab within 1e-12 of the a*b = 1 boundary
};

// Residuals of the six defining identities of DecayConstants:
//   A^2 = (a+b-2ab)/(a+b+2ab)                  -> rate_ab
//   A^2 = (mu+nu-2 mu nu)/(2-mu-nu)            -> rate_munu
//   A sin(2θ0-2τ) = mu + (1-mu) sin^2 θ0       -> angle0_sin
//   2A cos(2θ0-2τ) = (1-mu) sin 2θ0            -> angle0_cos
//   A sin(2θ1-2τ) = nu + (1-nu) cos^2 θ1       -> angle1_sin
//   2A cos(2θ1-2τ) = -(1-nu) sin 2θ1           -> angle1_cos
struct IdentityResiduals {
    double rate_ab, rate_munu;
    double angle0_sin, angle0_cos;
    double angle1_sin, angle1_cos;
    double max_abs() const;
};

// Residuals of the four relations under swapping (a,b) -> (b,a):
// A invariant, tau flips sign, theta0/theta1 reflect through pi/4.
struct SymmetryResiduals {
    double rate, tau, theta0, theta1;
    double max_abs() const;
};

// Moebius images mu = (1-a)/(1+a), nu = (1-b)/(1+b).  Throws std::domain_error
// for non-positive a or b.
std::pair<double, double> derive_mu_nu(const GaussianEnvelopePair& pair);

// The decay rate A in (0,1).  Throws OutOfRegimeError when a*b >= 1.
double decay_rate(const GaussianEnvelopePair& pair);

// Full constant solve: unique tau with 2tau in (-pi/2, pi/2) from its sine,
// and theta0/theta1 recovered from (cos, sin) pairs via atan2 (sin 2θ > 0
// pins the branch 2θ in (0, pi)).  Throws OutOfRegimeError when a*b >= 1.
DecayConstants solve_lemma21(const GaussianEnvelopePair& pair);

IdentityResiduals identity_residuals(const DecayConstants& dc);

SymmetryResiduals check_symmetry(const GaussianEnvelopePair& pair);

}  // namespace hdecay
