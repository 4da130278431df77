#include "hdecay/hermite.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "hdecay/errors.hpp"

namespace hdecay {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

// phi_0..phi_n at x, descaled.  Long double holds ~1e-4950, so every entry of
// interest (|x| <= 45, n <= 512) comes back finite.
std::vector<long double> phi_values(int n_max, long double x) {
    std::vector<long double> out(n_max + 1);
    const long double log_phi0 = -0.25L * std::log(kPi) - 0.5L * x * x;
    int e2 = static_cast<int>(std::floor(log_phi0 / kLn2));
    long double p0 = std::exp(log_phi0 - static_cast<long double>(e2) * kLn2);
    out[0] = std::ldexp(p0, e2);
    if (n_max == 0) return out;
    long double p1 = x * std::sqrt(2.0L) * p0;
    out[1] = std::ldexp(p1, e2);
    for (int k = 1; k < n_max; ++k) {
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
        out[k + 1] = std::ldexp(p1, e2);
    }
    return out;
}

// Neumaier-compensated sum; with long double terms the effective accumulation
// noise sits near 1e-19 absolute per unit of summed mass.
struct CompensatedSum {
    long double s = 0.0L;
    long double c = 0.0L;

    void add(long double v) {
        const long double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    long double total() const { return s + c; }
};

}  // namespace

std::vector<double> hermite_values(int n_max, double x) {
    if (n_max < 0 || n_max > 512)
        throw std::domain_error("hermite_values supports n_max in [0, 512], got " +
                                std::to_string(n_max));
    const std::vector<long double> v = phi_values(n_max, x);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
    return out;
}

CoefficientSequence hermite_coefficients(const TestFunction& f, int n_max,
                                         const QuadratureRule& rule,
                                         bool allow_low_order) {
    if (n_max < 0 || n_max > 480)
        throw std::domain_error("hermite_coefficients supports n_max in [0, 480], got " +
                                std::to_string(n_max));
    if (!allow_low_order && rule.order < 2 * n_max + 64)
        throw QuadraturePolicyError("quadrature order " + std::to_string(rule.order) +
                                    " below the required 2*n_max+64 = " +
                                    std::to_string(2 * n_max + 64));

    const ComplexGaussian* g = std::get_if<ComplexGaussian>(&f);
    const std::complex<long double> zl =
        g ? std::complex<long double>(g->z.real(), g->z.imag())
          : std::complex<long double>(0.0L, 0.0L);

    std::vector<CompensatedSum> acc_re(n_max + 1), acc_im(n_max + 1);
    for (int i = 0; i < rule.order; ++i) {
        const long double x = rule.nodes_ld[i];
        const long double W = std::exp(rule.log_boosted[i]);
        std::complex<long double> fx;
        if (g) {
            fx = std::exp(-zl * (x * x) / 2.0L);
        } else {
            const std::complex<double> fd = eval(f, static_cast<double>(x));
            fx = {static_cast<long double>(fd.real()), static_cast<long double>(fd.imag())};
        }
        const std::complex<long double> wf = W * fx;
        const std::vector<long double> phis = phi_values(n_max, x);
        for (int n = 0; n <= n_max; ++n) {
            acc_re[n].add(wf.real() * phis[n]);
            acc_im[n].add(wf.imag() * phis[n]);
        }
    }

    CoefficientSequence seq;
    seq.kind = SequenceKind::hermite_inner_product;
    seq.entries.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        const long double re = acc_re[n].total();
        const long double im = acc_im[n].total();
        const long double mag = std::hypot(re, im);
        if (mag == 0.0L) {
            seq.set_zero(n);
        } else {
            seq.set(n, LogComplex{static_cast<double>(std::log(mag)),
                                  normalize_phase(static_cast<double>(std::atan2(im, re)))});
        }
    }
    return seq;
}

double fourier_eigen_check(int n, const QuadratureRule& rule) {
    if (n < 0 || n > 64)
        throw std::domain_error("fourier_eigen_check supports n in [0, 64], got " +
                                std::to_string(n));

    // W_i phi_n(x_i), fixed over the xi sweep.
    std::vector<long double> v(rule.order);
    for (int i = 0; i < rule.order; ++i)
        v[i] = std::exp(rule.log_boosted[i]) * phi_values(n, rule.nodes_ld[i])[n];

    const long double inv_root_2pi = 1.0L / std::sqrt(2.0L * kPi);
    long double worst = 0.0L;
    for (int j = 0; j <= 64; ++j) {
        const long double xi = -8.0L + 0.25L * j;
        CompensatedSum re, im;
        for (int i = 0; i < rule.order; ++i) {
            const long double t = xi * rule.nodes_ld[i];
            re.add(v[i] * std::cos(t));
            im.add(-v[i] * std::sin(t));
        }
        const long double fre = inv_root_2pi * re.total();
        const long double fim = inv_root_2pi * im.total();
        const long double phi = phi_values(n, xi)[n];
        long double tre = 0.0L, tim = 0.0L;
        switch (n & 3) {  // (-i)^n
            case 0: tre = phi; break;
            case 1: tim = -phi; break;
            case 2: tre = -phi; break;
            case 3: tim = phi; break;
        }
        worst = std::max(worst, std::hypot(fre - tre, fim - tim));
    }
    return static_cast<double>(worst);
}

}  // namespace hdecay
