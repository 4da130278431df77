#pragma once

// Test-side oracles kept independent of the library code paths: double-double
// arithmetic for cancellation-free moment sums, the monomial form of the
// Hermite functions, and a brute-force composite Simpson rule.  Each carries
// several digits more accuracy than the tolerance it backs.

#include <cmath>
#include <vector>

namespace oracle {

// Double-double value hi + lo with |lo| <= ulp(hi)/2.
struct dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd renorm(double hi, double lo) {
    double s = hi + lo;
    return {s, lo - (s - hi)};
}

inline dd add(dd x, dd y) {
    dd s = two_sum(x.hi, y.hi);
    return renorm(s.hi, s.lo + x.lo + y.lo);
}

inline dd add(dd x, double y) { return add(x, dd{y, 0.0}); }

inline dd mul(dd x, dd y) {
    dd p = two_prod(x.hi, y.hi);
    return renorm(p.hi, p.lo + x.hi * y.lo + x.lo * y.hi);
}

inline dd mul(dd x, double y) { return mul(x, dd{y, 0.0}); }

inline dd neg(dd x) { return {-x.hi, -x.lo}; }

inline dd sub(dd x, dd y) { return add(x, neg(y)); }

// One Newton step on top of the correctly rounded double root.
inline dd dd_sqrt(dd x) {
    double s0 = std::sqrt(x.hi);
    dd s{s0, 0.0};
    dd err = sub(x, mul(s, s));
    return add(s, err.hi / (2.0 * s0));
}

inline double to_double(dd x) { return x.hi + x.lo; }

// pi to double-double precision.
inline dd dd_pi() { return {3.141592653589793116, 1.2246467991473532e-16}; }

// integral x^{2k} e^{-x^2} dx = sqrt(pi) (2k-1)!! / 2^k.
inline dd gaussian_moment(int k) {
    dd m = dd_sqrt(dd_pi());
    for (int j = 1; j <= k; ++j) m = mul(m, (2.0 * j - 1.0) / 2.0);
    return m;
}

// phi_n(x) through the monomial coefficients of the degree-n Hermite
// polynomial (integer recurrence, exact in dd through n ~ 40) with the
// normalization attached in long double.
inline double phi_monomial(int n, double x) {
    std::vector<std::vector<dd>> h(static_cast<std::size_t>(n) + 1);
    h[0] = {dd{1.0, 0.0}};
    if (n >= 1) h[1] = {dd{0.0, 0.0}, dd{2.0, 0.0}};
    for (int m = 2; m <= n; ++m) {
        h[m].assign(static_cast<std::size_t>(m) + 1, dd{0.0, 0.0});
        for (int k = 0; k < m; ++k) h[m][k + 1] = mul(h[m - 1][k], 2.0);
        for (int k = 0; k <= m - 2; ++k)
            h[m][k] = add(h[m][k], mul(h[m - 2][k], -2.0 * (m - 1)));
    }
    dd p{0.0, 0.0};
    for (int k = n; k >= 0; --k) p = add(mul(p, x), h[n][k]);
    const long double xl = x;
    const long double log_norm = -xl * xl / 2.0L
        - 0.5L * (n * 0.693147180559945309417L + lgammal(static_cast<long double>(n) + 1.0L))
        - 0.25L * 1.144729885849400174143L;  // log pi
    return static_cast<double>((static_cast<long double>(p.hi) + p.lo) * expl(log_norm));
}

// Composite Simpson in long double; panels must be even.
template <class F>
long double simpson(F f, long double a, long double b, int panels) {
    const long double h = (b - a) / panels;
    long double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + h * i) * ((i & 1) ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

inline double rel_err(double got, double want) {
    const double denom = std::fabs(want);
    if (denom == 0.0) return std::fabs(got);
    return std::fabs(got - want) / denom;
}

}  // namespace oracle
