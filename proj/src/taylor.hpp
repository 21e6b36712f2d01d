#pragma once

// Fixed-order truncated Taylor arithmetic, just enough to differentiate the
// Riemann-Siegel shape function Psi through ninth order without transcribing
// coefficient tables. Series are in a local variable d around an expansion
// point; c[k] is the coefficient of d^k.

#include <array>
#include <cmath>

namespace s1lab::taylor {

inline constexpr int ORDER = 20;

struct Series {
    std::array<double, ORDER + 1> c{};
};

inline Series shift_down(const Series& a) {
    // divide by x, assuming a.c[0] == 0
    Series r;
    for (int k = 0; k < ORDER; ++k) r.c[k] = a.c[k + 1];
    r.c[ORDER] = 0.0;
    return r;
}

inline Series divide(const Series& num, const Series& den) {
    Series r;
    for (int k = 0; k <= ORDER; ++k) {
        double s = num.c[k];
        for (int j = 0; j < k; ++j) s -= r.c[j] * den.c[k - j];
        r.c[k] = s / den.c[0];
    }
    return r;
}

// sin/cos of a series with zero constant term, by the ODE recurrence
// S' = u' C, C' = -u' S.
inline void sin_cos_reduced(const Series& u, Series& s, Series& c) {
    s.c.fill(0.0);
    c.c.fill(0.0);
    c.c[0] = 1.0;
    for (int k = 0; k < ORDER; ++k) {
        double ds = 0.0, dc = 0.0;
        for (int j = 0; j <= k; ++j) {
            double du = (j + 1) * u.c[j + 1];
            ds += du * c.c[k - j];
            dc -= du * s.c[k - j];
        }
        s.c[k + 1] = ds / (k + 1);
        c.c[k + 1] = dc / (k + 1);
    }
}

inline Series cos_series(const Series& u) {
    Series red = u;
    red.c[0] = 0.0;
    Series s, c;
    sin_cos_reduced(red, s, c);
    const double c0 = std::cos(u.c[0]), s0 = std::sin(u.c[0]);
    Series r;
    for (int k = 0; k <= ORDER; ++k) r.c[k] = c0 * c.c[k] - s0 * s.c[k];
    return r;
}

inline Series sin_series_reduced_only(const Series& u) {
    Series s, c;
    sin_cos_reduced(u, s, c);
    return s;
}

// k-th derivative of the function represented by `a` (series around x0),
// evaluated at offset d from x0: Horner over the coefficients j!/(j-k)! c[j].
inline double derivative_at(const Series& a, int k, double d) {
    double acc = 0.0;
    for (int j = ORDER; j >= k; --j) {
        double coef = a.c[j];
        for (int i = 0; i < k; ++i) coef *= (j - i);
        acc = acc * d + coef;
    }
    return acc;
}

} // namespace s1lab::taylor
