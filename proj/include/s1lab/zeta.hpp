#pragma once

// Riemann zeta machinery on the closed strip 1/2 <= sigma <= 40.
//
// EVALUATION
//   Euler-Maclaurin with N ~ 0.45|s| nodes:
//     zeta(s) = sum_{n<N} n^-s  +  N^(1-s)/(s-1)  +  N^-s/2
//             + sum_{k=1..K} B_{2k}/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1) + R_K,
//     |R_K| <= |first omitted term| * |s+2K+1|/(sigma+2K+1).
//   The correction terms decay like (|s|/(2 pi N))^(2k), so with K <= 14 the
//   remainder lands far below 1e-13 at this N. When sigma is large enough
//   that the plain Dirichlet sum reaches the target with fewer nodes, the
//   plain sum plus its integral tail bound is used instead.
//
//   Phases t*log(n) are reduced mod 2*pi in 80-bit arithmetic. The declared
//   error bound adds the phase-rounding contribution with the rms model
//   4 * dphi * sqrt(sum n^-2sigma); for t <= 1e6 the total declared bound
//   stays below 1e-10 * (1 + |zeta|). Above that the bound simply grows and
//   is reported as computed.
//
// CRITICAL LINE, LARGE t
//   Above t = 1e4, hardy_z switches to the Riemann-Siegel expansion: the main
//   sum to nu = floor(sqrt(t/2pi)) plus correction terms C0..C3 built from
//   derivatives of
//     Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
//   evaluated with truncated Taylor arithmetic (the removable singularities
//   at p = 1/4, 3/4 are handled by series division). The tests cross-check
//   this path against Euler-Maclaurin on [1e4, 5e4].
//
// THETA
//   rs_theta(t) = t/2 log(t/2pi) - t/2 - pi/8 + 1/(48 t) + 7/(5760 t^3)
//                 + 31/(80640 t^5),
//   absolute error below 127/(430080 t^7) * 2 for t >= 10 (3e-11 at t = 10).

#include <complex>
#include <memory>
#include <vector>

#include "s1lab/errors.hpp"

namespace s1lab::zeta {

// 1/2 <= sigma <= 40, 0 <= t <= 1e8.
struct StripPoint {
    double sigma;
    double t;
};

struct EvalResult {
    std::complex<double> value;
    double abs_error_bound;
};

struct LogAbsResult {
    double value;     // log|zeta|, -inf when abs_zeta underflows to 0
    double abs_zeta;
    bool singular;    // |zeta| < 1e-30; see note below
};

// Near-zero sentinel threshold for log_abs_zeta. At double precision a simple
// zero cannot push |zeta| below ~1e-16 at a representable t, so the flag is a
// guard for quadrature callers rather than something test grids can trip.
inline constexpr double k_singular_threshold = 1e-30;

EvalResult zeta(const StripPoint& p);
LogAbsResult log_abs_zeta(const StripPoint& p);

double rs_theta(double t);        // t >= 10
double rs_theta_error(double t);

double hardy_z(double t);         // t >= 10
double hardy_z_error(double t);

// All zeros of Z in (t_lo, t_hi], each located by bisection to a bracket of
// width <= 1e-9 (the midpoint is returned). 10 <= t_lo < t_hi <= 1e6; ranges
// holding more than 2e5 zeros are refused with resource_error.
std::vector<double> zero_ordinates(double t_lo, double t_hi);

// Number of zeros of Z in (10, T]. Shares the block cache with
// zero_ordinates but skips the per-zero refinement, so counting stays cheap.
long zero_count(double T);

// True when Z changes sign inside [T - width, T + width].
bool near_ordinate(double T, double width);

// Shares the phase table cos/sin(t log n) across many sigma evaluations at
// one height t; this is what the strip integrals use.
class FixedHeightEvaluator {
public:
    explicit FixedHeightEvaluator(double t, double sigma_max = 40.0);
    EvalResult eval(double sigma) const;
    LogAbsResult log_abs(double sigma) const;
    double t() const { return t_; }

private:
    double t_;
    double sigma_max_;
    int n_em_;
    std::vector<double> lnn_, cos_, sin_;
};

namespace detail {

// Unrestricted Euler-Maclaurin evaluation, any s != 1 (used by the conjugate
// symmetry tests with negative imaginary part).
EvalResult euler_maclaurin(std::complex<double> s);

// Riemann-Siegel Z with corrections C0..C3; intended for t >= 1e4.
double rs_z(double t);
double rs_z_error(double t);

} // namespace detail

} // namespace s1lab::zeta
