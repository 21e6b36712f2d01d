#pragma once

/*
 * Fejer-kernel smoothing of S1 and the explicit-formula identity behind it.
 *
 * The kernel is phi(u) = (sin u / u)^2 with total mass pi and Fourier
 * transform supported on [-tau, tau] after the rescaling f(z) = phi(tau z/2):
 *
 *     fhat(x) = (2 pi / tau) * max(0, 1 - |x|/tau).
 *
 * The smoothed average over a window of half-width H (in the t variable) is
 *
 *     A(t) = integral_{-H tau/2}^{H tau/2} phi(u) S1(t + 2u/tau) du,
 *
 * where S1 is the strip integral (1/pi) int_{1/2}^inf log|zeta(sigma+ix)| dsigma,
 * extended evenly to x < 0.  That normalization of S1 carries the additive
 * constant c0 = S1(0); the explicit formula applies to S1 - c0 and reads
 *
 *     (2/tau) int phi(u) (S1 - c0)(t + 2u/tau) du
 *        = sum_{n <= e^tau} Lambda(n)/(sqrt n log^2 n) fhat(log n) cos(t log n) / pi
 *          - c0 fhat(0) - P(t, tau),
 *
 * with no contribution from zeros off the critical line in the verified
 * range, and P the pole correction
 *
 *     P(t, tau) = 2 int_{1/2}^1 int_0^{1-sigma} Re f(-t - xi) dx dsigma.
 *
 * Since fhat(log n) = (2 pi/tau)(1 - log n/tau) on the support, the n-sum is
 * exactly the weighted prime-power sum of the dirichlet module.
 * lemma1_identity_check assembles both sides with truncation-matched kernel
 * mass and reports the residual together with a rigorous tail bound derived
 * from the envelope |S1(x)| <= 2 log(|x| + 10) + 2.
 *
 * S1 samples inside the smoothing quadrature are memoized on a 1e-3-spaced
 * grid with 4-point cubic interpolation; S1 has slope jumps at the zero
 * ordinates, so stencils that straddle one contribute O(2.5e-4) pointwise,
 * which integrates to well under the 1e-3 error budget.
 */

#include <functional>

namespace s1lab::smoothing {

// Smoothing window: kernel cutoff tau, window half-width H, center t.
struct FejerParams {
    double tau = 0.0;
    double H = 0.0;
    double t = 0.0;
};

// Both sides of the smoothed identity at one parameter choice.
// residual = lhs - (rhs_sum - rhs_constant - rhs_pole); the zero-ordinate
// sum is identically zero in the supported height range.
struct IdentityReport {
    double lhs = 0.0;
    double rhs_sum = 0.0;
    double rhs_pole = 0.0;
    double rhs_constant = 0.0;
    double residual = 0.0;
    double tail_bound = 0.0;
    double quadrature_error = 0.0;
};

// (sin u / u)^2 with the removable singularity filled in by series.
double fejer(double u);

// (2 pi / tau) * max(0, 1 - |x|/tau).  pre: tau > 0.
double fejer_hat(double x, double tau);

// Re (sin w / w)^2 at w = z_re + i z_im.  The real restriction equals
// fejer(z_re) exactly.  pre: |z_im| <= 700 (overflow guard).
double fejer_complex_sq(double z_re, double z_im);

// A(t) for the module's S1 normalization (the one s1_strip returns).
// pre: FejerParams valid, t + H <= 1e6.
double smoothed_s1(const FejerParams& p);

// P(t, tau): twice the triangle integral of Re f(-t - xi), by fixed-order
// product Gauss rules (error well below 1e-8).  pre: t >= 10, tau > 0.
double pole_term(double t, double tau);

// Evaluates both sides of the identity and the residual with bounds.
// pre: FejerParams valid, 10 <= t <= 1e5, t + H <= 1e6.
IdentityReport lemma1_identity_check(const FejerParams& p);

namespace detail {

// Same window quadrature with an arbitrary field in place of S1; the hook
// behind smoothed_s1 and the kernel-mass checks.
double smoothed_average(const FejerParams& p,
                        const std::function<double(double)>& field);

}  // namespace detail

}  // namespace s1lab::smoothing
