#pragma once

// The argument S(T) = (1/pi) arg zeta(1/2 + iT) and its antiderivative
//   S1(T) = int_0^T S(t) dt + C,   C = (1/pi) int_{1/2}^inf log|zeta(sigma)| dsigma.
//
// S(T) comes from two independent routes that the tests play against each
// other:
//   - path tracking: continuous variation along 2 -> 2+iT -> 1/2+iT,
//     accumulating principal argument differences, each step turning by
//     less than pi/2 (else the step is halved; 20 halvings then
//     tracking_error). The telescoped sum depends only on the endpoint
//     values, so interior samples may use a cheap truncated Dirichlet sum:
//     they only steer the branch.
//   - zero counting: the Riemann-von Mangoldt identity
//     S(T) = N(T) - theta(T)/pi - 1.
//
// S1(T) likewise:
//   - strip integral (exact; integrating log|zeta| to infinity is what
//     absorbs the additive constant C):
//     pi S1(T) = int_{1/2}^inf log|zeta(sigma+iT)| dsigma,
//     truncated at `cutoff` with tail bound 2^{1-cutoff}/log 2.
//   - direct integration of S: on [10, T] the counting identity integrates
//     exactly, jump by jump,
//     int_10^T S = sum_{10<gamma<=T} (T-gamma) - (1/pi) int_10^T theta - (T-10),
//     and [0, 10] (which holds no ordinates) is Simpson over path samples.
//
// Within 1e-9 of an ordinate every S route returns the half-sum
// (S(T+1e-6) + S(T-1e-6)) / 2.

#include "s1lab/errors.hpp"

namespace s1lab::argument {

enum class Method { path_tracking, zero_counting };

struct ArgumentValue {
    double t;
    double s_value;
    Method method;
    double est_error;
};

struct S1Value {
    double t;
    double s1_value;
    double tail_cutoff;
    double est_error;
};

struct ArgumentConstants {
    double C;
};

ArgumentValue s_via_path(double T);      // 10 <= T <= 1e6
ArgumentValue s_via_counting(double T);  // 10 <= T <= 1e5

S1Value s1_strip(double T, double cutoff);  // 10 <= T <= 1e6, cutoff in [3, 40]
S1Value s1_via_integral(double T);          // 10 <= T <= 2000

// Computed once on first use (deterministic, bit-identical across runs),
// declared error below 1e-8.
ArgumentConstants constant_C();

namespace detail {

// Path-tracked S for any T >= 0 without the near-ordinate gate; the t = 0
// limit is -1 (zeta is negative real just right of sigma = 1/2).
double s_path_raw(double T, double* est_error);

// Strip integral at caller-chosen tolerance; T >= 0 (t = 0 serves the
// constant C, and smoothing exploits the evenness S1(-x) = S1(x)).
S1Value s1_strip_at(double T, double cutoff, double rel_tol);

} // namespace detail

} // namespace s1lab::argument
