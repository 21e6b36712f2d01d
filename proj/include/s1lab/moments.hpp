#pragma once

// Moments of grid functions over [T, T+H] and the closed-form moment bounds.
//
//   even moment: int_T^{T+H} g(t)^{2k} dt        (k in [1, 12])
//   odd moment:  int_T^{T+H} g(t)^{2k+1} dt
//
// Both are composite Simpson sums over the existing grid nodes (no
// resampling; high powers of interpolated values would bias the integral).
// The declared error is the Richardson comparison |S_h - S_{2h}| / 15
// between the full grid and the every-other-node subgrid.
//
// Closed-form bounds, with c0 = 1/(5 sqrt(10 e)):
//   lower bound:   (c0 sqrt(k)/log k)^{2k} H - e^{3 k tau},
//                  valid under (2 k log k)^2 < e^{4 tau / 5} (hypothesis flag)
//   odd bound:     e^{3 k tau + (3/2) tau}
//   remainder rhs: H (25^m + (log T)^3 (50 tau m^2 / (eps^3 log T))^m),
//                  m odd, 0 < eps < 1/1000, flagged by m tau < (eps/10) log T
// All exponentials are carried in log space; the plain `value` fields
// saturate to +-inf past the double range while `log_*` stay finite.
//
// The certification test: if
//   1)  int |W|^{2k}    >= H M^{2k}
//   2) |int  W^{2k+1}|  <= (1/2) H M^{2k+1}
//   3)  int |R|^{2k+1}  <  H (M/2)^{2k+1}
// all hold, then max of +-(W+R) over [T, T+H] is at least M/8 for both
// signs. The third integral is caller-supplied (it is identically zero in
// any height range where the zeros are verified on the critical line).

#include <vector>

#include "s1lab/errors.hpp"
#include "s1lab/grid.hpp"

namespace s1lab::moments {

struct MomentPair {
    double even_value;
    double even_error;
    double odd_value;
    double odd_error;
};

// Both moments of g over [T, T+H] in one pass. T and T+H must sit on grid
// nodes (1e-6 alignment) spanning at least 8 panels, an even number of them.
MomentPair compute_moments(const GridFunction& g, int k, double T, double H);

double even_moment(const GridFunction& g, int k, double T, double H);
double odd_moment(const GridFunction& g, int k, double T, double H);

struct Lemma4Lower {
    double value;            // first_term - e^{3 k tau}, +-inf on overflow
    double log_first_term;   // log((c0 sqrt(k)/log k)^{2k} H)
    double log_second_term;  // 3 k tau
    bool hypothesis_ok;      // (2 k log k)^2 < e^{4 tau / 5}
};

// k >= 2 (the constant involves log k), tau > 0, H > 0. A violated
// hypothesis only clears the flag; the value is still computed.
Lemma4Lower lemma4_lower_bound(int k, double tau, double H);

struct LogBound {
    double log_value;  // exact exponent, always finite
    double value;      // exp(log_value), +inf past the double range
};

// e^{3 k tau + (3/2) tau}; k >= 1, tau > 0.
LogBound lemma4_odd_bound(int k, double tau);

struct Lemma3Bound {
    double value;      // H (25^m + (log T)^3 q^m), +inf on overflow
    double log_value;  // log of the same, always finite
    double log_term1;  // log(H 25^m)
    double log_term2;  // log(H (log T)^3 q^m)
    bool hypothesis_mtau_ok;  // m tau < (eps/10) log T
    bool hypothesis_k_ok;     // k = (m-1)/2 >= 2
};

// m odd >= 3, 0 < eps < 1/1000, tau > 0, T > 1, H > 0.
Lemma3Bound lemma3_rhs(int m, double tau, double eps, double T, double H);

// Same bound from log T and log H directly, for heights where T itself
// does not fit in a double.
Lemma3Bound lemma3_rhs_log(int m, double tau, double eps, double log_T,
                           double log_H);

struct Lemma5Verdict {
    bool even_lower_ok;  // condition 1
    bool odd_upper_ok;   // condition 2
    bool r_upper_ok;     // condition 3
    double M;
    bool conclusion_available;  // all three conditions
};

// Evaluates the three conditions on computed moments of wr; r_moment is the
// caller's bound on int |R|^{2k+1} (>= 0, zero in the verified regime).
Lemma5Verdict lemma5_certify(const GridFunction& wr, int k, double M, double T,
                             double H, double r_moment);

struct MomentReport {
    double T;
    double H;
    int k;
    int m;  // 2k+1
    double even_moment;
    double odd_moment;
    double lemma4_lower;      // NaN when k < 2
    double lemma4_odd_bound;  // +inf past the double range
    double quadrature_error;  // max of the two Richardson estimates
};

// Moments of g plus the closed-form bounds at the given prime cutoff
// parameter; requires dt <= pi/(4 tau), eight samples per oscillation of
// the fastest prime term.
MomentReport moment_report(const GridFunction& g, int k, double tau, double T,
                           double H);

// Batch variant; the reports are computed concurrently and the output order
// matches ks.
std::vector<MomentReport> moment_reports(const GridFunction& g,
                                         const std::vector<int>& ks,
                                         double tau, double T, double H);

} // namespace s1lab::moments
