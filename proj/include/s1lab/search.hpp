#pragma once

// Parameter derivation and extreme-value search driver.
//
// From a height T and 0 < eps < 1/1000 the derivation fixes
//   H = T^{27/82 + eps},      tau = 2 log log H,
//   k = floor(eps^2/1000 (log T)^{2/3} / (log log T)^{4/3}),   m = 2k + 1,
//   M = sqrt(k)/(30 log k)                       (defined for k >= 2),
//   B = eps/(4000 pi) (log T)^{1/3} / (log log T)^{5/3},
// and audits the side conditions
//   k >= 2,
//   m tau < (eps/10) log T,
//   (2 k log k)^2 < e^{4 tau/5},
//   e^{3 k tau} < H^{1/2},
//   delta = 500 k^{3/2} (log log T)^2 / (eps^3 log T) < 1/60.
// The flags only turn true together at astronomically large heights; the
// smallest such log T is located by bisection and reported alongside them.
//
// The scan works the window [T-H, T+2H] at desk scale instead: the prime
// sum W is cheap on a dense grid and its Fejer-smoothed average tracks the
// integral of S1, so the top and bottom swings of W point at candidate
// extremes of S1. Each candidate is probed on a fine local S1 grid, a
// uniform coarse sweep guards against misses, and an optional refinement
// walk polishes the running best. Every probe lattice is anchored at T-H,
// so halving grid_dt only adds probe points and the reported extremes
// improve monotonically.

#include <cstdint>
#include <string>

#include "s1lab/errors.hpp"

namespace s1lab::search {

struct ConditionFlags {
    bool k_at_least_2;
    bool mtau;    // m tau < (eps/10) log T
    bool klogk;   // (2 k log k)^2 < e^{4 tau/5}
    bool e3ktau;  // e^{3 k tau} < H^{1/2}
    bool delta;   // delta < 1/60

    bool all() const { return k_at_least_2 && mtau && klogk && e3ktau && delta; }
};

struct SearchParams {
    double eps;
    double T;      // +inf when only log T is representable
    double log_T;
    double H;      // +inf when it overflows a double
    double log_H;
    double tau;
    std::int64_t k;
    std::int64_t m;
    double M;        // NaN when k < 2
    double bound_B;
    double delta;
    ConditionFlags flags;
    double feasible_log_T;  // smallest log T with all flags true
};

// T > e^e so log log T > 1. eps in (0, 1/1000), strict on both sides.
SearchParams derive_params(double T, double eps);

// Same derivation from log T directly; log_T in (e, 1e30].
SearchParams derive_params_log(double log_T, double eps);

// Smallest log T at which every flag holds, by bisection over [3, 1e26].
double feasible_log_t(double eps);

struct MethodTrace {
    double grid_dt;   // W-grid spacing (stage 1)
    double sweep_dt;  // uniform S1 sweep spacing (10 grid_dt)
    double local_dt;  // candidate-window spacing (grid_dt / 10)
    int candidates;   // W extrema windows probed
    int refine_rounds;
    std::int64_t s1_evaluations;
};

struct ExtremeValueCertificate {
    double t_lo;  // T - H
    double t_hi;  // T + 2H
    double sup_s1;
    double t_plus;
    double inf_s1;
    double t_minus;
    double bound_b;  // from (T, eps) by the recipe above
    bool passes_omega_check;  // sup_s1 >= B and -inf_s1 >= B
    MethodTrace trace;
};

// Scans [T-H, T+2H] for extreme values of S1. Requires T - H >= 0,
// T + 2H <= 1e6, grid_dt <= pi/(4 tau) and eps in (0, 1/1000).
ExtremeValueCertificate scan(double T, double H, double tau, double grid_dt,
                             bool refine, double eps = 1e-4);

struct RunConfig {
    double T = 0.0;
    double H = 0.0;
    double tau = 0.0;
    double grid_dt = 0.0;
    bool refine = false;
    double eps = 1e-4;
    int moments_k = 0;     // 0 disables the moments stage
    double lemma5_M = 0.0; // 0 picks M from the computed even moment
    std::string out_dir;
};

struct RunArtifacts {
    std::string report_path;  // report.json
    std::string csv_path;     // grid.csv: t, W(t), S1(t) per W-grid node
};

// Full driver: scan certificate, parameter audit, optional moment stage,
// and the two files. Byte-identical output for a fixed config regardless
// of the worker count; the timestamp sits alone on its own JSON line.
RunArtifacts run_report(const RunConfig& cfg);

} // namespace s1lab::search
