#pragma once

/*
 * Truncated Dirichlet sums over primes with Fejer-type weights.
 *
 * For a cutoff parameter tau > 0 the basic object is
 *
 *     W(t) = sum_{p <= e^tau} cos(t log p) / (sqrt(p) log p) * (1 - log p / tau),
 *
 * the sum running over primes.  The companion sum runs over all prime powers
 * n = p^j <= e^tau, weighted by the von Mangoldt function Lambda(n) = log p:
 *
 *     F(t) = (2/tau) * sum_{n <= e^tau} Lambda(n) / (sqrt(n) log^2 n)
 *                      * (1 - log n / tau) * cos(t log n).
 *
 * The j = 1 slice of F is exactly (2/tau) W, so F - (2/tau) W collects the
 * prime-power corrections (j >= 2), which are O(1/tau) uniformly in t.
 *
 * Evaluation on a uniform grid t0 + i*dt uses one rotation recurrence per
 * prime, i.e. (cos, sin) of the phase advanced by multiplying with
 * (cos(dt log p), sin(dt log p)).  The recurrence is re-anchored from an
 * 80-bit reduced phase every 2^14 grid steps, which keeps the accumulated
 * drift below 1e-10 while staying O(1) per (prime, point) pair.
 */

#include <cstdint>
#include <vector>

#include "s1lab/grid.hpp"

namespace s1lab::dirichlet {

// One prime power n = p^j together with Lambda(n) = log p.
struct PrimePower {
    std::int64_t n = 0;
    double lambda = 0.0;
};

// Precomputed table of primes and prime powers up to e^tau, with the
// evaluation weights cached so repeated sums cost one cos per term.
struct PrimePowerTable {
    double tau = 0.0;
    std::vector<std::int64_t> primes;       // ascending primes p <= e^tau
    std::vector<PrimePower> prime_powers;   // ascending n = p^j <= e^tau

    // Derived data, filled by build_table.
    std::vector<long double> prime_log;     // log p, 80-bit for phase work
    std::vector<double> prime_weight;       // (1 - log p/tau)/(sqrt(p) log p)
    std::vector<long double> power_log;     // log n over prime_powers
    std::vector<double> power_weight;       // Lambda/(sqrt(n) log^2 n)*(1 - log n/tau)
};

// Sieves primes and prime powers up to e^tau and attaches the weights.
// pre: 0 < tau <= 30 (values below log 2 give an empty table).
// When settings().cache_dir is set, the (n, p) list is read from / written
// to a text cache keyed by tau; results are identical with caching disabled.
// Throws domain_error for tau outside (0, 30], resource_error when e^tau
// exceeds the sieve budget of 2.5e8.
PrimePowerTable build_table(double tau);

// W(t) as a compensated sum over the table's primes in ascending order.
double w_point(double t, const PrimePowerTable& table);

// W sampled on the grid t0 + i*dt, i = 0..n-1, via per-prime rotation
// recurrences.  Matches w_point at every node to well under 1e-9.
// pre: n >= 1, dt > 0.  Throws resource_error when n * #primes > 1e11.
GridFunction w_grid(double t0, double dt, std::int64_t n,
                    const PrimePowerTable& table);

// F(t): the full Lambda-weighted prime-power sum, including the 2/tau factor.
double full_lambda_sum(double t, const PrimePowerTable& table);

}  // namespace s1lab::dirichlet
