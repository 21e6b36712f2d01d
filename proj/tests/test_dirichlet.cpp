#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "s1lab/dirichlet.hpp"
#include "s1lab/errors.hpp"
#include "s1lab/parallel.hpp"
#include "s1lab/settings.hpp"

using s1lab::domain_error;
using s1lab::resource_error;
using s1lab::dirichlet::build_table;
using s1lab::dirichlet::full_lambda_sum;
using s1lab::dirichlet::PrimePower;
using s1lab::dirichlet::PrimePowerTable;
using s1lab::dirichlet::w_grid;
using s1lab::dirichlet::w_point;

namespace {

constexpr double k_pi = 3.14159265358979323846;

// Reference values computed with 30-digit arithmetic:
// W(0) and the full prime-power sum at t = 0 for tau = 1, where the table
// holds the single entry n = 2, and exact prime counts below e^8 and e^16.
constexpr double k_w0_tau1 = 0.31303266541024195735;
constexpr double k_full0_tau1 = 0.62606533082048391469;
constexpr std::int64_t k_primes_e8 = 429;
constexpr std::int64_t k_primes_e16 = 595341;

bool tables_equal(const PrimePowerTable& a, const PrimePowerTable& b) {
    if (a.tau != b.tau || a.primes != b.primes) return false;
    if (a.prime_powers.size() != b.prime_powers.size()) return false;
    for (std::size_t i = 0; i < a.prime_powers.size(); ++i) {
        if (a.prime_powers[i].n != b.prime_powers[i].n) return false;
        if (a.prime_powers[i].lambda != b.prime_powers[i].lambda) return false;
    }
    return a.prime_log == b.prime_log && a.prime_weight == b.prime_weight &&
           a.power_log == b.power_log && a.power_weight == b.power_weight;
}

}  // namespace

TEST_CASE("table contents at small tau") {
    PrimePowerTable t1 = build_table(1.0);
    CHECK(t1.tau == 1.0);
    REQUIRE(t1.primes == std::vector<std::int64_t>{2});
    REQUIRE(t1.prime_powers.size() == 1);
    CHECK(t1.prime_powers[0].n == 2);
    CHECK(t1.prime_powers[0].lambda == std::log(2.0));

    PrimePowerTable t3 = build_table(3.0);
    REQUIRE(t3.primes ==
            std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    std::vector<std::int64_t> ns;
    for (const PrimePower& pp : t3.prime_powers) ns.push_back(pp.n);
    REQUIRE(ns == std::vector<std::int64_t>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16,
                                            17, 19});
    for (const PrimePower& pp : t3.prime_powers) {
        if (pp.n == 4 || pp.n == 8 || pp.n == 16)
            CHECK(pp.lambda == std::log(2.0));
        if (pp.n == 9) CHECK(pp.lambda == std::log(3.0));
    }

    // Below log 2 no prime fits, so every container is empty.
    PrimePowerTable empty = build_table(std::log(2.0) - 0.01);
    CHECK(empty.primes.empty());
    CHECK(empty.prime_powers.empty());
    CHECK(w_point(123.0, empty) == 0.0);
    CHECK(full_lambda_sum(123.0, empty) == 0.0);
}

TEST_CASE("prime slice, ordering and counts") {
    PrimePowerTable t8 = build_table(8.0);
    CHECK(static_cast<std::int64_t>(t8.primes.size()) == k_primes_e8);

    const double limit = std::exp(8.0);
    std::vector<std::int64_t> slice;
    for (std::size_t i = 0; i < t8.prime_powers.size(); ++i) {
        const PrimePower& pp = t8.prime_powers[i];
        CHECK(static_cast<double>(pp.n) <= limit);
        if (i > 0) CHECK(pp.n > t8.prime_powers[i - 1].n);
        bool is_prime =
            std::binary_search(t8.primes.begin(), t8.primes.end(), pp.n);
        if (is_prime) {
            slice.push_back(pp.n);
            CHECK(pp.lambda == std::log(static_cast<double>(pp.n)));
        } else {
            // Proper power: the smallest divisor is its base, and dividing
            // it out repeatedly must reach exactly 1.
            std::int64_t d = 2;
            while (pp.n % d != 0) ++d;
            std::int64_t m = pp.n;
            while (m % d == 0) m /= d;
            CHECK(m == 1);
            CHECK(pp.lambda == std::log(static_cast<double>(d)));
        }
    }
    CHECK(slice == t8.primes);

    PrimePowerTable t16 = build_table(16.0);
    CHECK(static_cast<std::int64_t>(t16.primes.size()) == k_primes_e16);
    CHECK(t16.prime_powers.size() > t16.primes.size());
}

TEST_CASE("w_point against a plain reference sum") {
    PrimePowerTable t1 = build_table(1.0);
    CHECK(w_point(0.0, t1) == doctest::Approx(k_w0_tau1).epsilon(1e-15));

    PrimePowerTable t8 = build_table(8.0);
    // W(0) is the sum of the (positive) weights, so it dominates |W|.
    double w0 = w_point(0.0, t8);
    double wsum = 0.0;
    for (double w : t8.prime_weight) wsum += w;
    CHECK(w0 == doctest::Approx(wsum).epsilon(1e-14));

    double naive = 0.0;
    const double t = 1000.0;
    for (std::int64_t p : t8.primes) {
        double lp = std::log(static_cast<double>(p));
        double weight = (1.0 - lp / 8.0) / (std::sqrt(static_cast<double>(p)) * lp);
        naive += weight * std::cos(std::fmod(t * lp, 2.0 * k_pi));
    }
    CHECK(std::abs(w_point(t, t8) - naive) < 1e-12);

    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> pick(0.0, 5000.0);
    for (int i = 0; i < 25; ++i) {
        double ti = pick(rng);
        CHECK(std::abs(w_point(ti, t8)) <= w0 + 1e-15);
    }
}

TEST_CASE("full lambda sum and prime-power remainder") {
    PrimePowerTable t1 = build_table(1.0);
    CHECK(full_lambda_sum(0.0, t1) ==
          doctest::Approx(k_full0_tau1).epsilon(1e-15));

    for (double tau : {3.0, 8.0, 16.0}) {
        PrimePowerTable tbl = build_table(tau);
        for (double t : {0.0, 17.5, 1000.0}) {
            double full = full_lambda_sum(t, tbl);
            double head = (2.0 / tau) * w_point(t, tbl);

            // The gap is exactly the j >= 2 slice of the prime-power sum.
            double rest = 0.0;
            for (std::size_t i = 0; i < tbl.prime_powers.size(); ++i) {
                if (std::binary_search(tbl.primes.begin(), tbl.primes.end(),
                                       tbl.prime_powers[i].n))
                    continue;
                long double ph = fmodl(static_cast<long double>(t) *
                                           tbl.power_log[i],
                                       2.0L * 3.14159265358979323846264338L);
                rest += tbl.power_weight[i] * static_cast<double>(cosl(ph));
            }
            rest *= 2.0 / tau;
            CHECK(std::abs(full - head - rest) < 1e-12);
            CHECK(std::abs(full - head) < 1.3 / tau);
        }
    }
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
    PrimePowerTable t8 = build_table(8.0);
    const double t0 = 1000.0;
    const double dt = 0.013;
    const std::int64_t n = 100000;
    s1lab::GridFunction g = w_grid(t0, dt, n, t8);
    REQUIRE(g.size() == n);
    CHECK(g.t0 == t0);
    CHECK(g.dt == dt);
    CHECK(g.all_finite());

    std::mt19937 rng(4242);
    std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        std::int64_t idx = pick(rng);
        worst = std::max(worst,
                         std::abs(g.values[static_cast<std::size_t>(idx)] -
                                  w_point(g.node(idx), t8)));
    }
    // Indices around a renormalization boundary and at the far end, where
    // recurrence drift would show first.
    for (std::int64_t idx : {std::int64_t{16383}, std::int64_t{16384},
                             std::int64_t{49152}, n - 1}) {
        worst = std::max(worst,
                         std::abs(g.values[static_cast<std::size_t>(idx)] -
                                  w_point(g.node(idx), t8)));
    }
    CHECK(worst < 1e-9);

    s1lab::GridFunction single = w_grid(500.0, 0.25, 1, t8);
    REQUIRE(single.size() == 1);
    CHECK(std::abs(single.values[0] - w_point(500.0, t8)) < 1e-12);
}

TEST_CASE("grid values do not depend on the worker count") {
    PrimePowerTable t6 = build_table(6.0);
    const std::int64_t n = 50000;
    s1lab::GridFunction a = w_grid(10.0, 0.017, n, t6);
    s1lab::set_max_threads(3);
    s1lab::GridFunction b = w_grid(10.0, 0.017, n, t6);
    s1lab::set_max_threads(0);
    REQUIRE(a.size() == b.size());
    bool identical = true;
    for (std::int64_t i = 0; i < n; ++i)
        identical = identical && (a.values[static_cast<std::size_t>(i)] ==
                                  b.values[static_cast<std::size_t>(i)]);
    CHECK(identical);
}

TEST_CASE("short-interval average is square-root small") {
    // On [T, T+H] each cosine averages to a sine difference over H log p,
    // so the mean of W is far below its pointwise size.
    PrimePowerTable t8 = build_table(8.0);
    const double big_t = 1000.0;
    const double h = 10000.0;
    long double mean = 0.0L;
    for (std::size_t i = 0; i < t8.primes.size(); ++i) {
        long double lp = t8.prime_log[i];
        long double hi = sinl(fmodl((static_cast<long double>(big_t) + h) * lp,
                                    2.0L * 3.14159265358979323846264338L));
        long double lo = sinl(fmodl(static_cast<long double>(big_t) * lp,
                                    2.0L * 3.14159265358979323846264338L));
        mean += static_cast<long double>(t8.prime_weight[i]) * (hi - lo) /
                (static_cast<long double>(h) * lp);
    }
    double fsq = 0.0;
    for (double w : t8.prime_weight) fsq += w * w;
    CHECK(std::abs(static_cast<double>(mean)) <=
          3.0 * std::sqrt(fsq) / std::sqrt(h));
}

TEST_CASE("domain and resource errors") {
    CHECK_THROWS_AS(build_table(0.0), domain_error);
    CHECK_THROWS_AS(build_table(-2.0), domain_error);
    CHECK_THROWS_AS(build_table(30.5), domain_error);
    CHECK_THROWS_AS(build_table(std::nan("")), domain_error);
    // Within the stated tau range but past what the sieve budget allows.
    CHECK_THROWS_AS(build_table(20.0), resource_error);

    PrimePowerTable t8 = build_table(8.0);
    CHECK_THROWS_AS(w_point(std::nan(""), t8), domain_error);
    CHECK_THROWS_AS(full_lambda_sum(std::nan(""), t8), domain_error);
    CHECK_THROWS_AS(w_grid(0.0, 0.1, 0, t8), domain_error);
    CHECK_THROWS_AS(w_grid(0.0, 0.0, 10, t8), domain_error);
    CHECK_THROWS_AS(w_grid(0.0, -0.1, 10, t8), domain_error);

    PrimePowerTable t16 = build_table(16.0);
    CHECK_THROWS_AS(w_grid(0.0, 1e-4, 200000, t16), resource_error);
}

TEST_CASE("table cache round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "s1lab_dirichlet_cache";
    fs::remove_all(dir);

    PrimePowerTable fresh = build_table(3.0);

    s1lab::settings().cache_dir = dir.string();
    PrimePowerTable first = build_table(3.0);  // sieves, writes the file
    CHECK(tables_equal(first, fresh));

    bool found = false;
    for (const auto& entry : fs::directory_iterator(dir))
        found = found || entry.path().extension() == ".txt";
    CHECK(found);

    PrimePowerTable second = build_table(3.0);  // served from the file
    CHECK(tables_equal(second, fresh));

    // A corrupt cache must be ignored and rebuilt, not trusted.
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ofstream out(entry.path());
        out << "not a table\n";
    }
    PrimePowerTable third = build_table(3.0);
    CHECK(tables_equal(third, fresh));

    s1lab::settings().cache_dir.clear();
    PrimePowerTable fourth = build_table(3.0);
    CHECK(tables_equal(fourth, fresh));

    fs::remove_all(dir);
}
