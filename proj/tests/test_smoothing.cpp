#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "s1lab/argument.hpp"
#include "s1lab/errors.hpp"
#include "s1lab/smoothing.hpp"

using s1lab::domain_error;
using s1lab::resource_error;
using s1lab::smoothing::fejer;
using s1lab::smoothing::fejer_complex_sq;
using s1lab::smoothing::fejer_hat;
using s1lab::smoothing::FejerParams;
using s1lab::smoothing::IdentityReport;
using s1lab::smoothing::lemma1_identity_check;
using s1lab::smoothing::pole_term;
using s1lab::smoothing::smoothed_s1;

namespace {
constexpr double k_pi = 3.14159265358979323846;
}

TEST_CASE("fejer kernel basics") {
    CHECK(fejer(0.0) == 1.0);
    CHECK(fejer(k_pi) < 1e-30);
    CHECK(fejer(2.0 * k_pi) < 1e-30);

    double u = 1e-5;
    CHECK(std::abs(fejer(u) - (1.0 - u * u / 3.0)) < 1e-15);

    // Even, bounded by one, and continuous across the series switch.
    CHECK(fejer(0.7) == fejer(-0.7));
    for (double v : {1e-5, 5e-5, 2.3, 17.0, 300.0}) {
        CHECK(fejer(v) <= 1.0);
        CHECK(fejer(v) >= 0.0);
    }
    double lo = 9.9e-5, hi = 1.01e-4;
    CHECK(std::abs(fejer(lo) - fejer(hi)) < 1e-9);
    double direct = std::sin(2.3) / 2.3;
    CHECK(fejer(2.3) == direct * direct);
}

TEST_CASE("fejer_hat piecewise form") {
    for (double tau : {0.5, 2.0, 3.0, 8.0}) {
        CHECK(fejer_hat(0.0, tau) == doctest::Approx(2.0 * k_pi / tau).epsilon(1e-15));
        CHECK(fejer_hat(tau, tau) == 0.0);
        CHECK(fejer_hat(-tau - 5.0, tau) == 0.0);
        CHECK(fejer_hat(tau / 2.0, tau) ==
              doctest::Approx(k_pi / tau).epsilon(1e-15));
        CHECK(fejer_hat(0.3 * tau, tau) == fejer_hat(-0.3 * tau, tau));
        // Linear in |x| on the support.
        double a = fejer_hat(0.2 * tau, tau), b = fejer_hat(0.6 * tau, tau);
        CHECK(0.5 * (a + b) ==
              doctest::Approx(fejer_hat(0.4 * tau, tau)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(fejer_hat(1.0, 0.0), domain_error);
    CHECK_THROWS_AS(fejer_hat(1.0, -2.0), domain_error);
}

TEST_CASE("complex kernel against reference arithmetic") {
    // Real restriction is bit-for-bit the real kernel.
    for (double x : {0.0, 1e-6, 0.4, 3.2, 40.0})
        CHECK(fejer_complex_sq(x, 0.0) == fejer(x));

    // Pure imaginary axis: (sinh y / y)^2, real and at least one.
    for (double y : {0.3, 1.0, 2.5}) {
        double r = std::sinh(y) / y;
        CHECK(fejer_complex_sq(0.0, y) == doctest::Approx(r * r).epsilon(1e-13));
        CHECK(fejer_complex_sq(0.0, y) >= 1.0);
        CHECK(fejer_complex_sq(0.0, -y) ==
              doctest::Approx(fejer_complex_sq(0.0, y)).epsilon(1e-15));
    }

    // Long-double reference over both the series and direct branches.
    for (auto [x, y] : {std::pair{3e-5, 4e-5}, {9e-5, 2e-5}, {0.3, 0.2},
                        {2.0, 1.0}, {15.0, 0.5}}) {
        std::complex<long double> w(x, y);
        std::complex<long double> r = std::sin(w) / w;
        auto ref = static_cast<double>((r * r).real());
        CHECK(fejer_complex_sq(x, y) == doctest::Approx(ref).epsilon(1e-13));
    }

    // Deviation from the real-axis kernel obeys the 8y e^{2y} envelope.
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> pick(1e-3, 3.0);
    for (int i = 0; i < 100; ++i) {
        double x = pick(rng), y = pick(rng);
        double dev = std::abs(fejer_complex_sq(x, -y) - fejer(x));
        CHECK(dev < 8.0 * y * std::exp(2.0 * y) / (1.0 + x * x + y * y));
    }

    CHECK_THROWS_AS(fejer_complex_sq(0.0, 701.0), domain_error);
    CHECK_THROWS_AS(fejer_complex_sq(1.0, -701.0), domain_error);
    CHECK(std::isfinite(fejer_complex_sq(1.0, 300.0)));
}

TEST_CASE("kernel mass approaches pi") {
    // Wide window: integral of (sin u/u)^2 over [-X, X] is pi - 1/X + O(1/X^2).
    FejerParams wide{2.0, 1e4, 20.0};
    double mass = s1lab::smoothing::detail::smoothed_average(
        wide, [](double) { return 1.0; });
    double x_cut = 0.5 * wide.H * wide.tau;
    CHECK(std::abs(mass - k_pi) < 1e-3);
    CHECK(k_pi - mass > 0.9 / x_cut);
    CHECK(k_pi - mass < 1.1 / x_cut);

    FejerParams narrow{3.0, 200.0, 100.0};
    double mass2 = s1lab::smoothing::detail::smoothed_average(
        narrow, [](double) { return 1.0; });
    CHECK(std::abs(mass2 - k_pi) <= 4.0 / (narrow.H * narrow.tau));
}

TEST_CASE("smoothed average matches a direct strip integration") {
    // Small window evaluated twice: once through the memoized fast path and
    // once sampling the adaptive strip integral directly.
    FejerParams p{4.0, 30.0, 300.0};
    double fast = smoothed_s1(p);
    double direct = s1lab::smoothing::detail::smoothed_average(p, [](double x) {
        return s1lab::argument::detail::s1_strip_at(std::abs(x), 40.0, 1e-8)
            .s1_value;
    });
    CHECK(std::abs(fast - direct) < 5e-4);
}

TEST_CASE("pole term envelope and decay") {
    for (double tau : {1.0, 3.0, 8.0})
        for (double t : {10.0, 50.0, 1000.0})
            CHECK(std::abs(pole_term(t, tau)) <= 1.0 / (40.0 * tau));

    CHECK(std::abs(pole_term(1e6, 3.0)) < 1e-10);

    // Quadratic decay in t, probed at matched kernel phases: tau t/2 and
    // tau t differ by the phase pi/3 vs 2pi/3, whose sines agree.
    double tau = 3.0;
    double t1 = (2.0 * k_pi * 1000.0 + k_pi / 3.0) * 2.0 / tau;
    double r1 = pole_term(t1, tau), r2 = pole_term(2.0 * t1, tau);
    CHECK(r2 != 0.0);
    double ratio = std::abs(r1 / r2);
    CHECK(ratio > 3.3);
    CHECK(ratio < 4.7);

    CHECK_THROWS_AS(pole_term(5.0, 3.0), domain_error);
    CHECK_THROWS_AS(pole_term(100.0, 0.0), domain_error);
}

TEST_CASE("identity residual within bounds") {
    IdentityReport r1 = lemma1_identity_check({3.0, 200.0, 100.0});
    CHECK(std::isfinite(r1.lhs));
    CHECK(std::isfinite(r1.rhs_sum));
    CHECK(r1.quadrature_error <= 1e-3);
    CHECK(r1.tail_bound > 0.03);
    CHECK(r1.tail_bound < 0.12);
    CHECK(r1.residual ==
          r1.lhs - (r1.rhs_sum - r1.rhs_constant - r1.rhs_pole));
    CHECK(std::abs(r1.residual) <= r1.tail_bound + 1e-2);

    // The report's lhs is the c0-shifted smoothed average.
    double c0 = s1lab::argument::constant_C().C;
    FejerParams p{3.0, 200.0, 100.0};
    double a = smoothed_s1(p);
    double m = s1lab::smoothing::detail::smoothed_average(
        p, [](double) { return 1.0; });
    CHECK(std::abs((2.0 / p.tau) * (a - c0 * m) - r1.lhs) < 1e-12);
    CHECK(r1.rhs_constant ==
          doctest::Approx(c0 * 2.0 * k_pi / 3.0).epsilon(1e-12));

    IdentityReport r2 = lemma1_identity_check({4.0, 200.0, 500.0});
    CHECK(std::abs(r2.residual) <= r2.tail_bound + 1e-2);
    CHECK(r2.quadrature_error <= 1e-3);

    // Doubling H tightens the tail bound to just under half and the
    // residual must stay within the tighter budget.
    IdentityReport r3 = lemma1_identity_check({3.0, 400.0, 100.0});
    CHECK(r3.tail_bound < 0.57 * r1.tail_bound);
    CHECK(r3.tail_bound > 0.40 * r1.tail_bound);
    CHECK(std::abs(r3.residual) <= r3.tail_bound + 1e-2);
}

TEST_CASE("domain and resource errors") {
    CHECK_THROWS_AS(smoothed_s1({5.0, 100.0, 100.0}), domain_error);
    CHECK_THROWS_AS(smoothed_s1({3.0, -1.0, 100.0}), domain_error);
    CHECK_THROWS_AS(smoothed_s1({0.0, 100.0, 100.0}), domain_error);
    CHECK_THROWS_AS(smoothed_s1({3.0, 2000.0, 999000.0}), domain_error);
    CHECK_THROWS_AS(smoothed_s1({3.0, std::nan(""), 100.0}), domain_error);
    // Window so wide the panel budget rejects it outright.
    CHECK_THROWS_AS(smoothed_s1({3.0, 5e4, 500.0}), resource_error);

    CHECK_THROWS_AS(lemma1_identity_check({3.0, 200.0, 2e5}), domain_error);
    CHECK_THROWS_AS(lemma1_identity_check({3.0, 200.0, 15.0}),
                    domain_error);  // t below e^tau
}
