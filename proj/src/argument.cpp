#include "s1lab/argument.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "s1lab/quadrature.hpp"
#include "s1lab/settings.hpp"
#include "s1lab/zeta.hpp"

namespace s1lab::argument {
namespace {

constexpr double PI = 3.141592653589793238462643383279502884;
constexpr double TWO_PI = 2.0 * PI;
constexpr double k_half_sum_gate = 1e-9;
constexpr double k_half_sum_offset = 1e-6;

// Cheap zeta(2+it): 64-term Dirichlet sum. Truncation stays under 1/63
// while |zeta(2+it)| >= 0.62, so the argument error is below 0.03 rad:
// plenty for branch steering, where only pi/2 matters.
std::complex<double> quick_zeta2(double t) {
    static const auto tab = [] {
        struct Tab {
            double ln[65], w[65];
        } x{};
        for (int n = 1; n <= 64; ++n) {
            x.ln[n] = std::log((double)n);
            x.w[n] = 1.0 / ((double)n * (double)n);
        }
        return x;
    }();
    double re = 0.0, im = 0.0;
    for (int n = 1; n <= 64; ++n) {
        double ph = std::fmod(t * tab.ln[n], TWO_PI);
        re += tab.w[n] * std::cos(ph);
        im -= tab.w[n] * std::sin(ph);
    }
    return {re, im};
}

// Walks f over [a, b] from the known value z_start = f(a), accumulating
// principal argument differences into arg_sum; every step must turn by less
// than pi/2 or it is halved. Returns f(b).
template <class F>
std::complex<double> walk_leg(F&& f, double a, double b, double init_step,
                              std::complex<double> z_start, double& arg_sum) {
    std::complex<double> z = z_start;
    const double dir = (b >= a) ? 1.0 : -1.0;
    double x = a;
    double step = init_step;
    while (x != b) {
        const double rem = std::abs(b - x);
        double s = std::min(step, rem);
        int halvings = 0;
        for (;;) {
            double xn = (s >= rem) ? b : x + dir * s;
            std::complex<double> zn = f(xn);
            double d = std::arg(zn / z);
            if (zn != std::complex<double>(0.0, 0.0) && std::abs(d) < PI / 2) {
                x = xn;
                z = zn;
                arg_sum += d;
                break;
            }
            if (++halvings > 20)
                throw tracking_error(
                    "argument step stayed at or above pi/2 after 20 halvings");
            s *= 0.5;
        }
        step = std::min(init_step, 2.0 * s);
    }
    return z;
}

ArgumentValue counting_raw(double T) {
    double s = (double)zeta::zero_count(T) - zeta::rs_theta(T) / PI - 1.0;
    return {T, s, Method::zero_counting,
            zeta::rs_theta_error(T) / PI + 1e-12};
}

} // namespace

namespace detail {

double s_path_raw(double T, double* est_error) {
    if (T == 0.0) {
        // zeta is negative real just right of sigma = 1/2, approached from
        // above: arg -> -pi
        if (est_error) *est_error = 0.0;
        return -1.0;
    }
    zeta::EvalResult start = zeta::zeta({2.0, 0.0});
    zeta::FixedHeightEvaluator fe(T, 2.0);
    zeta::EvalResult corner = fe.eval(2.0);
    zeta::EvalResult end = fe.eval(0.5);

    double arg_sum = 0.0;
    // leg 1: t from 0 to T at sigma = 2; interior samples are cheap, the
    // telescoped argument depends only on the exact endpoint values
    auto f1 = [&](double t) {
        return t == T ? corner.value : quick_zeta2(t);
    };
    walk_leg(f1, 0.0, T, 0.05, start.value, arg_sum);
    // leg 2: sigma from 2 to 1/2 at height T
    auto f2 = [&](double sig) {
        if (sig == 0.5) return end.value;
        return fe.eval(sig).value;
    };
    walk_leg(f2, 2.0, 0.5, 0.05, corner.value, arg_sum);

    if (est_error) {
        double end_abs = std::abs(end.value);
        *est_error = (start.abs_error_bound / std::abs(start.value) +
                      end.abs_error_bound / std::max(end_abs, 1e-300)) / PI +
                     1e-12;
    }
    return arg_sum / PI;
}

S1Value s1_strip_at(double T, double cutoff, double rel_tol) {
    zeta::FixedHeightEvaluator fe(T, cutoff);
    std::vector<double> breaks{0.5, 1.0};
    for (double b = 2.0; b < cutoff; b *= 2.0) breaks.push_back(b);
    breaks.push_back(cutoff);
    auto f = [&](double sigma) {
        zeta::LogAbsResult r = fe.log_abs(sigma);
        if (r.singular)
            throw quadrature_error(
                "strip integrand hit a flagged zero of zeta");
        return r.value;
    };
    QuadratureResult q = integrate(f, breaks, rel_tol, 0.5 * rel_tol, 8000);
    double tail = std::pow(2.0, 1.0 - cutoff) / std::log(2.0) / PI;
    return {T, q.value / PI, cutoff, q.abs_error / PI + tail};
}

} // namespace detail

ArgumentValue s_via_path(double T) {
    if (!(std::isfinite(T) && 10.0 <= T && T <= 1e6))
        throw domain_error("s_via_path needs 10 <= T <= 1e6");
    if (zeta::near_ordinate(T, k_half_sum_gate)) {
        double ea, eb;
        double a = detail::s_path_raw(T + k_half_sum_offset, &ea);
        double b = detail::s_path_raw(T - k_half_sum_offset, &eb);
        return {T, 0.5 * (a + b), Method::path_tracking, 0.5 * (ea + eb)};
    }
    double e;
    double s = detail::s_path_raw(T, &e);
    return {T, s, Method::path_tracking, e};
}

ArgumentValue s_via_counting(double T) {
    if (!(std::isfinite(T) && 10.0 <= T && T <= 1e5))
        throw domain_error("s_via_counting needs 10 <= T <= 1e5");
    if (zeta::near_ordinate(T, k_half_sum_gate)) {
        ArgumentValue a = counting_raw(T + k_half_sum_offset);
        ArgumentValue b = counting_raw(T - k_half_sum_offset);
        return {T, 0.5 * (a.s_value + b.s_value), Method::zero_counting,
                0.5 * (a.est_error + b.est_error)};
    }
    return counting_raw(T);
}

S1Value s1_strip(double T, double cutoff) {
    if (!(std::isfinite(T) && 10.0 <= T && T <= 1e6))
        throw domain_error("s1_strip needs 10 <= T <= 1e6");
    if (!(std::isfinite(cutoff) && 3.0 <= cutoff && cutoff <= 40.0))
        throw domain_error("s1_strip needs cutoff in [3, 40]");
    double rel = settings().strip_rel_tol;
    if (!(rel >= 1e-12 && rel <= 1e-4)) rel = 1e-9;
    return detail::s1_strip_at(T, cutoff, rel);
}

S1Value s1_via_integral(double T) {
    if (!(std::isfinite(T) && 10.0 <= T && T <= 2000.0))
        throw domain_error("s1_via_integral needs 10 <= T <= 2000");

    // int_0^10 S dt: the range holds no ordinates, so S is smooth there;
    // Simpson over path samples at step 0.01, S(0+) = -1
    static const double s_int_low = [] {
        const int n = 1000;
        const double h = 10.0 / n;
        double acc = -1.0 + detail::s_path_raw(10.0, nullptr);
        for (int i = 1; i < n; ++i)
            acc += ((i & 1) ? 4.0 : 2.0) * detail::s_path_raw(h * i, nullptr);
        return acc * h / 3.0;
    }();

    // int_10^T S dt via the counting identity, jump by jump: N(10) = 0, so
    // int N = sum_{gamma<=T} (T-gamma) exactly
    std::vector<double> zeros;
    if (T > 10.0) zeros = zeta::zero_ordinates(10.0, T);
    double zero_part = 0.0;
    for (double g : zeros) zero_part += T - g;
    QuadratureResult th{0.0, 0.0, 0};
    if (T > 10.0)
        th = integrate([](double t) { return zeta::rs_theta(t); }, {10.0, T},
                       1e-13, 1e-11, 4000);

    double s1 = s_int_low + zero_part - th.value / PI - (T - 10.0) +
                constant_C().C;
    double est = 1e-7 + 5e-10 * (double)zeros.size() + th.abs_error / PI +
                 1e-8 + (T - 10.0) * zeta::rs_theta_error(T) / PI;
    return {T, s1, 40.0, est};
}

ArgumentConstants constant_C() {
    static const ArgumentConstants c = [] {
        return ArgumentConstants{detail::s1_strip_at(0.0, 40.0, 1e-11).s1_value};
    }();
    return c;
}

} // namespace s1lab::argument
