#include "s1lab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <string>

#include "s1lab/parallel.hpp"

namespace s1lab::moments {

namespace {

constexpr double k_align_tol = 1e-6;
constexpr int k_max_k = 12;
constexpr double k_inf = std::numeric_limits<double>::infinity();

// 1/(5 sqrt(10 e)) to the full long double width.
const long double k_c0 = 1.0L / (5.0L * sqrtl(10.0L * expl(1.0L)));

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double int_pow(double v, int e) {
    double r = 1.0, b = v;
    for (int n = e; n > 0; n >>= 1) {
        if (n & 1) r *= b;
        b *= b;
    }
    return r;
}

std::int64_t locate_node(const GridFunction& g, double x, const char* what) {
    double pos = (x - g.t0) / g.dt;
    auto i = static_cast<std::int64_t>(std::llround(pos));
    if (i < 0 || i >= g.size() || std::abs(g.node(i) - x) > k_align_tol)
        throw domain_error(std::string("moments: ") + what +
                           " must lie on a grid node inside the grid");
    return i;
}

// Composite Simpson over sub-sampled nodes i_lo, i_lo+stride, ... covering
// `panels` coarse panels; when the panel count is odd the last three panels
// switch to the 3/8 rule (same h^4 order).
double simpson(const GridFunction& g, std::int64_t i_lo, std::int64_t stride,
               std::int64_t panels, int power) {
    double h = g.dt * static_cast<double>(stride);
    std::int64_t simpson_panels = (panels % 2 == 0) ? panels : panels - 3;
    Kahan acc;
    for (std::int64_t j = 0; j <= simpson_panels; ++j) {
        double w = (j == 0 || j == simpson_panels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc.add(w * int_pow(g.values[i_lo + j * stride], power));
    }
    double total = acc.sum * (h / 3.0);
    if (simpson_panels != panels) {
        Kahan tail;
        for (std::int64_t j = 0; j <= 3; ++j) {
            double w = (j == 0 || j == 3) ? 1.0 : 3.0;
            std::int64_t i = i_lo + (simpson_panels + j) * stride;
            tail.add(w * int_pow(g.values[i], power));
        }
        total += tail.sum * (3.0 * h / 8.0);
    }
    return total;
}

struct Range {
    std::int64_t i_lo;
    std::int64_t panels;
};

Range checked_range(const GridFunction& g, int k, double T, double H) {
    if (k < 1 || k > k_max_k)
        throw domain_error("moments: k must lie in [1, 12]");
    if (!(g.dt > 0.0) || g.size() < 2)
        throw domain_error("moments: grid must have positive spacing");
    if (!std::isfinite(T) || !std::isfinite(H) || !(H > 0.0))
        throw domain_error("moments: need finite T and H > 0");
    if (!g.all_finite())
        throw domain_error("moments: grid values must be finite");
    std::int64_t i_lo = locate_node(g, T, "T");
    std::int64_t i_hi = locate_node(g, T + H, "T + H");
    std::int64_t panels = i_hi - i_lo;
    if (panels < 8 || panels % 2 != 0)
        throw domain_error(
            "moments: [T, T+H] must span an even number of panels, at least 8");
    return {i_lo, panels};
}

} // namespace

MomentPair compute_moments(const GridFunction& g, int k, double T, double H) {
    auto [i_lo, panels] = checked_range(g, k, T, H);
    double even_fine = simpson(g, i_lo, 1, panels, 2 * k);
    double even_coarse = simpson(g, i_lo, 2, panels / 2, 2 * k);
    double odd_fine = simpson(g, i_lo, 1, panels, 2 * k + 1);
    double odd_coarse = simpson(g, i_lo, 2, panels / 2, 2 * k + 1);
    return {even_fine, std::abs(even_fine - even_coarse) / 15.0,
            odd_fine, std::abs(odd_fine - odd_coarse) / 15.0};
}

double even_moment(const GridFunction& g, int k, double T, double H) {
    auto [i_lo, panels] = checked_range(g, k, T, H);
    return simpson(g, i_lo, 1, panels, 2 * k);
}

double odd_moment(const GridFunction& g, int k, double T, double H) {
    auto [i_lo, panels] = checked_range(g, k, T, H);
    return simpson(g, i_lo, 1, panels, 2 * k + 1);
}

Lemma4Lower lemma4_lower_bound(int k, double tau, double H) {
    if (k < 2)
        throw domain_error("lemma4_lower_bound: k must be at least 2");
    if (!std::isfinite(tau) || !(tau > 0.0))
        throw domain_error("lemma4_lower_bound: tau must be positive");
    if (!std::isfinite(H) || !(H > 0.0))
        throw domain_error("lemma4_lower_bound: H must be positive");
    long double lk = static_cast<long double>(k);
    long double log_first =
        2.0L * lk * (logl(k_c0) + 0.5L * logl(lk) - logl(logl(lk))) +
        logl(static_cast<long double>(H));
    long double log_second = 3.0L * lk * static_cast<long double>(tau);
    long double first = expl(log_first);
    long double second = expl(log_second);
    double value;
    if (std::isinf(static_cast<double>(first)) &&
        std::isinf(static_cast<double>(second)))
        value = log_first > log_second ? k_inf : -k_inf;
    else
        value = static_cast<double>(first - second);
    // The hypothesis compared in log form; equivalent and overflow-free.
    bool ok = 2.0 * std::log(2.0 * k * std::log(static_cast<double>(k))) <
              0.8 * tau;
    return {value, static_cast<double>(log_first),
            static_cast<double>(log_second), ok};
}

LogBound lemma4_odd_bound(int k, double tau) {
    if (k < 1)
        throw domain_error("lemma4_odd_bound: k must be at least 1");
    if (!std::isfinite(tau) || !(tau > 0.0))
        throw domain_error("lemma4_odd_bound: tau must be positive");
    double log_value = (3.0 * k + 1.5) * tau;
    return {log_value, std::exp(log_value)};
}

Lemma3Bound lemma3_rhs_log(int m, double tau, double eps, double log_T,
                           double log_H) {
    if (m < 3 || m % 2 == 0)
        throw domain_error("lemma3_rhs: m must be an odd integer >= 3");
    if (!(eps > 0.0) || !(eps < 1e-3))
        throw domain_error("lemma3_rhs: eps must lie in (0, 1/1000)");
    if (!std::isfinite(tau) || !(tau > 0.0))
        throw domain_error("lemma3_rhs: tau must be positive");
    if (!std::isfinite(log_T) || !(log_T > 0.0))
        throw domain_error("lemma3_rhs: log T must be positive");
    if (!std::isfinite(log_H))
        throw domain_error("lemma3_rhs: log H must be finite");
    long double lm = static_cast<long double>(m);
    long double lt = static_cast<long double>(log_T);
    long double log_q = logl(50.0L * static_cast<long double>(tau) * lm * lm) -
                        3.0L * logl(static_cast<long double>(eps)) - logl(lt);
    long double t1 = static_cast<long double>(log_H) + lm * logl(25.0L);
    long double t2 =
        static_cast<long double>(log_H) + 3.0L * logl(lt) + lm * log_q;
    long double hi = t1 > t2 ? t1 : t2;
    long double lo = t1 > t2 ? t2 : t1;
    long double log_value = hi + log1pl(expl(lo - hi));
    return {static_cast<double>(expl(log_value)),
            static_cast<double>(log_value), static_cast<double>(t1),
            static_cast<double>(t2),
            m * tau < eps / 10.0 * log_T,
            (m - 1) / 2 >= 2};
}

Lemma3Bound lemma3_rhs(int m, double tau, double eps, double T, double H) {
    if (!std::isfinite(T) || !(T > 1.0))
        throw domain_error("lemma3_rhs: T must exceed 1");
    if (!std::isfinite(H) || !(H > 0.0))
        throw domain_error("lemma3_rhs: H must be positive");
    return lemma3_rhs_log(m, tau, eps, std::log(T), std::log(H));
}

Lemma5Verdict lemma5_certify(const GridFunction& wr, int k, double M, double T,
                             double H, double r_moment) {
    if (!std::isfinite(M) || !(M > 0.0))
        throw domain_error("lemma5_certify: M must be positive");
    if (!std::isfinite(r_moment) || r_moment < 0.0)
        throw domain_error("lemma5_certify: r_moment must be nonnegative");
    MomentPair mp = compute_moments(wr, k, T, H);
    bool c1 = mp.even_value >= H * int_pow(M, 2 * k);
    bool c2 = std::abs(mp.odd_value) <= 0.5 * H * int_pow(M, 2 * k + 1);
    bool c3 = r_moment < H * int_pow(M / 2.0, 2 * k + 1);
    return {c1, c2, c3, M, c1 && c2 && c3};
}

MomentReport moment_report(const GridFunction& g, int k, double tau, double T,
                           double H) {
    if (!std::isfinite(tau) || !(tau > 0.0))
        throw domain_error("moment_report: tau must be positive");
    constexpr double pi = 3.14159265358979323846;
    if (g.dt > pi / (4.0 * tau) * (1.0 + 1e-9))
        throw domain_error(
            "moment_report: grid spacing exceeds pi/(4 tau); the fastest "
            "prime oscillation needs eight samples per period");
    MomentPair mp = compute_moments(g, k, T, H);
    double lower = std::numeric_limits<double>::quiet_NaN();
    if (k >= 2) lower = lemma4_lower_bound(k, tau, H).value;
    return {T, H, k, 2 * k + 1, mp.even_value, mp.odd_value, lower,
            lemma4_odd_bound(k, tau).value,
            std::max(mp.even_error, mp.odd_error)};
}

std::vector<MomentReport> moment_reports(const GridFunction& g,
                                         const std::vector<int>& ks,
                                         double tau, double T, double H) {
    std::vector<MomentReport> out(ks.size());
    std::exception_ptr failure;
    std::mutex guard;
    parallel_for_chunks(
        static_cast<std::int64_t>(ks.size()), 1,
        [&](std::int64_t begin, std::int64_t end) {
            for (std::int64_t i = begin; i < end; ++i) {
                try {
                    out[i] = moment_report(g, ks[i], tau, T, H);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(guard);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    if (failure) std::rethrow_exception(failure);
    return out;
}

} // namespace s1lab::moments
