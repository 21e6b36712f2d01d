#include "s1lab/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "taylor.hpp"

namespace s1lab::zeta {
namespace {

constexpr double PI = 3.141592653589793238462643383279502884;
constexpr double TWO_PI = 2.0 * PI;
constexpr long double PI_L = 3.141592653589793238462643383279502884L;
constexpr long double TWO_PI_L = 2.0L * PI_L;

inline void kadd(double& sum, double& comp, double x) {
    double y = x - comp;
    double u = sum + y;
    comp = (u - sum) - y;
    sum = u;
}

// ---- shared table of logl(n) ------------------------------------------

// 4M entries (64MB) covers Euler-Maclaurin up to t ~ 9e6; beyond that the
// term sources fall back to computing logl per term.
constexpr std::size_t k_log_table_cap = std::size_t{1} << 22;

std::shared_ptr<const std::vector<long double>> log_table(std::size_t need) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<long double>> cur =
        std::make_shared<const std::vector<long double>>();
    need = std::min(need, k_log_table_cap);
    std::lock_guard<std::mutex> lk(mu);
    if (cur->size() < need) {
        std::size_t n1 = std::min(std::max({need, 2 * cur->size(),
                                            std::size_t{1024}}),
                                  k_log_table_cap);
        auto next = std::make_shared<std::vector<long double>>(n1);
        std::copy(cur->begin(), cur->end(), next->begin());
        for (std::size_t n = std::max<std::size_t>(cur->size(), 1); n < n1; ++n)
            (*next)[n] = logl((long double)n);
        cur = std::move(next);
    }
    return cur;
}

// ---- Euler-Maclaurin --------------------------------------------------

// B_{2k}/(2k)! for k = 1..15; index 0 unused.
const std::array<double, 16> k_bfac = [] {
    constexpr double num[16] = {0, 1, -1, 1, -1, 5, -691, 7, -3617, 43867,
                                -174611, 854513, -236364091, 8553103,
                                -23749461029.0, 8615841276005.0};
    constexpr double den[16] = {1, 6, 30, 42, 30, 66, 2730, 6, 510, 798,
                                330, 138, 2730, 6, 870, 14322};
    std::array<double, 16> a{};
    double fact = 1.0;
    for (int k = 1; k <= 15; ++k) {
        fact *= (2.0 * k) * (2.0 * k - 1.0);
        a[k] = num[k] / den[k] / fact;
    }
    return a;
}();

int em_n_for(double sigma, double t) {
    // keeps |s|/(2 pi N) < 0.36 so the correction terms contract fast
    double mod = std::hypot(sigma, t);
    return std::max(24, (int)std::ceil(0.45 * mod));
}

// Smallest partial-sum length for which the plain Dirichlet tail bound
// (N+1)^-sigma (1 + (N+1)/(sigma-1)) reaches 1e-13; INT_MAX when hopeless.
int direct_n_for(double sigma) {
    if (sigma < 1.25) return std::numeric_limits<int>::max();
    for (int n = 2; n <= (1 << 24); n *= 2) {
        double np1 = n + 1.0;
        if (std::pow(np1, -sigma) * (1.0 + np1 / (sigma - 1.0)) <= 1e-13)
            return n;
    }
    return std::numeric_limits<int>::max();
}

// term(n, ln_n, c, s) supplies log n and cos/sin of the reduced phase
// t*log n; the functor owns the fixed t.
template <class TermFn>
EvalResult em_eval(std::complex<double> s, int n_main, TermFn&& term) {
    const double sigma = s.real(), t = s.imag();
    double sr = 0, si = 0, comp_r = 0, comp_i = 0;
    double abs_sum = 0, abs_sq = 0;
    double ln = 0, c = 1, sn = 0;
    for (int n = 1; n < n_main; ++n) {
        term(n, ln, c, sn);
        double e = std::exp(-sigma * ln);
        kadd(sr, comp_r, e * c);
        kadd(si, comp_i, -e * sn);
        abs_sum += e;
        abs_sq += e * e;
    }
    term(n_main, ln, c, sn);
    double en = std::exp(-sigma * ln);
    std::complex<double> npow_s(en * c, -en * sn);                // N^-s
    std::complex<double> tail = npow_s * ((double)n_main / (s - 1.0));
    std::complex<double> total =
        std::complex<double>(sr, si) + 0.5 * npow_s + tail;

    // Bernoulli corrections; on exit `mag` holds the first omitted term,
    // which scaled by |s+2K+1|/(sigma+2K+1) bounds the remainder.
    std::complex<double> poch = s;                                // rising factor
    std::complex<double> npow = npow_s / (double)n_main;          // N^(-s-2k+1)
    const double inv_n2 = 1.0 / ((double)n_main * (double)n_main);
    const double scale = abs_sum + 1.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    double rem = 0;
    for (int k = 1;; ++k) {
        std::complex<double> tk = k_bfac[k] * poch * npow;
        double mag = std::abs(tk);
        if (k > 14 || mag >= prev_mag || mag <= 1e-18 * scale) {
            rem = mag * std::abs(s + (2.0 * k - 1.0)) / (sigma + 2.0 * k - 1.0);
            break;
        }
        total += tk;
        prev_mag = mag;
        poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
        npow *= inv_n2;
    }

    // rounding model: Kahan-summed terms contribute ~3 ulp each in absolute
    // value; phase errors enter through an rms estimate with a 4x margin.
    double dphi = std::abs(t) * ln * 1.1e-19 + 3e-16;
    double err = rem + 3e-16 * abs_sum + 4.0 * dphi * std::sqrt(abs_sq)
               + 4e-16 * (std::abs(tail) + en);
    return {total, err};
}

template <class TermFn>
EvalResult direct_eval(double sigma, double t, int n_terms, TermFn&& term) {
    double sr = 0, si = 0, comp_r = 0, comp_i = 0;
    double abs_sum = 0, abs_sq = 0;
    double ln = 0, c = 1, sn = 0;
    for (int n = 1; n <= n_terms; ++n) {
        term(n, ln, c, sn);
        double e = std::exp(-sigma * ln);
        kadd(sr, comp_r, e * c);
        kadd(si, comp_i, -e * sn);
        abs_sum += e;
        abs_sq += e * e;
    }
    double np1 = n_terms + 1.0;
    double tail = std::pow(np1, -sigma) * (1.0 + np1 / (sigma - 1.0));
    double dphi = std::abs(t) * ln * 1.1e-19 + 3e-16;
    double err = tail + 3e-16 * abs_sum + 4.0 * dphi * std::sqrt(abs_sq);
    return {{sr, si}, err};
}

// Term source computing phases on the fly in 80-bit arithmetic.
struct ScalarSource {
    double t;
    const long double* lt;
    std::size_t ts;
    void operator()(int n, double& ln, double& c, double& sn) const {
        long double l = (std::size_t)n < ts ? lt[n] : logl((long double)n);
        ln = (double)l;
        long double ph = fmodl((long double)t * l, TWO_PI_L);
        c = std::cos((double)ph);
        sn = std::sin((double)ph);
    }
};

EvalResult eval_at(double sigma, double t) {
    int nd = direct_n_for(sigma);
    int ne = em_n_for(sigma, t);
    int need = std::min(nd, ne) + 1;
    auto tbl = log_table((std::size_t)need);
    ScalarSource src{t, tbl->data(), tbl->size()};
    if (nd < ne) return direct_eval(sigma, t, nd, src);
    return em_eval(std::complex<double>(sigma, t), ne, src);
}

void validate(const StripPoint& p) {
    if (!(std::isfinite(p.sigma) && std::isfinite(p.t)) ||
        p.sigma < 0.5 || p.sigma > 40.0 || p.t < 0.0 || p.t > 1e8)
        throw domain_error(
            "strip point out of range: need sigma in [1/2, 40], t in [0, 1e8]");
}

// ---- theta ------------------------------------------------------------

long double rs_theta_ld(long double t) {
    long double x = 0.5L * t;
    long double t2 = t * t;
    return x * logl(t / TWO_PI_L) - x - PI_L / 8.0L
         + 1.0L / (48.0L * t)
         + 7.0L / (5760.0L * t * t2)
         + 31.0L / (80640.0L * t * t2 * t2);
}

// ---- Hardy Z ----------------------------------------------------------

// Z via e^{i theta} zeta(1/2+it); valid on the whole range, used directly
// below t = 1e4 and for refinement polishing above.
double em_z(double t) {
    EvalResult r = eval_at(0.5, t);
    long double ph = fmodl(rs_theta_ld((long double)t), TWO_PI_L);
    double c = std::cos((double)ph), sn = std::sin((double)ph);
    return c * r.value.real() - sn * r.value.imag();
}

// Derivatives 0..9 of Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p) at p in [0,1).
// Near the removable singularities p = 1/4, 3/4 both cosines vanish
// (numerator constant is exactly -pi/2 there), so the Taylor series are
// built with exact zero constants and divided after one shift.
void psi_derivs(double p, double d[10]) {
    using taylor::Series;
    double p0 = p;
    int removable = 0;
    if (std::abs(p - 0.25) < 0.05) {
        p0 = 0.25;
        removable = 1;
    } else if (std::abs(p - 0.75) < 0.05) {
        p0 = 0.75;
        removable = 2;
    }
    Series u{}, v{};
    u.c[0] = TWO_PI * (p0 * p0 - p0 - 0.0625);
    u.c[1] = TWO_PI * (2.0 * p0 - 1.0);
    u.c[2] = TWO_PI;
    v.c[0] = TWO_PI * p0;
    v.c[1] = TWO_PI;
    Series psi;
    if (removable) {
        // cos(-pi/2 + w) = sin w; cos(pi/2 + y) = -sin y; cos(3pi/2 + y) = sin y
        Series num = taylor::sin_series_reduced_only(u);
        Series den = taylor::sin_series_reduced_only(v);
        if (removable == 1)
            for (auto& x : den.c) x = -x;
        psi = taylor::divide(taylor::shift_down(num), taylor::shift_down(den));
    } else {
        psi = taylor::divide(taylor::cos_series(u), taylor::cos_series(v));
    }
    double off = p - p0;
    for (int k = 0; k < 10; ++k) d[k] = taylor::derivative_at(psi, k, off);
}

// ---- zero bracketing --------------------------------------------------

struct Bracket {
    double lo, hi;
    bool refined;
};

constexpr double k_zero_base = 10.0;
constexpr double k_block_len = 128.0;

double z_for_scan(double t, bool use_rs) {
    return use_rs ? detail::rs_z(t) : em_z(t);
}

// Brackets all sign changes of Z on block [a, a+128). The grid is refined
// 4x per level until two consecutive counts agree and match the
// Riemann-von Mangoldt prediction; a block never depends on query history,
// so the cache contents are reproducible across call orders.
std::vector<Bracket> scan_block(long bi) {
    const double a = k_zero_base + k_block_len * (double)bi;
    const double b = a + k_block_len;
    const bool use_rs = (a >= 1e4);
    const double expected =
        (double)((rs_theta_ld(b) - rs_theta_ld(a)) / PI_L);
    const double gap = TWO_PI / std::log(b / TWO_PI);
    const long m0 = (long)std::ceil(k_block_len / std::min(0.25, gap / 8.0));
    int prev_count = -1;
    std::vector<Bracket> prev_br;
    for (int level = 0; level < 7; ++level) {
        const long m = m0 << (2 * level);
        const double h = k_block_len / (double)m;
        std::vector<Bracket> br;
        double zprev = z_for_scan(a, use_rs);
        for (long i = 1; i <= m; ++i) {
            double x = (i == m) ? b : a + h * (double)i;
            double z = z_for_scan(x, use_rs);
            if ((zprev < 0.0) != (z < 0.0))
                br.push_back({x - h, x, false});
            zprev = z;
        }
        int count = (int)br.size();
        // |S(b) - S(a)| stays well under 3 at these heights, so a deficit
        // beyond 3.2 means the grid is still missing a close pair
        if (count == prev_count && std::abs(count - expected) <= 3.2)
            return br;
        prev_count = count;
        prev_br = std::move(br);
    }
    throw resource_error("zero bracketing did not stabilize on a block");
}

struct ZeroCache {
    std::mutex mu;
    std::map<long, std::vector<Bracket>> blocks;
};

ZeroCache& zero_cache() {
    static ZeroCache c;
    return c;
}

// callers hold the cache lock
std::vector<Bracket>& ensure_block(long bi) {
    auto& cache = zero_cache();
    auto it = cache.blocks.find(bi);
    if (it == cache.blocks.end())
        it = cache.blocks.emplace(bi, scan_block(bi)).first;
    return it->second;
}

void refine_bracket(Bracket& w) {
    if (w.refined) return;
    const Bracket original = w;
    auto bisect = [&](double (*zf)(double), double target) {
        double zlo = zf(w.lo);
        while (w.hi - w.lo > target) {
            double mid = 0.5 * (w.lo + w.hi);
            double zm = zf(mid);
            if ((zm < 0.0) == (zlo < 0.0)) {
                w.lo = mid;
                zlo = zm;
            } else {
                w.hi = mid;
            }
        }
    };
    if (w.lo >= 1e4) {
        // the Riemann-Siegel path is ~1e-11 accurate here; polish with the
        // Euler-Maclaurin Z only over the last few bisection steps
        bisect(&detail::rs_z, 1e-7);
        if ((em_z(w.lo) < 0.0) == (em_z(w.hi) < 0.0))
            w = original;  // disagreement between the two paths; start over
    }
    bisect(&em_z, 9e-10);
    w.refined = true;
}

long block_of(double t) {
    long bi = (long)std::floor((t - k_zero_base) / k_block_len);
    return bi < 0 ? 0 : bi;
}

} // namespace

// ---- public surface ---------------------------------------------------

EvalResult zeta(const StripPoint& p) {
    validate(p);
    if (p.sigma == 1.0 && p.t == 0.0)
        throw domain_error("zeta has a pole at s = 1");
    return eval_at(p.sigma, p.t);
}

LogAbsResult log_abs_zeta(const StripPoint& p) {
    EvalResult r = zeta(p);
    double av = std::abs(r.value);
    return {std::log(av), av, av < k_singular_threshold};
}

double rs_theta(double t) {
    if (!(t >= 10.0))
        throw domain_error("rs_theta: asymptotic expansion needs t >= 10");
    return (double)rs_theta_ld((long double)t);
}

double rs_theta_error(double t) {
    // truncation after the t^-5 term, plus representation rounding
    double t2 = t * t;
    double trunc = 2.0 * 127.0 / (430080.0 * t2 * t2 * t2 * t);
    return trunc + 2.5e-16 * (0.5 * t * std::abs(std::log(t / TWO_PI)) + 1.0);
}

double hardy_z(double t) {
    if (!(t >= 10.0 && t <= 1e8))
        throw domain_error("hardy_z needs 10 <= t <= 1e8");
    return t <= 1e4 ? em_z(t) : detail::rs_z(t);
}

double hardy_z_error(double t) {
    if (!(t >= 10.0 && t <= 1e8))
        throw domain_error("hardy_z needs 10 <= t <= 1e8");
    if (t > 1e4) return detail::rs_z_error(t);
    EvalResult r = eval_at(0.5, t);
    return r.abs_error_bound +
           rs_theta_error(t) * (std::abs(r.value) + r.abs_error_bound);
}

std::vector<double> zero_ordinates(double t_lo, double t_hi) {
    if (!(std::isfinite(t_lo) && std::isfinite(t_hi)) ||
        !(10.0 <= t_lo && t_lo < t_hi && t_hi <= 1e6))
        throw domain_error("zero_ordinates needs 10 <= t_lo < t_hi <= 1e6");
    double expected = (double)((rs_theta_ld((long double)t_hi) -
                                rs_theta_ld((long double)t_lo)) / PI_L);
    if (expected > 2e5)
        throw resource_error("zero_ordinates range holds too many zeros");
    std::vector<double> out;
    auto& cache = zero_cache();
    std::lock_guard<std::mutex> lk(cache.mu);
    for (long bi = block_of(t_lo); bi <= block_of(t_hi); ++bi) {
        for (auto& w : ensure_block(bi)) {
            if (w.hi <= t_lo || w.lo > t_hi) continue;
            refine_bracket(w);
            double mid = 0.5 * (w.lo + w.hi);
            if (t_lo < mid && mid <= t_hi) out.push_back(mid);
        }
    }
    return out;
}

long zero_count(double T) {
    if (!(T >= 10.0 && T <= 1e6))
        throw domain_error("zero_count needs 10 <= T <= 1e6");
    long count = 0;
    auto& cache = zero_cache();
    std::lock_guard<std::mutex> lk(cache.mu);
    for (long bi = 0; bi <= block_of(T); ++bi) {
        for (auto& w : ensure_block(bi)) {
            if (w.hi <= T) {
                ++count;
            } else if (w.lo < T) {
                refine_bracket(w);
                if (0.5 * (w.lo + w.hi) <= T) ++count;
            }
        }
    }
    return count;
}

bool near_ordinate(double T, double width) {
    double lo = std::max(10.0, T - width);
    double hi = T + width;
    return (em_z(lo) < 0.0) != (em_z(hi) < 0.0);
}

FixedHeightEvaluator::FixedHeightEvaluator(double t, double sigma_max)
    : t_(t), sigma_max_(std::clamp(sigma_max, 0.5, 40.0)) {
    if (!(std::isfinite(t) && t >= 0.0 && t <= 1e8))
        throw domain_error("FixedHeightEvaluator needs t in [0, 1e8]");
    n_em_ = em_n_for(sigma_max_, t_);
    lnn_.resize(n_em_ + 1);
    cos_.resize(n_em_ + 1);
    sin_.resize(n_em_ + 1);
    auto tbl = log_table((std::size_t)n_em_ + 1);
    const long double* lt = tbl->data();
    const std::size_t ts = tbl->size();
    for (int n = 1; n <= n_em_; ++n) {
        long double l = (std::size_t)n < ts ? lt[n] : logl((long double)n);
        lnn_[n] = (double)l;
        long double ph = fmodl((long double)t_ * l, TWO_PI_L);
        cos_[n] = std::cos((double)ph);
        sin_[n] = std::sin((double)ph);
    }
}

EvalResult FixedHeightEvaluator::eval(double sigma) const {
    if (!(std::isfinite(sigma) && 0.5 <= sigma && sigma <= 40.0))
        throw domain_error("eval needs sigma in [1/2, 40]");
    if (sigma == 1.0 && t_ == 0.0)
        throw domain_error("zeta has a pole at s = 1");
    auto term = [this](int n, double& ln, double& c, double& sn) {
        ln = lnn_[n];
        c = cos_[n];
        sn = sin_[n];
    };
    int nd = direct_n_for(sigma);
    if (nd <= n_em_) return direct_eval(sigma, t_, nd, term);
    if (sigma <= sigma_max_)
        return em_eval(std::complex<double>(sigma, t_), n_em_, term);
    return eval_at(sigma, t_);  // outside the sized range; rare
}

LogAbsResult FixedHeightEvaluator::log_abs(double sigma) const {
    EvalResult r = eval(sigma);
    double av = std::abs(r.value);
    return {std::log(av), av, av < k_singular_threshold};
}

namespace detail {

EvalResult euler_maclaurin(std::complex<double> s) {
    if (s == std::complex<double>(1.0, 0.0))
        throw domain_error("zeta has a pole at s = 1");
    if (!(std::isfinite(s.real()) && std::isfinite(s.imag())) ||
        std::abs(s.imag()) > 1e8 || s.real() < -0.5 || s.real() > 64.0)
        throw domain_error("euler_maclaurin: s out of supported range");
    int ne = em_n_for(s.real(), s.imag());
    auto tbl = log_table((std::size_t)ne + 1);
    ScalarSource src{s.imag(), tbl->data(), tbl->size()};
    return em_eval(s, ne, src);
}

double rs_z(double t) {
    long double a2 = (long double)t / TWO_PI_L;
    long double al = sqrtl(a2);
    long nu = (long)floorl(al);
    double p = (double)(al - (long double)nu);
    long double th = rs_theta_ld((long double)t);
    auto tbl = log_table((std::size_t)nu + 1);
    const long double* lt = tbl->data();
    double sum = 0, comp = 0;
    for (long n = 1; n <= nu; ++n) {
        long double ph = fmodl(th - (long double)t * lt[n], TWO_PI_L);
        kadd(sum, comp, std::cos((double)ph) / std::sqrt((double)n));
    }
    double d[10];
    psi_derivs(p, d);
    const double pi2 = PI * PI;
    double c0 = d[0];
    double c1 = -d[3] / (96.0 * pi2);
    double c2 = d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi2 * pi2);
    double c3 = -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi2 * pi2)
              - d[9] / (5308416.0 * pi2 * pi2 * pi2);
    double b = 1.0 / (double)al;                   // (t/2pi)^{-1/2}
    double corr = c0 + b * (c1 + b * (c2 + b * c3));
    double sign = (nu & 1) ? 1.0 : -1.0;           // (-1)^{nu+1}
    return 2.0 * sum + sign * corr / std::sqrt((double)al);
}

double rs_z_error(double t) {
    // truncation coefficient calibrated against the Euler-Maclaurin path on
    // [1e4, 5e4] (observed <= 4e-12 at t = 1e4, margin ~25x), plus the
    // phase-rounding contribution which takes over beyond t ~ 1e7
    double x = t / TWO_PI;
    double dphi = t * 2.2e-19;
    return 0.1 * std::pow(x, -2.75) + 2.4 * dphi * std::pow(x, 0.25) + 1e-14;
}

} // namespace detail

} // namespace s1lab::zeta
