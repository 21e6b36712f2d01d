#include "s1lab/smoothing.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "s1lab/argument.hpp"
#include "s1lab/dirichlet.hpp"
#include "s1lab/errors.hpp"
#include "s1lab/quadrature.hpp"
#include "s1lab/zeta.hpp"

namespace s1lab::smoothing {
namespace {

constexpr double PI = 3.141592653589793238462643383279502884;

// S1 memo grid pitch; cubic interpolation across a slope jump costs at most
// about jump * h / 4, far inside the smoothing error budget.
constexpr double k_memo_h = 1e-3;

// Hard ceilings for one smoothing call.
constexpr double k_max_initial_panels = 40000.0;
constexpr std::int64_t k_max_s1_evals = 400000;

void validate_params(const FejerParams& p) {
    if (!(std::isfinite(p.tau) && p.tau > 0.0) ||
        !(std::isfinite(p.H) && p.H > 0.0) || !std::isfinite(p.t) ||
        !(p.t > 0.0))
        throw domain_error("FejerParams need tau > 0, H > 0 and t > 0");
    if (!(p.tau < std::log(p.t)))
        throw domain_error("FejerParams need tau < log t");
}

double strip_panel(const zeta::FixedHeightEvaluator& fe, double a, double b,
                   int n, bool& bad) {
    const std::vector<double>& xs = gl_nodes(n);
    const std::vector<double>& ws = gl_weights(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0, comp = 0.0;
    for (int i = 0; i < n && !bad; ++i) {
        zeta::LogAbsResult la = fe.log_abs(mid + half * xs[i]);
        bad = bad || la.singular;
        double y = ws[i] * la.value - comp;
        double u = acc + y;
        comp = (u - acc) - y;
        acc = u;
    }
    return acc * half;
}

// One S1 node value.  The strip integrand log|zeta(sigma + ix)| is analytic
// in sigma with its nearest singularity at distance |x - gamma| from the
// left edge, so away from zero ordinates a fixed Gauss product rule already
// lands far below the memo budget (error < 1e-8 once |zeta(1/2+ix)| >= 0.3).
// Near an ordinate, near the pole (small x), or on a singular sample, fall
// back to the adaptive strip quadrature.
double strip_node(double x) {
    if (x >= 5.0) {
        zeta::FixedHeightEvaluator fe(x, 40.0);
        zeta::LogAbsResult edge = fe.log_abs(0.5);
        if (!edge.singular && edge.abs_zeta >= 0.3) {
            bool bad = false;
            double acc = strip_panel(fe, 0.5, 1.0, 32, bad) +
                         strip_panel(fe, 1.0, 2.0, 24, bad) +
                         strip_panel(fe, 2.0, 4.0, 16, bad) +
                         strip_panel(fe, 4.0, 40.0, 16, bad);
            if (!bad) return acc / PI;
        }
    }
    return argument::detail::s1_strip_at(x, 40.0, 1e-7).s1_value;
}

// Lazily filled S1 values on the k_memo_h grid, shared across calls; the
// value at a node depends only on the node, so concurrent fills agree.
class S1Memo {
  public:
    static S1Memo& instance() {
        static S1Memo memo;
        return memo;
    }

    // S1(x) by cubic interpolation through the four surrounding nodes.
    double sample(double x, std::int64_t& misses) {
        double u = x / k_memo_h;
        auto i0 = static_cast<std::int64_t>(std::floor(u));
        double s = u - static_cast<double>(i0);
        double f[4];
        for (int j = -1; j <= 2; ++j) f[j + 1] = node(i0 + j, misses);
        double lm1 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        double l0 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        double l1 = -(s + 1.0) * s * (s - 2.0) / 2.0;
        double l2 = (s + 1.0) * s * (s - 1.0) / 6.0;
        return lm1 * f[0] + l0 * f[1] + l1 * f[2] + l2 * f[3];
    }

  private:
    double node(std::int64_t i, std::int64_t& misses) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(i);
            if (it != cache_.end()) return it->second;
        }
        if (++misses > k_max_s1_evals)
            throw resource_error("smoothing call exceeded the S1 evaluation budget");
        // S1 is even, so nodes are keyed by |i| in effect.
        double x = std::abs(static_cast<double>(i)) * k_memo_h;
        double v = strip_node(x);
        std::lock_guard<std::mutex> lock(mu_);
        cache_.emplace(i, v);
        return v;
    }

    std::mutex mu_;
    std::unordered_map<std::int64_t, double> cache_;
};

struct CoreResult {
    double value = 0.0;
    double err = 0.0;
};

// Quadrature of phi(u) * field(t + 2u/tau) over [-H tau/2, H tau/2] with
// panel edges at the kernel zeros k*pi.
CoreResult smoothed_core(const FejerParams& p,
                         const std::function<double(double)>& field) {
    const double x_cut = 0.5 * p.H * p.tau;
    if (2.0 * x_cut / PI + 2.0 > k_max_initial_panels)
        throw resource_error("smoothing window needs too many quadrature panels");

    std::vector<double> breaks;
    breaks.reserve(static_cast<std::size_t>(2.0 * x_cut / PI) + 3);
    breaks.push_back(-x_cut);
    auto k0 = static_cast<long>(std::floor(-x_cut / PI)) + 1;
    for (long k = k0; static_cast<double>(k) * PI < x_cut; ++k) {
        double b = static_cast<double>(k) * PI;
        if (b > -x_cut && b < x_cut) breaks.push_back(b);
    }
    breaks.push_back(x_cut);

    auto f = [&](double u) { return fejer(u) * field(p.t + 2.0 * u / p.tau); };
    QuadratureResult q = integrate(f, breaks, 1e-8, 2e-5, 60000);
    return {q.value, q.abs_error};
}

}  // namespace

double fejer(double u) {
    double a = std::abs(u);
    if (a < 1e-4) {
        double u2 = u * u;
        return 1.0 - u2 / 3.0 + 2.0 * u2 * u2 / 45.0;
    }
    double r = std::sin(u) / u;
    return r * r;
}

double fejer_hat(double x, double tau) {
    if (!(std::isfinite(tau) && tau > 0.0) || !std::isfinite(x))
        throw domain_error("fejer_hat needs finite x and tau > 0");
    double slope = 1.0 - std::abs(x) / tau;
    return slope > 0.0 ? (2.0 * PI / tau) * slope : 0.0;
}

double fejer_complex_sq(double z_re, double z_im) {
    if (!std::isfinite(z_re) || !std::isfinite(z_im))
        throw domain_error("fejer_complex_sq needs finite arguments");
    if (std::abs(z_im) > 700.0)
        throw domain_error("fejer_complex_sq overflow guard: |imag| > 700");
    if (z_im == 0.0) return fejer(z_re);
    std::complex<double> w(z_re, z_im);
    if (std::abs(z_re) + std::abs(z_im) < 1e-4) {
        std::complex<double> w2 = w * w;
        return (1.0 - w2 / 3.0 + 2.0 * w2 * w2 / 45.0).real();
    }
    std::complex<double> r = std::sin(w) / w;
    return (r * r).real();
}

double smoothed_s1(const FejerParams& p) {
    validate_params(p);
    if (!(p.t + p.H <= 1e6))
        throw domain_error("smoothed_s1 needs t + H <= 1e6");
    std::int64_t misses = 0;
    S1Memo& memo = S1Memo::instance();
    CoreResult r = smoothed_core(
        p, [&](double x) { return memo.sample(x, misses); });
    if (r.err + 2e-5 > 1e-3)
        throw quadrature_error("smoothed_s1 error estimate exceeds 1e-3");
    return r.value;
}

double pole_term(double t, double tau) {
    if (!(std::isfinite(t) && t >= 10.0))
        throw domain_error("pole_term needs t >= 10");
    if (!(std::isfinite(tau) && tau > 0.0))
        throw domain_error("pole_term needs tau > 0");

    const std::vector<double>& xs_outer = gl_nodes(20);
    const std::vector<double>& ws_outer = gl_weights(20);
    const std::vector<double>& xs_inner = gl_nodes(32);
    const std::vector<double>& ws_inner = gl_weights(32);

    double outer = 0.0;
    for (int i = 0; i < 20; ++i) {
        double sigma = 0.75 + 0.25 * xs_outer[i];
        double len = 1.0 - sigma;
        double inner = 0.0;
        for (int j = 0; j < 32; ++j) {
            double x = 0.5 * len * (xs_inner[j] + 1.0);
            inner += ws_inner[j] * fejer_complex_sq(0.5 * tau * t, 0.5 * tau * x);
        }
        outer += ws_outer[i] * 0.5 * len * inner;
    }
    return 2.0 * 0.25 * outer;
}

IdentityReport lemma1_identity_check(const FejerParams& p) {
    validate_params(p);
    if (!(p.t >= 10.0 && p.t <= 1e5))
        throw domain_error("identity check needs 10 <= t <= 1e5");
    if (!(p.t + p.H <= 1e6))
        throw domain_error("identity check needs t + H <= 1e6");

    dirichlet::PrimePowerTable table = dirichlet::build_table(p.tau);
    const double c0 = argument::constant_C().C;

    std::int64_t misses = 0;
    S1Memo& memo = S1Memo::instance();
    CoreResult a = smoothed_core(
        p, [&](double x) { return memo.sample(x, misses); });
    // Kernel mass over the same truncated window, so the c0 column is
    // subtracted with matched truncation and cancels from the residual
    // budget exactly.
    CoreResult m = smoothed_core(p, [](double) { return 1.0; });

    IdentityReport r;
    r.lhs = (2.0 / p.tau) * (a.value - c0 * m.value);
    r.rhs_sum = dirichlet::full_lambda_sum(p.t, table);
    r.rhs_constant = c0 * fejer_hat(0.0, p.tau);
    r.rhs_pole = pole_term(p.t, p.tau);
    r.residual = r.lhs - (r.rhs_sum - r.rhs_constant - r.rhs_pole);
    r.tail_bound = (16.0 / (p.tau * p.tau)) *
                   (std::log(p.t + p.H + 10.0) + 2.0) / p.H;
    r.quadrature_error =
        (2.0 / p.tau) * (a.err + c0 * m.err + 3e-5) + 1e-8;
    return r;
}

namespace detail {

double smoothed_average(const FejerParams& p,
                        const std::function<double(double)>& field) {
    validate_params(p);
    return smoothed_core(p, field).value;
}

}  // namespace detail

}  // namespace s1lab::smoothing
