#include "s1lab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>

#include "s1lab/errors.hpp"

namespace s1lab {

namespace {

struct Rule {
    std::vector<double> nodes, weights;
};

// Newton iteration on P_n from the Chebyshev-angle initial guess; converges to
// machine precision in a handful of steps and keeps the table free of
// transcribed constants.
Rule compute_rule(int n) {
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p_deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            p_deriv = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / p_deriv;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * p_deriv * p_deriv);
    }
    return r;
}

const Rule& rule(int n) {
    if (n < 2 || n > 64) throw domain_error("gauss-legendre order out of range");
    static std::map<int, Rule> cache;
    static std::mutex m;
    std::scoped_lock lk(m);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

struct Panel {
    double a, b;
    double value;
    double err;
};

struct WorsePanel {
    bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

} // namespace

const std::vector<double>& gl_nodes(int n) { return rule(n).nodes; }
const std::vector<double>& gl_weights(int n) { return rule(n).weights; }

double gl_apply(const std::function<double(double)>& f, double a, double b,
                int n, long* evals) {
    const Rule& r = rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0, comp = 0.0;
    for (int i = 0; i < n; ++i) {
        double term = r.weights[i] * f(mid + half * r.nodes[i]);
        double y = term - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    if (evals) *evals += n;
    return acc * half;
}

QuadratureResult integrate(const std::function<double(double)>& f,
                           const std::vector<double>& breaks,
                           double rel_tol, double abs_tol, int max_panels) {
    if (breaks.size() < 2) throw domain_error("integrate: need at least two break points");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i] > breaks[i - 1]))
            throw domain_error("integrate: break points must be strictly ascending");

    QuadratureResult out;
    std::priority_queue<Panel, std::vector<Panel>, WorsePanel> heap;

    auto make_panel = [&](double a, double b) {
        double whole = gl_apply(f, a, b, 15, &out.evals);
        double mid = 0.5 * (a + b);
        double fine = gl_apply(f, a, mid, 15, &out.evals) +
                      gl_apply(f, mid, b, 15, &out.evals);
        return Panel{a, b, fine, std::abs(whole - fine)};
    };

    double total = 0.0, err = 0.0;
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        Panel p = make_panel(breaks[i - 1], breaks[i]);
        total += p.value;
        err += p.err;
        heap.push(p);
    }

    int panels = static_cast<int>(breaks.size()) - 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (panels >= max_panels)
            throw quadrature_error("integrate: panel budget exhausted before reaching tolerance");
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw quadrature_error("integrate: panel width underflow (singular integrand?)");
        Panel l = make_panel(worst.a, mid);
        Panel r = make_panel(mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
        ++panels;
    }

    out.value = total;
    out.abs_error = err;
    return out;
}

} // namespace s1lab
