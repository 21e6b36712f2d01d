#pragma once

#include <functional>
#include <vector>

namespace s1lab {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // sum of per-panel two-half comparison estimates
    long evals = 0;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], computed
// once by Newton iteration on P_n and cached. n <= 64.
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

double gl_apply(const std::function<double(double)>& f, double a, double b,
                int n, long* evals = nullptr);

// Globally adaptive bisection with a 15-point panel rule. `breaks` lists the
// forced panel edges in ascending order (at least {a, b}); the worst panel by
// estimated error is split until the error total meets
// max(abs_tol, rel_tol * |integral|) or the panel budget runs out, in which
// case quadrature_error is thrown. Integrands may themselves throw
// quadrature_error to flag a singular point; it propagates.
QuadratureResult integrate(const std::function<double(double)>& f,
                           const std::vector<double>& breaks,
                           double rel_tol, double abs_tol,
                           int max_panels = 4000);

} // namespace s1lab
