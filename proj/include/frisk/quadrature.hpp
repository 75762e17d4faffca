#pragma once

#include <functional>

namespace frisk {

// Adaptive Gauss-Kronrod 7-15 on [a, b]. Throws EvalError on non-convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 1e-15);

// Tanh-sinh quadrature on [a, b]; robust to integrable endpoint singularities
// (never evaluates f exactly at a or b).
double integrate_ts(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-12);

// Integral of f over [a, inf) for f with exponential decay; `scale` must be an
// upper bound on the decay length (f = O(e^{-(y-a)/scale}) up to polynomials).
double integrate_exp_tail(const std::function<double(double)>& f, double a,
                          double scale, double tol = 1e-12);

}  // namespace frisk
