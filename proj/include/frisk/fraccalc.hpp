#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "frisk/errors.hpp"

namespace frisk {

// Uniform grid on [0, h*(n-1)], values v[i] at x = h*i.
struct GridFn {
    double h = 0.0;
    std::vector<double> v;
    std::size_t size() const { return v.size(); }
    double x(std::size_t i) const { return h * static_cast<double>(i); }
};

enum class FracKind {
    LeftRlDeriv,     // left Riemann-Liouville derivative from lower_limit
    LeftRlIntegral,  // left Riemann-Liouville integral
    RightCaputo,     // right Caputo derivative toward upper_limit
    Lfdo,            // e^{-shift x} D^order [e^{shift x} f], left-sided
    Rfdo             // e^{shift x} C-D^order [e^{-shift x} f], right-sided
};

struct FracOp {
    FracKind kind = FracKind::LeftRlDeriv;
    double order = 1.0;
    double shift = 0.0;  // exponential tilt for Lfdo / Rfdo
    double lower_limit = 0.0;
    double upper_limit = INFINITY;
};

// One multiplicative factor of a composed operator: f -> scale*Op[f] + add*f.
struct ChainLink {
    FracOp op;
    double scale = 1.0;
    double add = 0.0;
};

// Composition; the last listed link is applied first.
struct OperatorChain {
    std::vector<ChainLink> links;
};

// Test family closed under the operators used here: sums of
// coef * x^power * exp(-decay x).
struct AnalyticTerm {
    double coef = 0.0;
    double power = 0.0;
    double decay = 0.0;
};

struct AnalyticFn {
    std::vector<AnalyticTerm> terms;
    double operator()(double x) const;
    AnalyticFn derivative() const;        // requires all powers >= 1 or == 0
    AnalyticFn tilted(double alpha) const;  // e^{alpha x} * f
    double min_decay() const;
    double min_power() const;
    AnalyticFn scaled_plus(double scale, const AnalyticFn& other, double add) const;
};

// Grunwald-Letnikov weights for (1-xi)^r: w0 = 1, wk = w_{k-1} (k-1-r)/k.
// Negative r gives the fractional-integral weights.
std::vector<double> gl_weights(double r, std::size_t n);

// Pointwise GL value at a grid node (x must lie on the grid within 1e-9 h).
double gl_left_deriv(const GridFn& f, double r, double x);

// Whole-grid GL apply, O(n^2); the parallel version splits rows across
// threads but keeps each row's summation order fixed, so results are
// bit-identical to the serial version.
GridFn gl_apply_serial(const GridFn& f, double r);
GridFn gl_apply(const GridFn& f, double r, bool parallel = true);

// Apply a chain to a grid function (left-sided operators only).
GridFn apply_chain(const OperatorChain& chain, const GridFn& f);

// Apply a chain to an analytic function, sampled on [0, x_max] at step h.
// Integer-order left operators are applied in closed form; a single
// fractional left operator falls back to the term-wise closed form; other
// cases sample and use GL.
GridFn apply_chain(const OperatorChain& chain, const AnalyticFn& f, double h,
                   double x_max);

// Left RL derivative of an analytic-family function (term-wise closed form
// via a confluent hypergeometric factor).
double left_rl_deriv_analytic(const AnalyticFn& f, double r, double x);

// Right Caputo derivative (upper limit infinity) of a decaying analytic
// function; truncation chosen so the result error is below 10*tail_tol.
double right_caputo_deriv(const AnalyticFn& f, double r, double x, double tail_tol);

struct AdjointReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_discrepancy = 0.0;
    bool pass = false;
};

// Integration-by-parts check: <L_alpha^r f, g> vs <f, R_alpha^r g> on [0, inf).
AdjointReport check_adjoint(double r, double alpha, const AnalyticFn& f,
                            const AnalyticFn& g, double tol);

// Inter-arrival density component for the operator-identity residual: either
// Gamma(shape_or_mu, rate) or, when is_ml, ML(shape_or_mu, rate).
struct DensityComponent {
    bool is_ml = false;
    double shape_or_mu = 1.0;
    double rate = 1.0;
};

// Density of the independent sum of components, sampled on the grid. Node 0
// uses the cell average CDF(h)/h so integrable singularities stay summable.
GridFn density_on_grid(const std::vector<DensityComponent>& comps, double h,
                       double x_max);

// Residual of the defining fractional ODE of the density: applies
// prod_j (D^{mu_j} + rate_j) prod_i (e^{-rate_i x} D^{shape_i} e^{rate_i x})
// to the gridded density; exact in the continuum limit.
GridFn residual_density_fde(const std::vector<DensityComponent>& comps, double h,
                            double x_max, bool parallel = true);

}  // namespace frisk
