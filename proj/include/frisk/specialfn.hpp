#pragma once

#include "frisk/errors.hpp"

namespace frisk {

// Parameters of the two-parameter Mittag-Leffler function E_{alpha,beta}.
struct MlParams {
    double alpha;
    double beta;
};

// Parameters of the Mittag-Leffler distribution ML(mu, lambda):
// density lambda * t^(mu-1) * E_{mu,mu}(-lambda t^mu), 0 < mu <= 1.
struct MlDistParams {
    double mu;
    double lambda;
};

// sin(pi*x) with exact argument reduction (exact zeros at integers).
double sinpi(double x);

// Gamma function via a Lanczos approximation, |rel err| < 1e-13 on (0, 171).
// Negative non-integer arguments use the reflection formula.
double gamma_fn(double x);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// 1/Gamma(x), entire: exact zeros at nonpositive integers.
double recip_gamma(double x);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double reg_lower_gamma(double a, double x);

// E_{alpha,beta}(z). Relative accuracy 1e-10 for |z| <= 50, absolute 1e-12
// for z <= -50. Hybrid method: power series inside a per-alpha radius,
// an integral representation in the mid negative range, asymptotic expansion
// far out; alpha = 1 uses a cancellation-free confluent transform.
double ml_eval(MlParams p, double z);

// k-th derivative of E_{alpha,beta} at z by term-wise differentiated series,
// k <= 4. k = 0 delegates to ml_eval.
double ml_deriv(MlParams p, double z, int k);

// Mittag-Leffler density f_mu(t) = lambda t^(mu-1) E_{mu,mu}(-lambda t^mu), t > 0.
double ml_density(MlDistParams p, double t);

// Mittag-Leffler CDF 1 - E_{mu,1}(-lambda t^mu), t >= 0.
double ml_cdf(MlDistParams p, double t);

// Gamma(shape, rate) density (rate parameterization, mean shape/rate).
double gamma_density(double shape, double rate, double y);

// Regime-switch radii used by ml_eval, exposed so tests can probe crossover
// consistency right at the switch points.
double ml_series_radius(double alpha);
double ml_asymptotic_radius(double alpha);

}  // namespace frisk
