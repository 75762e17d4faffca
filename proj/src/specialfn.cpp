#include "frisk/specialfn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "frisk/quadrature.hpp"

namespace frisk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw DomainError(std::string(name) + " must be finite");
}

double cospi(double x) { return sinpi(x + 0.5); }

// Lanczos g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double xm1) {
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (xm1 + i);
    return a;
}

// Kahan-compensated accumulator.
struct Acc {
    double sum = 0.0, comp = 0.0;
    void add(double t) {
        double y = t - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
};

// ---------------------------------------------------------------------------
// Mittag-Leffler machinery. Regions as functions of alpha (z < 0):
//   |z| <= series_radius     : power series (alternating but benign here)
//   |z| >= asymptotic_radius : asymptotic expansion in 1/z
//   in between               : Gorenflo-Loutchko-Luchko integral representation
// alpha = 1 short-circuits to a confluent (Kummer) transform with all-positive
// terms, valid on the whole negative axis.
// ---------------------------------------------------------------------------

// Power series sum_k z^k / Gamma(alpha k + beta), terms in log space.
double ml_series(double a, double b, double z) {
    double lz = std::log(std::abs(z));
    bool neg = z < 0.0;
    Acc acc;
    acc.add(recip_gamma(b));
    int below = 0;
    for (int k = 1; k <= 10000; ++k) {
        double lt = k * lz - log_gamma(a * k + b);
        if (lt > 700.0) {
            if (!neg) return kInf;  // positive z: sum of positives overflows
            throw EvalError("series", "series term overflow for E_ML");
        }
        double t = std::exp(lt);
        if (neg && (k & 1)) t = -t;
        acc.add(t);
        if (std::abs(t) < 1e-16 * std::abs(acc.sum) + 1e-300) {
            if (++below >= 2) return acc.sum;
        } else {
            below = 0;
        }
    }
    throw EvalError("series", "series for E_ML did not converge in 10000 terms");
}

// k-th derivative series (also used with k = 0 only via ml_deriv's delegate).
double ml_deriv_series(double a, double b, double z, int k) {
    if (z == 0.0) {
        double lfall = log_gamma(static_cast<double>(k + 1));
        return std::exp(lfall - log_gamma(a * k + b));
    }
    double lz = std::log(std::abs(z));
    bool neg = z < 0.0;
    Acc acc;
    int below = 0;
    for (int j = k; j <= 10000 + k; ++j) {
        double lfall = 0.0;
        for (int i = 0; i < k; ++i) lfall += std::log(static_cast<double>(j - i));
        double lt = lfall + (j - k) * lz - log_gamma(a * j + b);
        if (lt > 700.0) {
            if (!neg) return kInf;
            throw EvalError("derivative series", "term overflow for E_ML derivative");
        }
        double t = std::exp(lt);
        if (neg && ((j - k) & 1)) t = -t;
        acc.add(t);
        if (std::abs(t) < 1e-16 * std::abs(acc.sum) + 1e-300) {
            if (++below >= 2) return acc.sum;
        } else {
            below = 0;
        }
    }
    throw EvalError("derivative series", "E_ML derivative series did not converge");
}

// alpha = 1, z < 0: E_{1,b}(z) = e^z * sum_k c_k (-z)^k / k!, c_0 = 1,
// c_k = (b-1)/(b-1+k). All terms on one sign scale; no cancellation.
double ml_alpha1_neg(double b, double z) {
    double w = -z;
    Acc acc;
    acc.add(1.0);
    double pw = 1.0;  // w^k / k!
    for (int k = 1; k <= 200000; ++k) {
        pw *= w / k;
        double t = (b - 1.0) / (b - 1.0 + k) * pw;
        acc.add(t);
        if (pw < 1e-17 * std::abs(acc.sum) * std::min(1.0, b) + 1e-300 && k > w) break;
    }
    return acc.sum * std::exp(z - log_gamma(b));
}

// Asymptotic expansion for large |z|, z < 0:
//   E_{a,b}(z) ~ -sum_{k>=1} z^{-k} / Gamma(b - a k).
// Optimal truncation is decided on a smooth envelope (the |sin|-free magnitude
// of 1/Gamma) so reflection-formula zeros do not stop the sum early.
double ml_asym_neg(double a, double b, double z) {
    double lzn = std::log(-z);
    Acc acc;
    double prev_env = kInf;
    int grew = 0;
    for (int k = 1; k <= 400; ++k) {
        double arg = b - a * k;          // argument of Gamma in the denominator
        double refl = 1.0 - arg;         // = 1 - b + a k
        double env;
        if (refl > 0.5) {
            env = std::exp(-k * lzn + log_gamma(refl)) / kPi;
        } else {
            env = std::abs(std::exp(-k * lzn) * recip_gamma(arg));
        }
        if (env >= prev_env) {
            if (++grew >= 2) break;
        } else {
            grew = 0;
        }
        prev_env = env;
        // -z^{-k} with z < 0 is (-1)^{k+1} |z|^{-k}
        double lmag = -k * lzn;
        double sign = (k & 1) ? 1.0 : -1.0;
        double t = (lmag < -745.0) ? 0.0 : sign * std::exp(lmag) * recip_gamma(arg);
        acc.add(t);
        if (env < 1e-320) break;
    }
    return acc.sum;
}

// Oscillatory saddle contribution for alpha in (1, 3], z < 0:
//   (2/a) Re[ w^{1-b} e^w ], w = z^{1/a} on the principal branch.
double ml_saddle_neg(double a, double b, double z) {
    double m = std::pow(-z, 1.0 / a);
    double ph = kPi / a;
    double wr = m * std::cos(ph), wi = m * std::sin(ph);
    return 2.0 / a * std::pow(m, 1.0 - b) * std::exp(wr) *
           std::cos(wi + (1.0 - b) * ph);
}

// Gorenflo-Loutchko-Luchko integral for z < 0, alpha < 1, beta in (1-alpha, 1].
// After u = r^{1/alpha} and w = u^q with q = alpha - beta + 1 (which flattens
// the u^{alpha-beta} prefactor), the integrand is
//   g(w) = e^{-u} [u^a s1 - z s2] / (q*pi*((u^a - z ca)^2 + (z sa)^2)),
// s1 = sin(pi(1-beta)), s2 = sin(pi(1-beta+alpha)), u = w^{1/q}.
double ml_gll_base(double a, double b, double z) {
    double q = a - b + 1.0;  // > 0 since b <= 1 < 1 + a
    double s1 = sinpi(1.0 - b);
    double s2 = sinpi(1.0 - b + a);
    double ca = cospi(a), sa = sinpi(a);
    auto g = [&](double w) {
        double u = std::pow(w, 1.0 / q);
        double ua = std::pow(u, a);
        double num = std::exp(-u) * (ua * s1 - z * s2);
        double dr = ua - z * ca;
        double den = dr * dr + (z * sa) * (z * sa);
        return num / (q * kPi * den);
    };
    // Knots in u: resonance peak at u* = (z ca)^{1/a} when cos(pi a) < 0.
    double u_peak = (ca < 0.0) ? std::pow(z * ca, 1.0 / a) : 0.0;
    double u_max = 45.0 + 2.0 * u_peak;
    double uk[8];
    int nk = 0;
    uk[nk++] = 1.0;
    uk[nk++] = 5.0;
    uk[nk++] = 20.0;
    if (u_peak > 0.0) {
        uk[nk++] = 0.5 * u_peak;
        uk[nk++] = u_peak;
        uk[nk++] = 2.0 * u_peak;
    }
    double w_prev = 0.0;
    double total = 0.0;
    // sort the active knots (tiny array, insertion sort)
    for (int i = 1; i < nk; ++i)
        for (int j = i; j > 0 && uk[j] < uk[j - 1]; --j) std::swap(uk[j], uk[j - 1]);
    for (int i = 0; i <= nk; ++i) {
        double u_hi = (i < nk) ? uk[i] : u_max;
        if (u_hi >= u_max && i < nk) continue;
        if (u_hi <= 0.0) continue;
        double w_hi = std::pow(u_hi, q);
        if (w_hi <= w_prev) continue;
        total += integrate(g, w_prev, w_hi, 1e-13, 1e-300);
        w_prev = w_hi;
    }
    return total;
}

// Beta-reduction wrapper: walk beta into (1-alpha, 1] with the recurrence
// E_{a,b+a}(z) = (E_{a,b}(z) - 1/Gamma(b))/z, then undo.
double ml_gll(double a, double b, double z) {
    int m = static_cast<int>(std::ceil((b - 1.0) / a));
    double b0 = b - m * a;
    double v = ml_gll_base(a, b0, z);
    if (m >= 0) {
        double bb = b0;
        for (int i = 0; i < m; ++i) {
            v = (v - recip_gamma(bb)) / z;
            bb += a;
        }
    } else {
        double bb = b0;
        for (int i = 0; i < -m; ++i) {
            bb -= a;
            v = recip_gamma(bb) + z * v;
        }
    }
    return v;
}

}  // namespace

double sinpi(double x) {
    if (!std::isfinite(x)) throw DomainError("sinpi: non-finite argument");
    double y = x - 2.0 * std::round(0.5 * x);
    if (y > 0.5)
        y = 1.0 - y;
    else if (y < -0.5)
        y = -1.0 - y;
    return std::sin(kPi * y);
}

double gamma_fn(double x) {
    require_finite(x, "gamma_fn: x");
    if (x <= 0.0 && x == std::round(x)) throw DomainError("gamma_fn: pole at nonpositive integer");
    if (x < 0.5) return kPi / (sinpi(x) * gamma_fn(1.0 - x));
    double xm1 = x - 1.0;
    double t = xm1 + 7.5;
    if (x > 140.0)  // direct power would overflow before the exp(-t) cancels it
        return std::exp(0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(t) - t +
                        std::log(lanczos_sum(xm1)));
    return std::sqrt(2.0 * kPi) * std::pow(t, xm1 + 0.5) * std::exp(-t) * lanczos_sum(xm1);
}

double log_gamma(double x) {
    require_finite(x, "log_gamma: x");
    if (x <= 0.0) throw DomainError("log_gamma: requires x > 0");
    if (x < 0.5) return std::log(gamma_fn(x));
    double xm1 = x - 1.0;
    double t = xm1 + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(t) - t +
           std::log(lanczos_sum(xm1));
}

double recip_gamma(double x) {
    require_finite(x, "recip_gamma: x");
    if (x <= 0.0 && x == std::round(x)) return 0.0;
    if (x >= 0.5) {
        double g = gamma_fn(x);
        return std::isinf(g) ? 0.0 : 1.0 / g;
    }
    double s = sinpi(x);
    double lg = log_gamma(1.0 - x);
    if (lg > 700.0) return s > 0.0 ? kInf : -kInf;  // |1/Gamma| overflows
    return s * std::exp(lg) / kPi;
}

double reg_lower_gamma(double a, double x) {
    require_finite(a, "reg_lower_gamma: a");
    require_finite(x, "reg_lower_gamma: x");
    if (a <= 0.0) throw DomainError("reg_lower_gamma: requires a > 0");
    if (x < 0.0) throw DomainError("reg_lower_gamma: requires x >= 0");
    if (x == 0.0) return 0.0;
    double lpre = a * std::log(x) - x - log_gamma(a);
    if (x < a + 1.0) {
        // series for P
        double term = 1.0 / a, sum = term;
        for (int n = 1; n <= 10000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        double p = sum * std::exp(lpre);
        return p > 1.0 ? 1.0 : p;
    }
    // Lentz continued fraction for Q
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    double q = std::exp(lpre) * h;
    double p = 1.0 - q;
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double ml_series_radius(double alpha) {
    if (alpha <= 1.0) return std::min(5.0 / alpha, std::pow(5.5, alpha));
    return std::pow(5.5, alpha);
}

double ml_asymptotic_radius(double alpha) { return std::pow(35.0, alpha); }

double ml_eval(MlParams p, double z) {
    require_finite(p.alpha, "ml_eval: alpha");
    require_finite(p.beta, "ml_eval: beta");
    require_finite(z, "ml_eval: z");
    if (p.alpha <= 0.0) throw DomainError("ml_eval: requires alpha > 0");
    if (p.beta <= 0.0) throw DomainError("ml_eval: requires beta > 0");
    double a = p.alpha, b = p.beta;
    if (z == 0.0) return recip_gamma(b);
    if (z > 0.0) {
        if (std::log(z) / a > std::log(709.0)) return kInf;  // e^{z^{1/a}} overflows
        return ml_series(a, b, z);
    }
    if (a == 1.0) {
        return (z > -700.0) ? ml_alpha1_neg(b, z) : ml_asym_neg(a, b, z);
    }
    double az = -z;
    if (a < 1.0) {
        if (az <= ml_series_radius(a)) return ml_series(a, b, z);
        if (az >= ml_asymptotic_radius(a)) return ml_asym_neg(a, b, z);
        return ml_gll(a, b, z);
    }
    // alpha > 1
    if (az <= ml_series_radius(a)) return ml_series(a, b, z);
    if (a <= 3.0 && az >= ml_asymptotic_radius(a))
        return ml_asym_neg(a, b, z) + ml_saddle_neg(a, b, z);
    throw EvalError("dispatch",
                    "no validated method for E_ML with alpha > 1 in the mid "
                    "negative range");
}

double ml_deriv(MlParams p, double z, int k) {
    if (k < 0 || k > 4) throw DomainError("ml_deriv: requires 0 <= k <= 4");
    if (k == 0) return ml_eval(p, z);
    require_finite(p.alpha, "ml_deriv: alpha");
    require_finite(p.beta, "ml_deriv: beta");
    require_finite(z, "ml_deriv: z");
    if (p.alpha <= 0.0) throw DomainError("ml_deriv: requires alpha > 0");
    if (p.beta <= 0.0) throw DomainError("ml_deriv: requires beta > 0");
    if (z < 0.0 && -z > ml_series_radius(p.alpha))
        throw EvalError("derivative series",
                        "E_ML derivative supported only inside the series radius "
                        "for negative arguments");
    return ml_deriv_series(p.alpha, p.beta, z, k);
}

double ml_density(MlDistParams p, double t) {
    require_finite(p.mu, "ml_density: mu");
    require_finite(p.lambda, "ml_density: lambda");
    if (p.mu <= 0.0 || p.mu > 1.0) throw DomainError("ml_density: requires 0 < mu <= 1");
    if (p.lambda <= 0.0) throw DomainError("ml_density: requires lambda > 0");
    require_finite(t, "ml_density: t");
    if (t <= 0.0) throw DomainError("ml_density: requires t > 0");
    double v = p.lambda * std::pow(t, p.mu - 1.0) *
               ml_eval({p.mu, p.mu}, -p.lambda * std::pow(t, p.mu));
    return v < 0.0 ? 0.0 : v;
}

double ml_cdf(MlDistParams p, double t) {
    require_finite(p.mu, "ml_cdf: mu");
    require_finite(p.lambda, "ml_cdf: lambda");
    if (p.mu <= 0.0 || p.mu > 1.0) throw DomainError("ml_cdf: requires 0 < mu <= 1");
    if (p.lambda <= 0.0) throw DomainError("ml_cdf: requires lambda > 0");
    require_finite(t, "ml_cdf: t");
    if (t < 0.0) throw DomainError("ml_cdf: requires t >= 0");
    if (t == 0.0) return 0.0;
    double v = 1.0 - ml_eval({p.mu, 1.0}, -p.lambda * std::pow(t, p.mu));
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double gamma_density(double shape, double rate, double y) {
    require_finite(shape, "gamma_density: shape");
    require_finite(rate, "gamma_density: rate");
    require_finite(y, "gamma_density: y");
    if (shape <= 0.0 || rate <= 0.0)
        throw DomainError("gamma_density: requires shape > 0 and rate > 0");
    if (y < 0.0) throw DomainError("gamma_density: requires y >= 0");
    if (y == 0.0) {
        if (shape < 1.0) return kInf;
        if (shape == 1.0) return rate;
        return 0.0;
    }
    return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(y) -
                    rate * y - log_gamma(shape));
}

}  // namespace frisk
