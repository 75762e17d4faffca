// Independent test-side oracles. Everything here is implemented from the
// defining formulas with basic numerics (adaptive Simpson, trapezoid marching,
// boundary winding), deliberately sharing no code with the library under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a,
                           double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0) throw std::runtime_error("simpson: max depth");
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-10, int depth = 48) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Semi-infinite integral by mapping [0,inf) -> [0,1) with x = a + s*t/(1-t).
inline double simpson_tail(const std::function<double(double)>& f, double a,
                           double scale, double tol = 1e-10) {
    auto g = [&](double t) {
        double om = 1.0 - t;
        double x = a + scale * t / om;
        return f(x) * scale / (om * om);
    };
    return simpson(g, 0.0, 1.0 - 1e-9, tol);
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov: scaled statistic D * (sqrt(n) + 0.12 + 0.11/sqrt(n)).
inline double ks_scaled(std::vector<double> sample,
                        const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double c = cdf(sample[i]);
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::fabs(c - lo), std::fabs(c - hi)));
    }
    double sn = std::sqrt(n);
    return d * (sn + 0.12 + 0.11 / sn);
}

// ---------------------------------------------------------------------------
// Volterra trapezoid marcher for the mu->0 limit equation with Exp(alpha)
// claims: (1+l2) psi(u) = l2 [ integral_0^u psi(u-y) f(y) dy + 1 - F(u) ].
inline std::vector<double> volterra_psi0(double lambda2, double alpha, double h,
                                         std::size_t n) {
    std::vector<double> psi(n + 1), fx(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        fx[i] = alpha * std::exp(-alpha * h * static_cast<double>(i));
    psi[0] = lambda2 / (lambda2 + 1.0);
    for (std::size_t i = 1; i <= n; ++i) {
        double u = h * static_cast<double>(i);
        double rhs = std::exp(-alpha * u);  // 1 - F(u)
        double conv = 0.5 * psi[0] * fx[i];
        for (std::size_t j = 1; j < i; ++j) conv += psi[j] * fx[i - j];
        rhs += h * conv;
        psi[i] = lambda2 * rhs / (lambda2 + 1.0 - 0.5 * h * lambda2 * fx[0]);
    }
    return psi;
}

// ---------------------------------------------------------------------------
// Argument-principle zero count of an analytic function inside the rectangle
// [re_lo, re_hi] x [im_lo, im_hi]: total winding of f along the boundary.
// Adaptive edge refinement keeps each phase step below pi/2.
inline int winding_zero_count(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    double re_lo, double re_hi, double im_lo, double im_hi) {
    using C = std::complex<double>;
    std::vector<C> corners = {C(re_lo, im_lo), C(re_hi, im_lo), C(re_hi, im_hi),
                              C(re_lo, im_hi), C(re_lo, im_lo)};
    double total = 0.0;
    for (std::size_t e = 0; e + 1 < corners.size(); ++e) {
        C a = corners[e], b = corners[e + 1];
        std::size_t steps = 64;
        for (int attempt = 0; attempt < 14; ++attempt) {
            double acc = 0.0;
            bool ok = true;
            C prev = f(a);
            for (std::size_t k = 1; k <= steps && ok; ++k) {
                double t = static_cast<double>(k) / static_cast<double>(steps);
                C cur = f(a + (b - a) * t);
                if (std::abs(cur) == 0.0 || std::abs(prev) == 0.0)
                    throw std::runtime_error("winding: zero on contour");
                double dphi = std::arg(cur / prev);
                if (std::fabs(dphi) > 1.5707963267948966) ok = false;
                acc += dphi;
                prev = cur;
            }
            if (ok) {
                total += acc;
                break;
            }
            steps *= 2;
            if (attempt == 13) throw std::runtime_error("winding: no convergence");
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * 3.14159265358979323846)));
}

// ---------------------------------------------------------------------------
// Closed-form ruin probabilities.

// Gamma(r, l1) inter-arrival, Exp(alpha) claims: psi(u) =
// (l1/(c x2))^r exp(-(x2 - l1/c) u), x2 the larger positive root.
inline double psi_gamma_exp(double r, double l1, double c, double x2, double u) {
    return std::pow(l1 / (c * x2), r) * std::exp(-(x2 - l1 / c) * u);
}

// Gamma(r, l1) inter-arrival, Gamma(2, alpha) claims, shifted roots z2 < z3
// (x-space, x = z + l1/c): two-exponential form.
inline double psi_gamma_erlang2(double r, double l1, double c, double z2,
                                double z3, double u) {
    double a2 = (l1 / c - z3) / (z2 - z3) * std::pow(l1 / (c * z2), r) *
                std::exp((l1 / c - z2) * u);
    double a3 = (l1 / c - z2) / (z3 - z2) * std::pow(l1 / (c * z3), r) *
                std::exp((l1 / c - z3) * u);
    return a2 + a3;
}

// ML(mu, l2) inter-arrival, Exp(alpha) claims: psi(u) = (1 - x2/alpha) e^{-x2 u}.
inline double psi_ml_exp(double alpha, double x2, double u) {
    return (1.0 - x2 / alpha) * std::exp(-x2 * u);
}

// mu -> 0 limit with Exp(alpha) claims.
inline double psi_zero_closed(double lambda2, double alpha, double u) {
    double rho = lambda2 / (lambda2 + 1.0);
    return rho * std::exp(-alpha * u / (lambda2 + 1.0));
}

// ---------------------------------------------------------------------------
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

}  // namespace oracles
