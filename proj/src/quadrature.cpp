#include "frisk/quadrature.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "frisk/errors.hpp"

namespace frisk {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct GkResult {
    double kronrod;
    double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
    double fc = f(mid);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = hw * kXgk[i];
        double fsum = f(mid - dx) + f(mid + dx);
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    resk *= hw;
    resg *= hw;
    double err = std::abs(resk - resg);
    return {resk, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol) {
    if (!(b > a)) return 0.0;
    struct Seg {
        double a, b, val, err;
    };
    GkResult whole = gk15(f, a, b);
    if (!std::isfinite(whole.kronrod))
        throw EvalError("quadrature", "non-finite integrand value");
    std::vector<Seg> segs{{a, b, whole.kronrod, whole.err}};
    for (int iter = 0; iter < 4000; ++iter) {
        double total = 0.0, err_total = 0.0;
        size_t worst = 0;
        double worst_err = -1.0;
        for (size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            err_total += segs[i].err;
            if (segs[i].err > worst_err) {
                worst_err = segs[i].err;
                worst = i;
            }
        }
        if (err_total <= std::max(abs_tol, rel_tol * std::abs(total))) return total;
        Seg s = segs[worst];
        if (s.b - s.a < 1e-15 * (std::abs(s.a) + std::abs(s.b)) + 1e-300)
            throw EvalError("quadrature", "interval shrank below resolution");
        double m = 0.5 * (s.a + s.b);
        GkResult l = gk15(f, s.a, m), r = gk15(f, m, s.b);
        if (!std::isfinite(l.kronrod) || !std::isfinite(r.kronrod))
            throw EvalError("quadrature", "non-finite integrand value");
        segs[worst] = {s.a, m, l.kronrod, l.err};
        segs.push_back({m, s.b, r.kronrod, r.err});
    }
    throw EvalError("quadrature", "adaptive refinement did not converge");
}

double integrate_ts(const std::function<double(double)>& f, double a, double b,
                    double tol) {
    if (!(b > a)) return 0.0;
    double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    const double tmax = 3.8;  // tanh(pi/2 sinh 3.8) is within 1 ulp of 1
    auto eval_at = [&](double t, double& x, double& w) -> bool {
        double s = 0.5 * 3.14159265358979323846 * std::sinh(t);
        double ch = std::cosh(t);
        double th = std::tanh(s);
        x = c + hw * th;
        if (x <= a || x >= b) return false;
        double sech = 1.0 / std::cosh(s);
        w = hw * 0.5 * 3.14159265358979323846 * ch * sech * sech;
        return w > 0.0 && std::isfinite(w);
    };
    double h = 1.0;
    double x0 = c, w0 = 0.0;
    eval_at(0.0, x0, w0);
    double fx = f(x0);
    if (!std::isfinite(fx)) throw EvalError("quadrature", "non-finite integrand value");
    double sum = fx * w0;
    for (int k = 1; k <= static_cast<int>(tmax); ++k) {
        double xp, wp, xm, wm;
        if (eval_at(static_cast<double>(k), xp, wp)) {
            double v = f(xp);
            if (!std::isfinite(v)) throw EvalError("quadrature", "non-finite integrand value");
            sum += v * wp;
        }
        if (eval_at(-static_cast<double>(k), xm, wm)) {
            double v = f(xm);
            if (!std::isfinite(v)) throw EvalError("quadrature", "non-finite integrand value");
            sum += v * wm;
        }
    }
    double prev = sum * h;
    for (int level = 0; level < 12; ++level) {
        // add points at odd multiples of h/2
        double hh = 0.5 * h;
        double add = 0.0;
        for (int k = 1;; k += 2) {
            double t = k * hh;
            if (t > tmax) break;
            double xp, wp, xm, wm;
            double contrib = 0.0;
            if (eval_at(t, xp, wp)) {
                double v = f(xp);
                if (!std::isfinite(v))
                    throw EvalError("quadrature", "non-finite integrand value");
                contrib += v * wp;
            }
            if (eval_at(-t, xm, wm)) {
                double v = f(xm);
                if (!std::isfinite(v))
                    throw EvalError("quadrature", "non-finite integrand value");
                contrib += v * wm;
            }
            add += contrib;
        }
        sum += add;
        h = hh;
        double cur = sum * h;
        if (level >= 2 && std::abs(cur - prev) <= tol * std::abs(cur) + 1e-305)
            return cur;
        prev = cur;
    }
    return prev;  // best effort at deepest level
}

double integrate_exp_tail(const std::function<double(double)>& f, double a,
                          double scale, double tol) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw DomainError("integrate_exp_tail: requires finite scale > 0");
    auto g = [&](double t) {
        double y = a - scale * std::log1p(-t);
        return f(y) * scale / (1.0 - t);
    };
    return integrate_ts(g, 0.0, 1.0, tol);
}

}  // namespace frisk
