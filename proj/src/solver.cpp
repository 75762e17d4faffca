#include "frisk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "frisk/specialfn.hpp"

namespace frisk {

namespace {

using cplx = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) < tol;
}

// Integer exponents by repeated multiplication: exact conjugate symmetry and
// no branch-cut trouble for negative real bases.
cplx cpow(cplx base, double expo) {
    if (near_integer(expo, 1e-12) && std::abs(expo) < 64.0) {
        long n = std::lround(expo);
        cplx r = 1.0;
        cplx b = base;
        long m = std::labs(n);
        for (long i = 0; i < m; ++i) r *= b;
        return n < 0 ? 1.0 / r : r;
    }
    return std::pow(base, expo);
}

bool has_fractional_power(const ModelSpec& spec) {
    for (const auto& m : spec.interarrival_mls)
        if (m.mu < 1.0 - 1e-12) return true;
    for (const auto& g : spec.interarrival_gammas)
        if (!near_integer(g.shape, 1e-12)) return true;
    return false;
}

// Product part of the characteristic function; z = 0 uses the rate itself for
// the z^mu factors so the constant term comes from the identical code path.
cplx char_product(const ModelSpec& spec, cplx z) {
    const double c = spec.premium_rate;
    cplx acc = 1.0;
    for (const auto& g : spec.claim_gammas) acc *= cpow(g.rate - z, g.shape);
    for (const auto& m : spec.interarrival_mls) {
        if (z == cplx(0.0, 0.0))
            acc *= m.rate;
        else
            acc *= std::pow(c, m.mu) * cpow(z, m.mu) + m.rate;
    }
    for (const auto& g : spec.interarrival_gammas) acc *= cpow(c * z + g.rate, g.shape);
    return acc;
}

int total_claim_shape(const ModelSpec& spec) {
    double n = 0.0;
    for (const auto& g : spec.claim_gammas) {
        if (!near_integer(g.shape))
            throw UnsupportedSpecError(
                "root finding requires integer claim shapes; got shape " +
                std::to_string(g.shape));
        n += std::round(g.shape);
    }
    return static_cast<int>(std::lround(n));
}

struct NewtonOut {
    cplx z;
    double fabs = kInf;
    bool ok = false;
};

NewtonOut newton_polish(const std::function<cplx(cplx)>& f, cplx z0, double scale,
                        double tol, double zmax) {
    auto safe = [&](cplx z, bool& ok) -> cplx {
        try {
            ok = true;
            return f(z);
        } catch (const DomainError&) {
            ok = false;
            return cplx(0.0, 0.0);
        }
    };
    cplx z = z0;
    bool ok0 = false;
    cplx fz = safe(z, ok0);
    if (!ok0) return {z, kInf, false};
    for (int it = 0; it < 100; ++it) {
        if (std::abs(fz) <= tol * scale) break;
        double h = 1e-7 * (1.0 + std::abs(z));
        bool o1 = false, o2 = false;
        cplx fp = (safe(z + h, o1) - safe(z - h, o2)) / (2.0 * h);
        if (!o1 || !o2 || fp == cplx(0.0, 0.0)) break;
        cplx step = fz / fp;
        double lam = 1.0;
        cplx zn = z, fn = fz;
        bool improved = false;
        for (int halve = 0; halve < 50; ++halve) {
            zn = z - lam * step;
            bool o3 = false;
            cplx ft = safe(zn, o3);
            if (o3 && std::abs(ft) < std::abs(fz)) {
                fn = ft;
                improved = true;
                break;
            }
            lam *= 0.5;
        }
        if (!improved) break;
        double move = std::abs(zn - z);
        z = zn;
        fz = fn;
        if (move < 1e-14 * (1.0 + std::abs(z))) break;
        if (std::abs(z) > 3.0 * zmax) return {z, std::abs(fz), false};
    }
    double fa = std::abs(fz);
    return {z, fa, fa <= 1e4 * tol * scale && z.real() > 0.0};
}

void push_unique(std::vector<cplx>& zs, cplx z) {
    for (const auto& w : zs)
        if (std::abs(w - z) <= 1e-10 * (1.0 + std::abs(w))) return;
    zs.push_back(z);
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<CharRoot> finish_roots(const ModelSpec& spec, std::vector<cplx> zs,
                                   int want, double scale, double tol) {
    auto f = [&](cplx z) { return characteristic_fn(spec, z); };
    // conjugate closure
    std::vector<cplx> closed;
    for (const auto& z : zs) {
        if (std::abs(z.imag()) <= 1e-9) {
            push_unique(closed, cplx(z.real(), 0.0));
        } else {
            cplx zp(z.real(), std::abs(z.imag()));
            push_unique(closed, zp);
            push_unique(closed, std::conj(zp));
        }
    }
    std::sort(closed.begin(), closed.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    // pairwise separation
    for (std::size_t i = 0; i < closed.size(); ++i)
        for (std::size_t j = i + 1; j < closed.size(); ++j)
            if (std::abs(closed[i] - closed[j]) < 1e-8)
                throw MultiplicityError(
                    "characteristic roots closer than the supported separation of 1e-8");
    if (static_cast<int>(closed.size()) != want) {
        std::ostringstream os;
        os << "expected " << want << " characteristic roots with positive real part, found "
           << closed.size() << ":";
        for (const auto& z : closed) os << " (" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
        throw RootCountError(os.str());
    }
    std::vector<CharRoot> out;
    out.reserve(closed.size());
    for (const auto& z : closed) {
        CharRoot r;
        r.z = z;
        r.residual = std::abs(f(z)) / scale;
        r.is_conjugate_pair_member = std::abs(z.imag()) > 1e-9;
        if (r.residual > 1e4 * tol)
            throw RootCountError("root candidate failed residual check at (" +
                                 std::to_string(z.real()) + ", " + std::to_string(z.imag()) + "i)");
        out.push_back(r);
    }
    return out;
}

std::vector<CharRoot> roots_polynomial(const ModelSpec& spec, int want, double scale,
                                       double tol) {
    const double c = spec.premium_rate;
    std::vector<double> poly{1.0};
    for (const auto& g : spec.claim_gammas) {
        int s = static_cast<int>(std::lround(g.shape));
        for (int k = 0; k < s; ++k) poly = poly_mul(poly, {g.rate, -1.0});
    }
    for (const auto& g : spec.interarrival_gammas) {
        int r = static_cast<int>(std::lround(g.shape));
        for (int k = 0; k < r; ++k) poly = poly_mul(poly, {g.rate, c});
    }
    for (const auto& m : spec.interarrival_mls) poly = poly_mul(poly, {m.rate, std::pow(c, m.mu)});
    // subtract the constant term: the difference vanishes at z = 0, so deflate
    poly[0] -= scale;
    if (std::abs(poly[0]) > 1e-9 * scale)
        throw RootCountError("polynomial constant term failed to cancel");
    std::vector<double> q(poly.begin() + 1, poly.end());
    while (!q.empty() && q.back() == 0.0) q.pop_back();
    const int d = static_cast<int>(q.size()) - 1;
    if (d < 1) throw RootCountError("degenerate characteristic polynomial");
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -q[static_cast<std::size_t>(i)] / q.back();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    auto f = [&](cplx z) { return characteristic_fn(spec, z); };
    double zmax = 0.0;
    for (int i = 0; i < d; ++i) zmax = std::max(zmax, std::abs(es.eigenvalues()[i]));
    std::vector<cplx> zs;
    for (int i = 0; i < d; ++i) {
        cplx z = es.eigenvalues()[i];
        if (z.real() <= 1e-9) continue;
        NewtonOut nr = newton_polish(f, z, scale, tol, zmax + 1.0);
        if (nr.ok) push_unique(zs, nr.z);
    }
    return finish_roots(spec, zs, want, scale, tol);
}

std::vector<CharRoot> roots_scan(const ModelSpec& spec, int want, double scale,
                                 double tol) {
    const double c = spec.premium_rate;
    double amax = 0.0, lmax = 0.0;
    for (const auto& g : spec.claim_gammas) amax = std::max(amax, g.rate);
    for (const auto& g : spec.interarrival_gammas) lmax = std::max(lmax, g.rate / c);
    double zmax = 10.0 * (amax + lmax + 1.0);
    auto f = [&](cplx z) { return characteristic_fn(spec, z); };
    auto freal = [&](double x) { return characteristic_fn(spec, cplx(x, 0.0)).real(); };

    std::vector<cplx> zs;
    const int m = 8192;
    double prev_x = zmax / m * 0.01;  // stay off the origin (f(0) = 0 by design)
    double prev_v = freal(prev_x);
    for (int j = 1; j <= m; ++j) {
        double x = zmax * j / m;
        double v = freal(x);
        if (std::abs(v) < 1e-9 * scale) {
            NewtonOut nr = newton_polish(f, cplx(x, 0.0), scale, tol, zmax);
            if (nr.ok && std::abs(nr.z.imag()) < 1e-9 && nr.z.real() > 1e-12)
                push_unique(zs, cplx(nr.z.real(), 0.0));
        } else if (prev_v * v < 0.0) {
            double lo = prev_x, hi = x, vlo = prev_v;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                double vm = freal(mid);
                if (vm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (vlo * vm < 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    vlo = vm;
                }
                if (hi - lo < 1e-14 * (1.0 + hi)) break;
            }
            NewtonOut nr = newton_polish(f, cplx(0.5 * (lo + hi), 0.0), scale, tol, zmax);
            if (nr.ok && std::abs(nr.z.imag()) < 1e-9 && nr.z.real() > 1e-12)
                push_unique(zs, cplx(nr.z.real(), 0.0));
        }
        prev_x = x;
        prev_v = v;
    }
    auto count_closed = [&]() {
        int n = 0;
        for (const auto& z : zs) n += (std::abs(z.imag()) > 1e-9) ? 2 : 1;
        return n;
    };
    if (count_closed() < want) {
        // Newton sweep from a grid of complex starts in the upper half plane.
        const int gr = 40, gi = 40;
        for (int a = 1; a <= gr && count_closed() < want; ++a) {
            for (int b = 1; b <= gi; ++b) {
                cplx z0(zmax * a / gr, zmax * b / gi);
                NewtonOut nr = newton_polish(f, z0, scale, tol, zmax);
                if (!nr.ok || nr.z.real() <= 1e-12) continue;
                if (std::abs(nr.z.imag()) <= 1e-9)
                    push_unique(zs, cplx(nr.z.real(), 0.0));
                else
                    push_unique(zs, cplx(nr.z.real(), std::abs(nr.z.imag())));
            }
        }
    }
    return finish_roots(spec, zs, want, scale, tol);
}

nlohmann::json cplx_to_json(const cplx& z) {
    return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

cplx cplx_from_json(const nlohmann::json& j) {
    return cplx(j.at("re").get<double>(), j.at("im").get<double>());
}

}  // namespace

std::complex<double> characteristic_fn(const ModelSpec& spec, std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("characteristic_fn: non-finite z");
    if (z.imag() == 0.0 && z.real() < 0.0 && has_fractional_power(spec))
        throw DomainError(
            "characteristic_fn: negative real z lies on the principal branch cut");
    return char_product(spec, z) - char_product(spec, cplx(0.0, 0.0));
}

double characteristic_scale(const ModelSpec& spec) {
    return char_product(spec, cplx(0.0, 0.0)).real();
}

std::vector<CharRoot> find_roots(const ModelSpec& spec, double tol) {
    int want = total_claim_shape(spec);
    double scale = characteristic_scale(spec);
    bool poly = true;
    for (const auto& g : spec.interarrival_gammas)
        if (!near_integer(g.shape, 1e-12)) poly = false;
    for (const auto& m : spec.interarrival_mls)
        if (std::abs(m.mu - 1.0) > 1e-12) poly = false;  // mu == 1 stays polynomial
    if (poly) return roots_polynomial(spec, want, scale, tol);
    return roots_scan(spec, want, scale, tol);
}

std::vector<CharRoot> find_roots_general(const ModelSpec& spec, double tol) {
    int want = total_claim_shape(spec);
    double scale = characteristic_scale(spec);
    return roots_scan(spec, want, scale, tol);
}

RuinSolution solve_coefficients(const ModelSpec& spec,
                                const std::vector<CharRoot>& roots) {
    const double c = spec.premium_rate;
    const int n = static_cast<int>(roots.size());
    int want = total_claim_shape(spec);
    if (n != want)
        throw CoefficientError("coefficient ladder needs exactly " +
                               std::to_string(want) + " roots, got " + std::to_string(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(roots[i].z - roots[j].z) < 1e-8)
                throw MultiplicityError(
                    "coefficient ladder requires roots separated by more than 1e-8");

    double lambda_product = 1.0;
    for (const auto& g : spec.interarrival_gammas)
        lambda_product *= std::pow(g.rate, g.shape);
    for (const auto& m : spec.interarrival_mls) lambda_product *= m.rate;

    std::vector<cplx> delta(static_cast<std::size_t>(n), cplx(1.0, 0.0));
    for (int p = 0; p < n; ++p) {
        cplx z = roots[static_cast<std::size_t>(p)].z;
        cplx d = 1.0;
        for (const auto& m : spec.interarrival_mls)
            d *= std::pow(c, m.mu) * cpow(z, m.mu) + m.rate;
        for (const auto& g : spec.interarrival_gammas) d *= cpow(c * z + g.rate, g.shape);
        delta[static_cast<std::size_t>(p)] = d;
    }

    // Ladder rows: row 0 balances the constant; each later row multiplies the
    // per-root running product by (alpha_k - z_p) ... using (-z_p + alpha_k)
    // and the right side by alpha_k, following the claim components in order,
    // with the last-listed component contributing one factor less.
    std::vector<double> seq;
    for (std::size_t k = 0; k < spec.claim_gammas.size(); ++k) {
        int s = static_cast<int>(std::lround(spec.claim_gammas[k].shape));
        int cnt = (k + 1 == spec.claim_gammas.size()) ? s - 1 : s;
        for (int i = 0; i < cnt; ++i) seq.push_back(spec.claim_gammas[k].rate);
    }
    if (static_cast<int>(seq.size()) + 1 != n)
        throw CoefficientError("ladder row count mismatch");

    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd b(n);
    std::vector<cplx> row_prod = delta;
    double alpha_prod = 1.0;
    for (int p = 0; p < n; ++p) A(0, p) = row_prod[static_cast<std::size_t>(p)];
    b(0) = cplx(-lambda_product, 0.0);
    for (int t = 0; t < n - 1; ++t) {
        double a = seq[static_cast<std::size_t>(t)];
        alpha_prod *= a;
        for (int p = 0; p < n; ++p) {
            row_prod[static_cast<std::size_t>(p)] *=
                (-roots[static_cast<std::size_t>(p)].z + a);
            A(t + 1, p) = row_prod[static_cast<std::size_t>(p)];
        }
        b(t + 1) = cplx(-lambda_product * alpha_prod, 0.0);
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd k = lu.solve(b);
    double resid = (A * k - b).norm() / std::max(b.norm(), 1e-300);
    if (!(resid < 1e-6))
        throw CoefficientError("coefficient ladder solve failed (residual " +
                               std::to_string(resid) + ")");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    double smax = svd.singularValues()(0);
    double cond = (smin > 0.0) ? smax / smin : kInf;

    RuinSolution sol;
    sol.model = spec;
    sol.roots = roots;
    sol.coefficients.assign(k.data(), k.data() + n);
    sol.lambda_product = lambda_product;
    sol.delta = delta;
    sol.condition_number = cond;
    sol.condition_warning = cond > 1e10;

    cplx phi0 = cplx(1.0, 0.0);
    for (const auto& kp : sol.coefficients) phi0 += kp;
    if (std::abs(phi0.imag()) > 1e-8 || phi0.real() < -1e-8 || phi0.real() > 1.0 + 1e-8)
        throw CoefficientError(
            "coefficient post-check failed: phi(0) = " + std::to_string(phi0.real()) +
            " + " + std::to_string(phi0.imag()) + "i is outside [0, 1]");
    return sol;
}

RuinSolution solve_model(const ModelSpec& spec, double tol) {
    return solve_coefficients(spec, find_roots(spec, tol));
}

double eval_ruin(const RuinSolution& sol, double u) {
    if (!std::isfinite(u) || u < 0.0) throw DomainError("eval_ruin: requires finite u >= 0");
    cplx phi = cplx(1.0, 0.0);
    for (std::size_t p = 0; p < sol.roots.size(); ++p)
        phi += sol.coefficients[p] * std::exp(-sol.roots[p].z * u);
    if (std::abs(phi.imag()) > 1e-10)
        throw CoefficientError(
            "eval_ruin: imaginary part " + std::to_string(phi.imag()) +
            " exceeds 1e-10; conjugate pairing is broken");
    double psi = 1.0 - phi.real();
    if (psi < -1e-8 || psi > 1.0 + 1e-8)
        throw CoefficientError("eval_ruin: psi(u) = " + std::to_string(psi) +
                               " outside [0, 1] sanity band");
    return psi < 0.0 ? 0.0 : (psi > 1.0 ? 1.0 : psi);
}

LundbergReport lundberg_check(const ModelSpec& spec, const RuinSolution& sol) {
    if (spec.interarrival_gammas.size() != 1 || !spec.interarrival_mls.empty() ||
        spec.claim_gammas.size() != 1 ||
        std::abs(spec.claim_gammas[0].shape - 1.0) > 1e-12)
        throw UnsupportedSpecError(
            "Lundberg check supports a single Gamma inter-arrival component with "
            "exponential claims only");
    double alpha = spec.claim_gammas[0].rate;
    double l1 = spec.interarrival_gammas[0].rate;
    double r = spec.interarrival_gammas[0].shape;
    double c = spec.premium_rate;
    LundbergReport rep;
    rep.s = sol.roots.at(0).z.real();
    double mx = alpha / (alpha - rep.s);
    double mt = std::pow(l1 / (l1 + c * rep.s), r);
    rep.value = mx * mt - 1.0;
    rep.pass = std::abs(rep.value) < 1e-8;
    return rep;
}

double PsiZeroLimit::operator()(double u) const {
    if (!has_curve)
        throw UnsupportedSpecError(
            "closed-form mu->0 curve is available for exponential claims only");
    if (!std::isfinite(u) || u < 0.0) throw DomainError("psi_zero_limit: requires u >= 0");
    return at_zero * std::exp(-claim_rate * u / (lambda2 + 1.0));
}

PsiZeroLimit psi_zero_limit(const std::vector<GammaComponent>& claims, double lambda2) {
    if (!(lambda2 > 0.0) || !std::isfinite(lambda2))
        throw DomainError("psi_zero_limit: requires lambda2 > 0");
    PsiZeroLimit lim;
    lim.lambda2 = lambda2;
    lim.at_zero = lambda2 / (lambda2 + 1.0);
    lim.has_curve = claims.size() == 1 && std::abs(claims[0].shape - 1.0) <= 1e-12;
    lim.claim_rate = lim.has_curve ? claims[0].rate : 0.0;
    return lim;
}

double u5(const RuinSolution& sol) {
    const double target = 0.05;
    double psi0 = eval_ruin(sol, 0.0);
    if (psi0 <= target) return 0.0;
    double hi = 1.0;
    while (eval_ruin(sol, hi) > target) {
        hi *= 2.0;
        if (hi > 1e12)
            throw EvalError("u5", "failed to bracket the 5% level below u = 1e12");
    }
    double lo = (hi == 1.0) ? 0.0 : hi * 0.5;
    double mid = 0.5 * (lo + hi);
    while (hi - lo > 1e-12) {
        mid = 0.5 * (lo + hi);
        double pm = eval_ruin(sol, mid);
        if (std::abs(pm - target) < 1e-10) return mid;
        if (pm > target)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

void apply_param(ModelSpec& spec, const std::string& name, double value) {
    auto need = [&](bool ok, const char* what) {
        if (!ok)
            throw ValidationError(name, "parameter '" + name + "' requires " + what);
    };
    if (name == "c" || name == "premium_rate") {
        spec.premium_rate = value;
    } else if (name == "r") {
        need(!spec.interarrival_gammas.empty(), "a Gamma inter-arrival component");
        spec.interarrival_gammas[0].shape = value;
    } else if (name == "lambda1") {
        need(!spec.interarrival_gammas.empty(), "a Gamma inter-arrival component");
        spec.interarrival_gammas[0].rate = value;
    } else if (name == "mu") {
        need(!spec.interarrival_mls.empty(), "a Mittag-Leffler inter-arrival component");
        spec.interarrival_mls[0].mu = value;
    } else if (name == "lambda2") {
        need(!spec.interarrival_mls.empty(), "a Mittag-Leffler inter-arrival component");
        spec.interarrival_mls[0].rate = value;
    } else if (name == "s") {
        need(!spec.claim_gammas.empty(), "a claim component");
        spec.claim_gammas[0].shape = value;
    } else if (name == "alpha") {
        need(!spec.claim_gammas.empty(), "a claim component");
        spec.claim_gammas[0].rate = value;
    } else {
        throw DomainError("unknown parameter name '" + name + "'");
    }
}

U5Grid u5_grid(const ModelSpec& base, const ParamAxis& a0, const ParamAxis& a1,
               bool parallel) {
    if (a0.n < 1 || a1.n < 1) throw DomainError("u5_grid: axis sizes must be >= 1");
    U5Grid grid;
    grid.ax0 = a0;
    grid.ax1 = a1;
    auto linspace = [](const ParamAxis& ax) {
        std::vector<double> v(static_cast<std::size_t>(ax.n));
        for (int i = 0; i < ax.n; ++i)
            v[static_cast<std::size_t>(i)] =
                (ax.n == 1) ? ax.lo : ax.lo + (ax.hi - ax.lo) * i / (ax.n - 1);
        return v;
    };
    grid.v0 = linspace(a0);
    grid.v1 = linspace(a1);
    grid.cells.assign(grid.v0.size(), std::vector<U5Cell>(grid.v1.size()));
    const long total = static_cast<long>(grid.v0.size() * grid.v1.size());
    auto run_cell = [&](long idx) {
        std::size_t i = static_cast<std::size_t>(idx) / grid.v1.size();
        std::size_t j = static_cast<std::size_t>(idx) % grid.v1.size();
        U5Cell& cell = grid.cells[i][j];
        try {
            ModelSpec m = base;
            apply_param(m, a0.name, grid.v0[i]);
            apply_param(m, a1.name, grid.v1[j]);
            ModelSpec canon = validate(m);
            RuinSolution sol = solve_model(canon);
            double val = u5(sol);
            cell.present = true;
            cell.ln_u5 = (val > 0.0) ? std::log(val) : -kInf;
        } catch (const std::exception& e) {
            cell.present = false;
            cell.note = e.what();
        }
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long idx = 0; idx < total; ++idx) run_cell(idx);
    } else {
        for (long idx = 0; idx < total; ++idx) run_cell(idx);
    }
    return grid;
}

std::string solution_to_json(const RuinSolution& sol) {
    nlohmann::json j;
    j["model"] = nlohmann::json::parse(model_to_json(sol.model));
    j["roots"] = nlohmann::json::array();
    for (const auto& r : sol.roots) {
        nlohmann::json rj = cplx_to_json(r.z);
        rj["residual"] = r.residual;
        rj["conjugate_pair_member"] = r.is_conjugate_pair_member;
        j["roots"].push_back(rj);
    }
    j["coefficients"] = nlohmann::json::array();
    for (const auto& k : sol.coefficients) j["coefficients"].push_back(cplx_to_json(k));
    j["delta"] = nlohmann::json::array();
    for (const auto& d : sol.delta) j["delta"].push_back(cplx_to_json(d));
    j["lambda_product"] = sol.lambda_product;
    j["condition_number"] = sol.condition_number;
    j["condition_warning"] = sol.condition_warning;
    return j.dump(2);
}

RuinSolution solution_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("json", std::string("invalid solution JSON: ") + e.what());
    }
    RuinSolution sol;
    try {
        sol.model = parse_model_json(j.at("model").dump());
        for (const auto& rj : j.at("roots")) {
            CharRoot r;
            r.z = cplx_from_json(rj);
            r.residual = rj.at("residual").get<double>();
            r.is_conjugate_pair_member = rj.at("conjugate_pair_member").get<bool>();
            sol.roots.push_back(r);
        }
        for (const auto& kj : j.at("coefficients"))
            sol.coefficients.push_back(cplx_from_json(kj));
        for (const auto& dj : j.at("delta")) sol.delta.push_back(cplx_from_json(dj));
        sol.lambda_product = j.at("lambda_product").get<double>();
        sol.condition_number = j.at("condition_number").get<double>();
        sol.condition_warning = j.at("condition_warning").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("json", std::string("malformed solution JSON: ") + e.what());
    }
    return sol;
}

BracketReport erlang2_bracket_report(const ModelSpec& spec,
                                     const std::vector<CharRoot>& roots) {
    BracketReport rep;
    rep.applicable = spec.interarrival_gammas.size() == 1 &&
                     spec.interarrival_mls.empty() && spec.claim_gammas.size() == 1 &&
                     std::abs(spec.claim_gammas[0].shape - 2.0) <= 1e-12;
    if (!rep.applicable) return rep;
    rep.lo = spec.interarrival_gammas[0].rate / spec.premium_rate;
    rep.mid = rep.lo + spec.claim_gammas[0].rate;
    if (roots.size() != 2) return rep;
    if (std::abs(roots[0].z.imag()) > 1e-9 || std::abs(roots[1].z.imag()) > 1e-9)
        return rep;
    double x0 = roots[0].z.real() + rep.lo;
    double x1 = roots[1].z.real() + rep.lo;
    rep.z2 = std::min(x0, x1);
    rep.z3 = std::max(x0, x1);
    rep.holds = rep.lo < rep.z2 && rep.z2 < rep.mid && rep.mid < rep.z3;
    return rep;
}

}  // namespace frisk
