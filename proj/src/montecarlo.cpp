#include "frisk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frisk/quadrature.hpp"

namespace frisk {

namespace {

constexpr double kZ95 = 1.959963984540054;

double draw_interarrival(const ModelSpec& spec, RngStream& rng) {
    double t = 0.0;
    for (const auto& g : spec.interarrival_gammas) t += rng.next_gamma(g.shape, g.rate);
    for (const auto& m : spec.interarrival_mls) t += rng.next_ml(m.mu, m.rate);
    return t;
}

double draw_claim(const ModelSpec& spec, RngStream& rng) {
    double x = 0.0;
    for (const auto& g : spec.claim_gammas) x += rng.next_gamma(g.shape, g.rate);
    return x;
}

// Exit level above which survival is certain to within 1e-12 of psi:
// the analytic tail bound sum |K_p| e^{-Re z_p v} <= 1e-12 solved for v.
double provable_exit_level(const RuinSolution& sol, double u) {
    double ksum = 0.0;
    double qmin = 1e300;
    for (std::size_t p = 0; p < sol.roots.size(); ++p) {
        ksum += std::abs(sol.coefficients[p]);
        qmin = std::min(qmin, sol.roots[p].z.real());
    }
    if (!(qmin > 0.0) || ksum <= 0.0) return u + 50.0;
    double v = std::log(ksum / 1e-12) / qmin;
    return std::max(v, u + 1.0);
}

}  // namespace

PathResult simulate_one_path(const ModelSpec& spec, double u, double exit_level,
                             const SimConfig& cfg, RngStream& rng) {
    PathResult res;
    double surplus = u;
    double time = 0.0;
    const double c = spec.premium_rate;
    for (;;) {
        double t = draw_interarrival(spec, rng);
        time += t;
        if (cfg.mode == TruncationMode::TimeHorizon && time > cfg.horizon) {
            res.truncated = true;
            return res;
        }
        surplus += c * t - draw_claim(spec, rng);
        ++res.claims;
        if (surplus < 0.0) {
            res.ruined = true;
            return res;
        }
        if (surplus > exit_level) return res;  // certified survivor
        if (cfg.mode == TruncationMode::ClaimCount && res.claims >= cfg.max_claims_per_path) {
            res.truncated = true;
            return res;
        }
    }
}

McEstimate estimate_ruin(const ModelSpec& spec, double u, const SimConfig& cfg,
                         const RuinSolution* analytic, bool parallel) {
    if (!std::isfinite(u) || u < 0.0)
        throw DomainError("estimate_ruin: requires finite u >= 0");
    if (cfg.paths == 0) throw DomainError("estimate_ruin: requires paths > 0");
    double exit_level = analytic ? provable_exit_level(*analytic, u)
                                 : u + 50.0 * claim_mean(spec);
    const long n = static_cast<long>(cfg.paths);
    std::uint64_t ruined = 0, truncated = 0;
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : ruined, truncated)
#endif
        for (long i = 0; i < n; ++i) {
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
            PathResult r = simulate_one_path(spec, u, exit_level, cfg, rng);
            ruined += r.ruined ? 1u : 0u;
            truncated += r.truncated ? 1u : 0u;
        }
    } else {
        for (long i = 0; i < n; ++i) {
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
            PathResult r = simulate_one_path(spec, u, exit_level, cfg, rng);
            ruined += r.ruined ? 1u : 0u;
            truncated += r.truncated ? 1u : 0u;
        }
    }
    McEstimate est;
    est.paths_run = cfg.paths;
    est.truncated_paths = truncated;
    est.seed = cfg.seed;
    double nn = static_cast<double>(cfg.paths);
    est.p_hat = static_cast<double>(ruined) / nn;
    if (est.p_hat > 0.0 && est.p_hat < 1.0) {
        est.ci_half_width = kZ95 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / nn);
    } else {
        // Wilson interval; half-width = distance to the nearer Wilson bound
        double zz = kZ95 * kZ95;
        double denom = 1.0 + zz / nn;
        double center = (est.p_hat + zz / (2.0 * nn)) / denom;
        double spread = kZ95 *
                        std::sqrt(est.p_hat * (1.0 - est.p_hat) / nn +
                                  zz / (4.0 * nn * nn)) /
                        denom;
        double lo = center - spread, hi = center + spread;
        est.ci_half_width = (est.p_hat == 0.0) ? hi : 1.0 - lo;
    }
    est.is_lower_bound = truncated > 0;
    est.truncation_warning = truncated * 10 > cfg.paths;
    return est;
}

FpMoments fractional_poisson_moments(double mu, double lambda, double t,
                                     std::uint64_t paths, std::uint64_t seed) {
    if (!(mu > 0.0) || mu > 1.0)
        throw DomainError("fractional_poisson_moments: requires 0 < mu <= 1");
    if (!(lambda > 0.0) || !(t > 0.0))
        throw DomainError("fractional_poisson_moments: requires lambda > 0 and t > 0");
    if (paths < 2) throw DomainError("fractional_poisson_moments: requires paths >= 2");
    const long n = static_cast<long>(paths);
    // Counts are integers, so integer accumulators make the reduction exact
    // and independent of thread scheduling.
    unsigned long long s1 = 0, s2 = 0, s3a = 0, s4a = 0, overflowed = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : s1, s2, s3a, s4a, overflowed)
#endif
    for (long i = 0; i < n; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        unsigned long long count = 0;
        double time = 0.0;
        for (;;) {
            time += rng.next_ml(mu, lambda);
            if (time > t) break;
            ++count;
            if (count > 60000ull) {  // count^4 must stay exact in 64 bits
                ++overflowed;
                break;
            }
        }
        unsigned long long c2 = count * count;
        s1 += count;
        s2 += c2;
        s3a += c2 * count;
        s4a += c2 * c2;
    }
    if (overflowed > 0)
        throw EvalError("fractional_poisson_moments",
                        "arrival count too large for exact moment accumulation");
    double nn = static_cast<double>(paths);
    double m1 = static_cast<double>(s1) / nn;
    double m2 = static_cast<double>(s2) / nn;
    double m3 = static_cast<double>(s3a) / nn;
    double m4 = static_cast<double>(s4a) / nn;
    FpMoments out;
    out.paths = paths;
    out.mean = m1;
    double var_pop = m2 - m1 * m1;
    out.var = var_pop * nn / (nn - 1.0);
    out.se_mean = std::sqrt(out.var / nn);
    // Delta-method standard error of the sample variance via the 4th central
    // moment: se(s^2) ~ sqrt((m4c - var^2) / n).
    double m4c = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
    double v = (m4c - var_pop * var_pop) / nn;
    out.se_var = v > 0.0 ? std::sqrt(v) : 0.0;
    return out;
}

double renewal_equation_residual(const ModelSpec& spec, const RuinSolution& sol,
                                 const std::vector<double>& u_grid) {
    const double c = spec.premium_rate;
    double qmin = 1e300;
    for (const auto& r : sol.roots) qmin = std::min(qmin, r.z.real());
    if (!(qmin > 0.0))
        throw EvalError("renewal residual", "analytic solution has no decaying root");
    double worst = 0.0;
    for (double u : u_grid) {
        try {
            auto bracket = [&](double v) {
                double inner = 0.0;
                if (v > 0.0)
                    inner = integrate_ts(
                        [&](double y) { return eval_ruin(sol, v - y) * claim_density(spec, y); },
                        0.0, v, 1e-9);
                return inner + (1.0 - claim_cdf(spec, v));
            };
            auto outer_fn = [&](double t) {
                return interarrival_density(spec, t) * bracket(u + c * t);
            };
            double rhs = integrate_ts(outer_fn, 0.0, 1.0, 1e-9) +
                         integrate_exp_tail(outer_fn, 1.0,
                                            std::max(1.0, 1.0 / (qmin * c)), 1e-9);
            double lhs = eval_ruin(sol, u);
            worst = std::max(worst, std::abs(lhs - rhs));
        } catch (const EvalError& e) {
            std::ostringstream os;
            os << "renewal residual quadrature failed at u = " << u << ": " << e.what();
            throw EvalError(e.method, os.str());
        }
    }
    return worst;
}

}  // namespace frisk
