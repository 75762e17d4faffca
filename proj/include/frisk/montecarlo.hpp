#pragma once

#include <cstdint>
#include <vector>

#include "frisk/model.hpp"
#include "frisk/rng.hpp"
#include "frisk/solver.hpp"

namespace frisk {

enum class TruncationMode { ClaimCount, TimeHorizon };

struct SimConfig {
    std::uint64_t paths = 100000;
    std::uint64_t max_claims_per_path = 1000000;
    double horizon = 1e9;
    std::uint64_t seed = 1;
    TruncationMode mode = TruncationMode::ClaimCount;
};

struct McEstimate {
    double p_hat = 0.0;
    double ci_half_width = 0.0;  // 95% normal CI; Wilson fallback at p in {0,1}
    std::uint64_t paths_run = 0;
    std::uint64_t truncated_paths = 0;  // neither ruined nor provably survived
    bool truncation_warning = false;    // > 10% truncated
    bool is_lower_bound = false;        // truncated paths counted as survivors
    std::uint64_t seed = 0;
};

struct PathResult {
    bool ruined = false;
    bool truncated = false;
    std::uint64_t claims = 0;
};

// Simulates one surplus path at claim epochs until ruin, certified survival
// (surplus above exit_level), or truncation. Exposed so tests can drive
// common-random-number comparisons directly.
PathResult simulate_one_path(const ModelSpec& spec, double u, double exit_level,
                             const SimConfig& cfg, RngStream& rng);

// Ruin-probability estimate. Draws for path i come from stream (seed, i), so
// the estimate is independent of thread count and schedule. When `analytic`
// is given, the exit level is chosen so stopping early changes psi by < 1e-12;
// otherwise a heuristic level (u + 50 E[X]) is used and truncated paths are
// reported, making p_hat a lower bound.
McEstimate estimate_ruin(const ModelSpec& spec, double u, const SimConfig& cfg,
                         const RuinSolution* analytic = nullptr,
                         bool parallel = true);

struct FpMoments {
    double mean = 0.0;
    double var = 0.0;
    double se_mean = 0.0;
    double se_var = 0.0;
    std::uint64_t paths = 0;
};

// Moments of the fractional (Mittag-Leffler renewal) counting process N(t):
// number of ML(mu, lambda) arrivals in [0, t], estimated over `paths` paths.
FpMoments fractional_poisson_moments(double mu, double lambda, double t,
                                     std::uint64_t paths, std::uint64_t seed = 1);

// Max over u_grid of |psi(u) - RHS(u)| where RHS is the one-step renewal
// integral of the analytic solution. Throws EvalError naming the failing u if
// the quadrature cannot deliver the target accuracy.
double renewal_equation_residual(const ModelSpec& spec, const RuinSolution& sol,
                                 const std::vector<double>& u_grid);

}  // namespace frisk
