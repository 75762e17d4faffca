// Path simulation, ruin-probability estimation, fractional counting-process
// moments, and the renewal-equation consistency residual.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "frisk/errors.hpp"
#include "frisk/model.hpp"
#include "frisk/montecarlo.hpp"
#include "frisk/rng.hpp"
#include "frisk/solver.hpp"
#include "support/oracles.hpp"
#include "support/reference_values.hpp"

using namespace frisk;

namespace {

ModelSpec gamma_exp(double r, double l1, double alpha, double c) {
    ModelSpec m;
    m.interarrival_gammas = {{r, l1}};
    m.claim_gammas = {{1.0, alpha}};
    m.premium_rate = c;
    return m;
}

ModelSpec ml_exp(double mu, double l2, double alpha, double c) {
    ModelSpec m;
    m.interarrival_mls = {{mu, l2}};
    m.claim_gammas = {{1.0, alpha}};
    m.premium_rate = c;
    return m;
}

constexpr double kZ95 = 1.959963984540054;

double sigma_of(const McEstimate& est) { return est.ci_half_width / kZ95; }

}  // namespace

TEST_CASE("classical model at zero surplus: one-million-path estimate") {
    auto spec = gamma_exp(1.0, 1.0, 1.0, 1.2);
    auto sol = solve_model(spec);
    SimConfig cfg;
    cfg.paths = 1000000;
    cfg.seed = 42;
    auto est = estimate_ruin(spec, 0.0, cfg, &sol);
    double truth = 5.0 / 6.0;
    CHECK(std::fabs(est.p_hat - truth) < 3.0 * sigma_of(est));
    CHECK(est.paths_run == cfg.paths);
    CHECK(est.seed == cfg.seed);
    // The provable exit level certifies every non-ruined path.
    CHECK(est.truncated_paths == 0);
    CHECK_FALSE(est.is_lower_bound);
    CHECK_FALSE(est.truncation_warning);
}

TEST_CASE("same seed reproduces the estimate bit for bit") {
    auto spec = gamma_exp(1.0, 1.0, 1.0, 1.2);
    auto sol = solve_model(spec);
    SimConfig cfg;
    cfg.paths = 100000;
    cfg.seed = 7;
    auto a = estimate_ruin(spec, 1.0, cfg, &sol);
    auto b = estimate_ruin(spec, 1.0, cfg, &sol);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.ci_half_width == b.ci_half_width);
    CHECK(a.truncated_paths == b.truncated_paths);

    // Per-path streams make the result independent of the OpenMP schedule.
    auto serial = estimate_ruin(spec, 1.0, cfg, &sol, /*parallel=*/false);
    CHECK(serial.p_hat == a.p_hat);
    CHECK(serial.ci_half_width == a.ci_half_width);
    CHECK(serial.truncated_paths == a.truncated_paths);

    SimConfig other = cfg;
    other.seed = 8;
    auto c = estimate_ruin(spec, 1.0, other, &sol);
    CHECK(c.p_hat != a.p_hat);
}

TEST_CASE("large initial surplus: zero hits with a consistent Wilson interval") {
    auto spec = gamma_exp(1.0, 1.0, 1.0, 1.2);
    auto sol = solve_model(spec);
    SimConfig cfg;
    cfg.paths = 100000;
    cfg.seed = 7;
    auto est = estimate_ruin(spec, 100.0, cfg, &sol);
    double truth = eval_ruin(sol, 100.0);
    REQUIRE(truth < 1e-6);
    CHECK(est.p_hat == 0.0);
    // The Wilson upper bound still covers the tiny true value.
    CHECK(est.ci_half_width > 0.0);
    CHECK(truth < est.ci_half_width);
    CHECK(est.truncated_paths == 0);
}

TEST_CASE("Mittag-Leffler waiting times: estimate matches the one-term formula") {
    auto spec = ml_exp(0.5, 1.0, 1.0, 1.2);
    auto sol = solve_model(spec);
    const double x2 = refvals::EX3_X2[0].x2;
    double truth = (1.0 - x2) * std::exp(-x2 * 1.0);
    SimConfig cfg;
    cfg.paths = 1000000;
    cfg.max_claims_per_path = 10000;
    cfg.seed = 11;
    auto est = estimate_ruin(spec, 1.0, cfg, &sol);
    CHECK(std::fabs(est.p_hat - truth) < 3.0 * sigma_of(est));
    CHECK(est.truncated_paths == 0);
    CHECK_FALSE(est.truncation_warning);
}

TEST_CASE("truncated paths are reported and flagged as a lower-bound estimate") {
    auto spec = gamma_exp(1.0, 1.0, 1.0, 1.2);
    auto sol = solve_model(spec);
    SimConfig cfg;
    cfg.paths = 20000;
    cfg.seed = 3;
    cfg.mode = TruncationMode::TimeHorizon;
    cfg.horizon = 5.0;
    auto est = estimate_ruin(spec, 0.0, cfg, &sol);
    double truth = eval_ruin(sol, 0.0);
    CHECK(est.truncated_paths > 0);
    CHECK(est.is_lower_bound);
    // Truncated paths count as survivors, so the estimate sits below truth.
    CHECK(est.p_hat < truth);
    // With such a short horizon most paths are cut: the warning must fire.
    CHECK(est.truncation_warning);

    // A tight claim-count cap without the analytic certificate behaves the
    // same way through the heuristic exit level.
    SimConfig cap;
    cap.paths = 20000;
    cap.seed = 4;
    cap.max_claims_per_path = 10;
    auto est2 = estimate_ruin(spec, 0.0, cap);
    CHECK(est2.truncated_paths > 0);
    CHECK(est2.is_lower_bound);
    CHECK(est2.p_hat < truth);
}

TEST_CASE("95% interval covers the analytic value at the nominal rate") {
    auto spec = gamma_exp(1.0, 1.0, 1.0, 1.2);
    auto sol = solve_model(spec);
    double truth = eval_ruin(sol, 1.0);
    int covered = 0;
    for (int rep = 0; rep < 200; ++rep) {
        SimConfig cfg;
        cfg.paths = 2000;
        cfg.seed = 1000 + static_cast<std::uint64_t>(rep);
        auto est = estimate_ruin(spec, 1.0, cfg, &sol);
        if (std::fabs(est.p_hat - truth) <= est.ci_half_width) ++covered;
    }
    CHECK(covered >= 180);
}

TEST_CASE("common random numbers: ruin indicator is monotone in the surplus") {
    auto spec = gamma_exp(1.0, 1.0, 1.0, 1.2);
    SimConfig cfg;
    cfg.max_claims_per_path = 20000;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        RngStream low(99, i), high(99, i);
        auto r_low = simulate_one_path(spec, 0.5, 1e18, cfg, low);
        auto r_high = simulate_one_path(spec, 1.0, 1e18, cfg, high);
        // With identical draws a path ruined from the larger surplus must
        // also be ruined from the smaller one.
        if (r_high.ruined) CHECK(r_low.ruined);
    }
    // Identical streams replay the identical path.
    RngStream s1(123, 5), s2(123, 5);
    auto p1 = simulate_one_path(spec, 0.5, 1e18, cfg, s1);
    auto p2 = simulate_one_path(spec, 0.5, 1e18, cfg, s2);
    CHECK(p1.ruined == p2.ruined);
    CHECK(p1.claims == p2.claims);
}

TEST_CASE("fractional counting process: exponential case reduces to Poisson") {
    auto m = fractional_poisson_moments(1.0, 2.0, 3.0, 200000, 5);
    CHECK(m.paths == 200000);
    CHECK(std::fabs(m.mean - 6.0) < 3.0 * m.se_mean);
    CHECK(std::fabs(m.var - 6.0) < 3.0 * m.se_var);
}

TEST_CASE("fractional counting process: frozen mean and variance at mu = 1/2") {
    auto m = fractional_poisson_moments(0.5, 1.0, 4.0, 200000, 6);
    CHECK(std::fabs(m.mean - refvals::FP_MEAN_HALF_1_4) < 3.0 * m.se_mean);
    CHECK(std::fabs(m.var - refvals::FP_VAR_HALF_1_4) < 3.0 * m.se_var);
    // Overdispersion relative to a Poisson process of the same mean.
    CHECK(m.var > m.mean);
}

TEST_CASE("analytic solutions satisfy the one-step renewal equation") {
    std::vector<double> us = {0.0, 1.0, 5.0};

    auto cl = gamma_exp(1.0, 1.0, 1.0, 1.2);
    CHECK(renewal_equation_residual(cl, solve_model(cl), us) < 1e-6);

    auto g22 = gamma_exp(2.0, 2.0, 1.0, 1.2);
    CHECK(renewal_equation_residual(g22, solve_model(g22), us) < 1e-4);

    auto ml = ml_exp(0.5, 1.0, 1.0, 1.2);
    CHECK(renewal_equation_residual(ml, solve_model(ml), us) < 1e-3);
}

TEST_CASE("simulation argument validation") {
    auto spec = gamma_exp(1.0, 1.0, 1.0, 1.2);
    SimConfig cfg;
    CHECK_THROWS_AS(estimate_ruin(spec, -1.0, cfg), DomainError);
    CHECK_THROWS_AS(
        estimate_ruin(spec, std::numeric_limits<double>::quiet_NaN(), cfg),
        DomainError);
    SimConfig zero;
    zero.paths = 0;
    CHECK_THROWS_AS(estimate_ruin(spec, 1.0, zero), DomainError);

    CHECK_THROWS_AS(fractional_poisson_moments(0.0, 1.0, 1.0, 100), DomainError);
    CHECK_THROWS_AS(fractional_poisson_moments(1.5, 1.0, 1.0, 100), DomainError);
    CHECK_THROWS_AS(fractional_poisson_moments(0.5, -1.0, 1.0, 100), DomainError);
    CHECK_THROWS_AS(fractional_poisson_moments(0.5, 1.0, 1.0, 1), DomainError);
}
