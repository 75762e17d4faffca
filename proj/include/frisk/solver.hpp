#pragma once

#include <complex>
#include <string>
#include <vector>

#include "frisk/model.hpp"

namespace frisk {

struct CharRoot {
    std::complex<double> z;
    double residual = 0.0;  // |f(z)| / natural scale
    bool is_conjugate_pair_member = false;
};

// Exact survival/ruin representation: phi(u) = 1 + sum_p K_p e^{-z_p u}.
struct RuinSolution {
    ModelSpec model;
    std::vector<CharRoot> roots;                    // the z_p, Re > 0
    std::vector<std::complex<double>> coefficients; // the K_p
    double lambda_product = 0.0;                    // rate product constant
    std::vector<std::complex<double>> delta;        // per-root product factor
    double condition_number = 0.0;
    bool condition_warning = false;
};

// Characteristic function whose right-half-plane zeros drive the solution.
// Principal branch for the fractional powers; requires z off the branch cut
// (throws DomainError for negative-real z when a fractional power is present);
// exactly 0 at z = 0.
std::complex<double> characteristic_fn(const ModelSpec& spec, std::complex<double> z);

// Natural magnitude used to scale residuals.
double characteristic_scale(const ModelSpec& spec);

// All roots with Re > 0; their count must equal the total claim shape
// (claim shapes must be integers). Polynomial specs use a companion-matrix
// eigensolve; otherwise a scan/Newton search. Roots are polished to
// |f| <= tol * scale, conjugate-closed, and must be pairwise separated by
// more than 1e-8.
std::vector<CharRoot> find_roots(const ModelSpec& spec, double tol = 1e-12);

// Scan/Newton path regardless of spec shape (reference for tests/benchmarks).
std::vector<CharRoot> find_roots_general(const ModelSpec& spec, double tol = 1e-12);

// Boundary-condition ladder for the K_p. Throws CoefficientError if the
// post-check phi(0) in [-1e-8, 1+1e-8] fails; sets condition_warning when the
// ladder matrix condition number exceeds 1e10.
RuinSolution solve_coefficients(const ModelSpec& spec,
                                const std::vector<CharRoot>& roots);

RuinSolution solve_model(const ModelSpec& spec, double tol = 1e-12);

// Ruin probability psi(u) = 1 - phi(u); imaginary residue above 1e-10 raises
// CoefficientError, values outside [-1e-8, 1+1e-8] likewise, then clamped.
double eval_ruin(const RuinSolution& sol, double u);

struct LundbergReport {
    double s = 0.0;      // adjustment coefficient
    double value = 0.0;  // M_X(s) * M_T(-cs) - 1
    bool pass = false;
};

// Moment-generating-function identity check; supported for a single Gamma
// inter-arrival component with exponential claims only.
LundbergReport lundberg_check(const ModelSpec& spec, const RuinSolution& sol);

struct PsiZeroLimit {
    double lambda2 = 0.0;
    double at_zero = 0.0;    // lambda2 / (lambda2 + 1)
    bool has_curve = false;  // full curve available only for Exp(alpha) claims
    double claim_rate = 0.0;
    double operator()(double u) const;
};

// mu -> 0 limit of the pure Mittag-Leffler renewal model with unit-scaled
// time: psi_0(0) = lambda2/(lambda2+1) always; for Exp(alpha) claims the whole
// curve psi_0(u) = psi_0(0) * exp(-alpha u / (lambda2 + 1)).
PsiZeroLimit psi_zero_limit(const std::vector<GammaComponent>& claims, double lambda2);

// Smallest u with psi(u) <= 0.05 (0 if psi(0) <= 0.05), via bracketed
// bisection to |psi - 0.05| < 1e-10 or bracket width < 1e-12.
double u5(const RuinSolution& sol);

struct ParamAxis {
    std::string name;  // c|premium_rate|r|lambda1|mu|lambda2|s|alpha
    double lo = 0.0, hi = 1.0;
    int n = 2;
};

struct U5Cell {
    bool present = false;
    double ln_u5 = 0.0;     // -inf allowed (u5 == 0)
    std::string note;       // why missing
};

struct U5Grid {
    ParamAxis ax0, ax1;
    std::vector<double> v0, v1;
    std::vector<std::vector<U5Cell>> cells;  // cells[i][j] at (v0[i], v1[j])
};

// ln u5 over a 2-D parameter sweep; cells whose spec fails validation (or any
// downstream solve) are recorded as missing with the failure reason.
U5Grid u5_grid(const ModelSpec& base, const ParamAxis& a0, const ParamAxis& a1,
               bool parallel = true);

// Overrides one named parameter on the first matching component.
void apply_param(ModelSpec& spec, const std::string& name, double value);

// Lossless (shortest-round-trip doubles) solution serialization.
std::string solution_to_json(const RuinSolution& sol);
RuinSolution solution_from_json(const std::string& text);

struct BracketReport {
    bool applicable = false;
    bool holds = false;
    double z2 = 0.0, z3 = 0.0;  // shifted roots x = z + lambda1/c, z2 < z3
    double lo = 0.0, mid = 0.0; // lambda1/c and lambda1/c + alpha
};

// For Gamma(r, lambda1) inter-arrival with Gamma(2, alpha) claims the two
// shifted real roots must satisfy lo < z2 < mid < z3; reports the check.
BracketReport erlang2_bracket_report(const ModelSpec& spec,
                                     const std::vector<CharRoot>& roots);

}  // namespace frisk
