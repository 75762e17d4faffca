#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frisk/errors.hpp"
#include "frisk/fraccalc.hpp"
#include "frisk/model.hpp"
#include "frisk/montecarlo.hpp"
#include "frisk/solver.hpp"

namespace {

using namespace frisk;

std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("spec", "cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("out", "cannot open output file '" + path + "'");
    out << content;
    if (!out) throw ValidationError("out", "failed writing output file '" + path + "'");
}

struct Override {
    std::string name;
    double value;
};

std::vector<Override> parse_overrides(const std::vector<std::string>& raw) {
    std::vector<Override> out;
    for (const auto& s : raw) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("override", "override must look like name=value, got '" + s + "'");
        Override o;
        o.name = s.substr(0, eq);
        try {
            std::size_t used = 0;
            o.value = std::stod(s.substr(eq + 1), &used);
            if (used != s.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ValidationError("override", "override value in '" + s + "' is not a number");
        }
        out.push_back(o);
    }
    return out;
}

ModelSpec load_spec(const std::string& path, const std::vector<std::string>& overrides) {
    ModelSpec raw = parse_model_json(read_file(path));
    for (const auto& o : parse_overrides(overrides)) apply_param(raw, o.name, o.value);
    return validate(raw);
}

ParamAxis parse_axis(const std::string& s) {
    // format: name:lo:hi:n
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw ValidationError("grid", "grid axis must look like name:lo:hi:n, got '" + s + "'");
    ParamAxis ax;
    ax.name = parts[0];
    static const std::vector<std::string> known{"c",  "premium_rate", "r", "lambda1",
                                                "mu", "lambda2",      "s", "alpha"};
    if (std::find(known.begin(), known.end(), ax.name) == known.end())
        throw ValidationError("grid", "unknown grid axis name '" + ax.name + "'");
    try {
        ax.lo = std::stod(parts[1]);
        ax.hi = std::stod(parts[2]);
        ax.n = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw ValidationError("grid", "could not parse grid axis '" + s + "'");
    }
    if (ax.n < 1) throw ValidationError("grid", "grid axis needs n >= 1");
    return ax;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

int cmd_solve(const std::string& spec_path, const std::vector<std::string>& overrides,
              const std::string& out, double u_max, int u_steps) {
    ModelSpec spec = load_spec(spec_path, overrides);
    RuinSolution sol = solve_model(spec);
    std::cout << "roots:\n";
    for (const auto& r : sol.roots)
        std::cout << "  " << fmt17(r.z.real()) << (r.z.imag() < 0 ? " - " : " + ")
                  << fmt17(std::abs(r.z.imag())) << "i  (residual " << r.residual << ")\n";
    std::cout << "condition number: " << sol.condition_number << "\n";
    if (sol.condition_warning)
        std::cout << "warning: ladder condition number exceeds 1e10; coefficients "
                     "may lose accuracy\n";
    std::cout << "psi(0) = " << fmt17(eval_ruin(sol, 0.0)) << "\n";
    if (!out.empty()) {
        write_file(out + ".solution.json", solution_to_json(sol));
        std::ostringstream csv;
        csv << "u,psi\n";
        for (double u : linspace(0.0, u_max, u_steps))
            csv << fmt17(u) << "," << fmt17(eval_ruin(sol, u)) << "\n";
        write_file(out + ".curve.csv", csv.str());
        std::cout << "wrote " << out << ".solution.json and " << out << ".curve.csv\n";
    }
    return 0;
}

int cmd_simulate(const std::string& spec_path, const std::vector<std::string>& overrides,
                 const std::string& out, double u, std::uint64_t paths,
                 std::uint64_t seed, std::uint64_t max_claims, double horizon) {
    ModelSpec spec = load_spec(spec_path, overrides);
    SimConfig cfg;
    cfg.paths = paths;
    cfg.seed = seed;
    cfg.max_claims_per_path = max_claims;
    if (horizon > 0.0) {
        cfg.horizon = horizon;
        cfg.mode = TruncationMode::TimeHorizon;
    }
    RuinSolution sol;
    bool have_analytic = false;
    try {
        sol = solve_model(spec);
        have_analytic = true;
    } catch (const std::exception&) {
        have_analytic = false;  // fall back to the heuristic exit level
    }
    McEstimate est = estimate_ruin(spec, u, cfg, have_analytic ? &sol : nullptr);
    std::cout << "p_hat = " << fmt17(est.p_hat) << " +/- " << fmt17(est.ci_half_width)
              << " (95% CI), paths = " << est.paths_run
              << ", truncated = " << est.truncated_paths << "\n";
    if (have_analytic)
        std::cout << "analytic psi(u) = " << fmt17(eval_ruin(sol, u)) << "\n";
    if (est.truncation_warning)
        std::cout << "warning: more than 10% of paths were truncated; the estimate "
                     "is a lower bound\n";
    if (!out.empty()) {
        nlohmann::json j;
        j["u"] = u;
        j["p_hat"] = est.p_hat;
        j["ci_half_width"] = est.ci_half_width;
        j["paths_run"] = est.paths_run;
        j["truncated_paths"] = est.truncated_paths;
        j["truncation_warning"] = est.truncation_warning;
        j["is_lower_bound"] = est.is_lower_bound;
        j["seed"] = est.seed;
        if (have_analytic) j["analytic_psi"] = eval_ruin(sol, u);
        j["model"] = nlohmann::json::parse(model_to_json(spec));
        write_file(out + ".estimate.json", j.dump(2));
        std::cout << "wrote " << out << ".estimate.json\n";
    }
    return 0;
}

int cmd_u5_grid(const std::string& spec_path, const std::vector<std::string>& overrides,
                const std::string& out, const std::vector<std::string>& grids) {
    std::vector<std::string> axes;  // accept two flags or one comma-joined flag
    for (const auto& g : grids) {
        std::size_t start = 0;
        while (start <= g.size()) {
            std::size_t comma = g.find(',', start);
            if (comma == std::string::npos) {
                axes.push_back(g.substr(start));
                break;
            }
            axes.push_back(g.substr(start, comma - start));
            start = comma + 1;
        }
    }
    if (axes.size() != 2)
        throw ValidationError("grid", "u5-grid needs exactly two grid axes");
    ModelSpec base = parse_model_json(read_file(spec_path));
    for (const auto& o : parse_overrides(overrides)) apply_param(base, o.name, o.value);
    ParamAxis a0 = parse_axis(axes[0]);
    ParamAxis a1 = parse_axis(axes[1]);
    U5Grid grid = u5_grid(base, a0, a1);
    std::ostringstream csv;
    csv << a0.name << "\\" << a1.name;
    for (double v : grid.v1) csv << "," << fmt17(v);
    csv << "\n";
    std::size_t missing = 0;
    for (std::size_t i = 0; i < grid.v0.size(); ++i) {
        csv << fmt17(grid.v0[i]);
        for (std::size_t j = 0; j < grid.v1.size(); ++j) {
            const U5Cell& cell = grid.cells[i][j];
            csv << ",";
            if (cell.present)
                csv << fmt17(cell.ln_u5);
            else
                ++missing;
        }
        csv << "\n";
    }
    std::cout << "grid " << grid.v0.size() << "x" << grid.v1.size() << ", missing cells: "
              << missing << "\n";
    if (!out.empty()) {
        write_file(out + ".csv", csv.str());
        std::cout << "wrote " << out << ".csv\n";
    } else {
        std::cout << csv.str();
    }
    return 0;
}

int cmd_verify_density(const std::string& spec_path,
                       const std::vector<std::string>& overrides, const std::string& out,
                       double h, double x_max) {
    ModelSpec spec = load_spec(spec_path, overrides);
    std::vector<DensityComponent> comps;
    for (const auto& g : spec.interarrival_gammas)
        comps.push_back({false, g.shape, g.rate});
    for (const auto& m : spec.interarrival_mls) comps.push_back({true, m.mu, m.rate});
    GridFn res = residual_density_fde(comps, h, x_max);
    double worst = 0.0;
    std::ostringstream csv;
    csv << "x,residual\n";
    for (std::size_t i = 0; i < res.size(); ++i) {
        double x = res.x(i);
        csv << fmt17(x) << "," << fmt17(res.v[i]) << "\n";
        if (x >= 0.1) worst = std::max(worst, std::abs(res.v[i]));
    }
    std::cout << "max |residual| on [0.1, " << fmt17(x_max) << "] at h = " << fmt17(h)
              << ": " << fmt17(worst) << "\n";
    if (!out.empty()) {
        write_file(out + ".csv", csv.str());
        std::cout << "wrote " << out << ".csv\n";
    }
    return 0;
}

int cmd_verify_renewal(const std::string& spec_path,
                       const std::vector<std::string>& overrides, const std::string& out,
                       double u_max, int u_steps) {
    ModelSpec spec = load_spec(spec_path, overrides);
    RuinSolution sol = solve_model(spec);
    std::vector<double> grid = linspace(0.0, u_max, u_steps);
    std::ostringstream csv;
    csv << "u,residual\n";
    double worst = 0.0;
    for (double u : grid) {
        double r = renewal_equation_residual(spec, sol, {u});
        worst = std::max(worst, r);
        csv << fmt17(u) << "," << fmt17(r) << "\n";
    }
    std::cout << "max |renewal residual| over " << u_steps << " points in [0, "
              << fmt17(u_max) << "]: " << fmt17(worst) << "\n";
    if (!out.empty()) {
        write_file(out + ".csv", csv.str());
        std::cout << "wrote " << out << ".csv\n";
    }
    return 0;
}

int write_family_csv(const std::string& out, const std::string& label,
                     const std::vector<std::string>& names,
                     const std::vector<RuinSolution>& sols, double u_max, int u_steps) {
    std::ostringstream csv;
    csv << "u";
    for (const auto& n : names) csv << "," << n;
    csv << "\n";
    for (double u : linspace(0.0, u_max, u_steps)) {
        csv << fmt17(u);
        for (const auto& s : sols) csv << "," << fmt17(eval_ruin(s, u));
        csv << "\n";
    }
    if (!out.empty()) {
        write_file(out + ".csv", csv.str());
        std::cout << "wrote " << out << ".csv (" << label << ")\n";
    } else {
        std::cout << csv.str();
    }
    return 0;
}

int cmd_figure1a(const std::string& out, double u_max, int u_steps) {
    // Gamma(r, r) waiting times (unit mean), Exp(1) claims, premium rate 1.2.
    std::vector<double> rs{0.5, 1.0, 1.5, 2.0, 2.5};
    std::vector<std::string> names;
    std::vector<RuinSolution> sols;
    for (double r : rs) {
        ModelSpec spec;
        spec.premium_rate = 1.2;
        spec.interarrival_gammas.push_back({r, r});
        spec.claim_gammas.push_back({1.0, 1.0});
        sols.push_back(solve_model(validate(spec)));
        names.push_back("psi_r_" + fmt17(r));
    }
    return write_family_csv(out, "Gamma waiting-time family", names, sols, u_max, u_steps);
}

int cmd_figure2a(const std::string& out, double u_max, int u_steps) {
    // Mittag-Leffler waiting times, Exp(1) claims, premium rate 1.2.
    std::vector<std::string> names;
    std::vector<RuinSolution> sols;
    for (double mu : {0.5, 0.75, 1.0}) {
        for (double l2 : {0.5, 1.0}) {
            ModelSpec spec;
            spec.premium_rate = 1.2;
            spec.interarrival_mls.push_back({mu, l2});
            spec.claim_gammas.push_back({1.0, 1.0});
            sols.push_back(solve_model(validate(spec)));
            names.push_back("psi_mu_" + fmt17(mu) + "_lambda2_" + fmt17(l2));
        }
    }
    return write_family_csv(out, "Mittag-Leffler waiting-time family", names, sols,
                            u_max, u_steps);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and simulated ruin probabilities for renewal risk models "
                 "with Gamma / Mittag-Leffler waiting times"};
    app.require_subcommand(1);

    std::string spec_path, out;
    std::vector<std::string> overrides, grids;
    double u_max = 20.0, u = 0.0, h = 1e-3, x_max = 5.0, horizon = 0.0;
    int u_steps = 201;
    std::uint64_t paths = 100000, seed = 1, max_claims = 1000000;

    auto add_spec = [&](CLI::App* cmd) {
        cmd->add_option("--spec", spec_path, "model spec JSON file")->required();
        cmd->add_option("--override", overrides, "override parameter, name=value");
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "output path prefix");
    };

    CLI::App* solve = app.add_subcommand("solve", "exact ruin probability curve");
    add_spec(solve);
    add_out(solve);
    solve->add_option("--u-max", u_max, "largest initial capital in the curve");
    solve->add_option("--u-steps", u_steps, "number of curve points");

    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo ruin estimate");
    add_spec(sim);
    add_out(sim);
    sim->add_option("--u", u, "initial capital");
    sim->add_option("--paths", paths, "number of simulated paths");
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--max-claims", max_claims, "per-path claim budget");
    sim->add_option("--horizon", horizon, "truncate paths at this time instead");

    CLI::App* grid_cmd = app.add_subcommand("u5-grid", "ln u5 over a 2-D parameter sweep");
    add_spec(grid_cmd);
    add_out(grid_cmd);
    grid_cmd->add_option("--grid", grids, "axis as name:lo:hi:n (give twice)");

    CLI::App* vd = app.add_subcommand("verify-density",
                                      "fractional-ODE residual of the waiting-time density");
    add_spec(vd);
    add_out(vd);
    vd->add_option("--step", h, "grid step");
    vd->add_option("--x-max", x_max, "grid end");

    CLI::App* vr = app.add_subcommand("verify-renewal",
                                      "one-step renewal-equation residual of the solution");
    add_spec(vr);
    add_out(vr);
    vr->add_option("--u-max", u_max, "largest checked initial capital");
    vr->add_option("--u-steps", u_steps, "number of checked points");

    CLI::App* f1 = app.add_subcommand("figure1a", "ruin curves, Gamma waiting-time family");
    add_out(f1);
    f1->add_option("--u-max", u_max, "largest initial capital");
    f1->add_option("--u-steps", u_steps, "number of curve points");

    CLI::App* f2 = app.add_subcommand("figure2a", "ruin curves, Mittag-Leffler family");
    add_out(f2);
    f2->add_option("--u-max", u_max, "largest initial capital");
    f2->add_option("--u-steps", u_steps, "number of curve points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help/--version exit 0; anything else is invalid input.
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(spec_path, overrides, out, u_max, u_steps);
        if (sim->parsed())
            return cmd_simulate(spec_path, overrides, out, u, paths, seed, max_claims,
                                horizon);
        if (grid_cmd->parsed()) return cmd_u5_grid(spec_path, overrides, out, grids);
        if (vd->parsed()) return cmd_verify_density(spec_path, overrides, out, h, x_max);
        if (vr->parsed()) {
            double vmax = vr->count("--u-max") ? u_max : 5.0;
            int vsteps = vr->count("--u-steps") ? u_steps : 3;
            return cmd_verify_renewal(spec_path, overrides, out, vmax, vsteps);
        }
        if (f1->parsed()) return cmd_figure1a(out, u_max, u_steps);
        if (f2->parsed()) return cmd_figure2a(out, u_max, u_steps);
    } catch (const ValidationError& e) {
        std::cerr << "validation error [" << e.field << "]: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const EvalError& e) {
        std::cerr << "computation error [" << e.method << "]: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
