#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "tricenter/config.hpp"
#include "tricenter/errors.hpp"
#include "tricenter/io.hpp"
#include "tricenter/solver.hpp"
#include "tricenter/validation.hpp"

namespace fs = std::filesystem;
using namespace tricenter;

namespace {

// exit codes: 0 ok, 1 config error, 2 hypothesis fail, 3 non-convergence,
// 4 artifact mismatch
constexpr int kOk = 0, kConfigError = 1, kHypothesisFail = 2, kNoConvergence = 3,
              kArtifactMismatch = 4;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

RunConfig load_config(const CommonArgs& args, std::string* raw = nullptr) {
    const std::string text = read_file(args.config_path);
    if (raw) *raw = text;
    RunConfig cfg = RunConfig::from_json(nlohmann::json::parse(text));
    if (!args.out_dir.empty()) cfg.output = args.out_dir;
    if (args.seed_set) cfg.seed = args.seed;
    return cfg;
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

nlohmann::json solver_summary(const SolverState& st) {
    return nlohmann::json{{"iterations", st.iterations},
                          {"converged", st.converged},
                          {"error_bound", st.error_bound},
                          {"steps", st.steps},
                          {"steps_dprime", st.steps_dprime},
                          {"steps_d", st.steps_d},
                          {"ratios", st.ratios},
                          {"coarse_warning", st.coarse_warning},
                          {"extrapolation_queries", st.extrapolation_queries},
                          {"truncation_tail", st.truncation.worst_tail}};
}

int cmd_hypotheses(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    ProblemBundle bundle = instantiate(cfg);
    HypothesisReport report = assemble_report(bundle.bounds, bundle.budget, cfg.hypothesis);

    ensure_dir(cfg.output);
    nlohmann::json doc = report.to_json();
    doc["config_hash"] = config_hash(cfg.to_json());
    doc["seed"] = cfg.seed;
    write_file(cfg.output + "/hypotheses.json", doc.dump(2) + "\n");

    std::printf("hypotheses: sigma = %.9g  omega = %.9g  M = %.9g  N = %.9g  q = %.9g\n",
                report.sigma, report.omega, report.M, report.N, report.q);
    std::printf("limits_ok = %d  smallness_ok = %d  converged = %d  ->  %s\n", report.limits_ok,
                report.smallness_ok, report.converged, report.pass ? "PASS" : "FAIL");
    for (const auto& r : report.reasons) std::printf("  reason: %s\n", r.c_str());
    return report.pass ? kOk : kHypothesisFail;
}

int cmd_solve(const CommonArgs& args, bool force) {
    std::string raw;
    RunConfig cfg = load_config(args, &raw);
    ProblemBundle bundle = instantiate(cfg);
    if (!bundle.solvable)
        throw ConfigError("family '" + cfg.family.kind +
                          "' has no shipped system realization; only hypothesis checks apply");

    HypothesisReport report = assemble_report(bundle.bounds, bundle.budget, cfg.hypothesis);
    if (!report.pass) {
        std::printf("hypothesis certificate FAILED%s\n",
                    force ? " (continuing under --force)" : "");
        for (const auto& r : report.reasons) std::printf("  reason: %s\n", r.c_str());
        if (!force || !report.smallness_ok) return kHypothesisFail;
    }

    LpProblem problem{&bundle.system, &bundle.perturbation, cfg.grid, report.M, report.N,
                      report.q};
    SolverState state;
    try {
        state = iterate_to_fixed_point(problem, cfg.solver);
    } catch (const NonConvergence& e) {
        std::fprintf(stderr, "solve: %s\n", e.what());
        return kNoConvergence;
    }

    ensure_dir(cfg.output);
    const std::string csv_path = cfg.output + "/manifold.csv";
    write_manifold_csv(csv_path, bundle.system, state.x, state.phi);

    nlohmann::json manifest{{"config_hash", config_hash(cfg.to_json())},
                            {"manifold_hash", fnv1a64_hex(read_file(csv_path))},
                            {"csv", "manifold.csv"},
                            {"grid", grid_to_json(cfg.grid)},
                            {"family", cfg.to_json()["family"]},
                            {"seed", cfg.seed},
                            {"hypothesis_report", report.to_json()},
                            {"solver", solver_summary(state)}};
    write_file(cfg.output + "/manifest.json", manifest.dump(2) + "\n");
    write_file(cfg.output + "/hypotheses.json", report.to_json().dump(2) + "\n");

    std::printf("solve: converged in %d iterations, error bound %.3g, wrote %s\n",
                state.iterations, state.error_bound, csv_path.c_str());
    return kOk;
}

int cmd_validate(const CommonArgs& args, const std::string& manifold_dir) {
    RunConfig cfg = load_config(args);
    const std::string dir = manifold_dir.empty() ? cfg.output : manifold_dir;

    nlohmann::json manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
    const std::string expected_config = config_hash(cfg.to_json());
    if (manifest.at("config_hash").get<std::string>() != expected_config) {
        std::fprintf(stderr, "validate: config hash mismatch (manifold was solved from a "
                             "different configuration)\n");
        return kArtifactMismatch;
    }
    const std::string csv_path = dir + "/" + manifest.at("csv").get<std::string>();
    const std::string csv_bytes = read_file(csv_path);
    if (manifest.at("manifold_hash").get<std::string>() != fnv1a64_hex(csv_bytes)) {
        std::fprintf(stderr, "validate: manifold file hash mismatch (file was modified)\n");
        return kArtifactMismatch;
    }

    ProblemBundle bundle = instantiate(cfg);
    if (!bundle.solvable) throw ConfigError("family has no system realization to validate");
    GraphField phi = read_graph_field_csv(csv_path, grid_from_json(manifest.at("grid")), 4);

    const auto& val = cfg.validation;
    auto inv_samples = sample_invariance(cfg.grid, val.invariance_samples, val.tau_max,
                                         val.box_fraction, cfg.seed);
    InvarianceReport inv = invariance_residual(bundle.system, bundle.perturbation, phi,
                                               inv_samples, val.residual_floor,
                                               val.integrator_tol);

    nlohmann::json doc{{"config_hash", expected_config},
                       {"invariance",
                        {{"worst", inv.worst},
                         {"used", inv.used},
                         {"skipped", inv.skipped},
                         {"tau_max", val.tau_max}}}};

    const HypothesisReport report = assemble_report(bundle.bounds, bundle.budget, cfg.hypothesis);
    if (report.sigma > 0.0 && report.omega > 0.0) {
        auto growth_samples = sample_growth(cfg.grid, val.growth_samples, val.spread_max,
                                            val.box_fraction, val.min_separation, cfg.seed + 1);
        GrowthReport growth = lipschitz_growth_check(bundle.system, bundle.perturbation, phi,
                                                     report, growth_samples, 0.01,
                                                     val.integrator_tol);
        doc["growth"] = {{"worst_ratio", growth.worst_ratio},
                         {"samples", growth.samples},
                         {"pass", growth.pass}};
    } else {
        doc["growth"] = {{"skipped", "sigma or omega vanish"}};
    }

    // per-sample residuals for external plotting
    std::string rows = "tau,s,xi1,xi2,residual,skipped\n";
    char buf[160];
    for (const auto& rowv : inv.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", rowv.tau, rowv.s,
                      rowv.xi[0], rowv.xi[1], rowv.residual, rowv.skipped ? 1 : 0);
        rows += buf;
    }
    ensure_dir(cfg.output);
    write_file(cfg.output + "/validation_samples.csv", rows);
    write_file(cfg.output + "/validation.json", doc.dump(2) + "\n");

    std::printf("validate: invariance worst %.3g over %d samples (%d skipped)\n", inv.worst,
                inv.used, inv.skipped);
    if (doc.contains("growth") && doc["growth"].contains("worst_ratio"))
        std::printf("validate: growth worst ratio %.6g\n",
                    doc["growth"]["worst_ratio"].get<double>());
    return kOk;
}

int cmd_lemma4(double lambda, double nu, double eps, double p, int sweep, std::uint64_t seed) {
    std::printf("%-12s %-12s %-8s %-12s %-22s %-22s %-12s\n", "lambda", "nu", "eps", "p", "bound",
                "integral", "margin");
    auto print_row = [](double l, double n, double e, double pp) {
        const double bound = lemma4_bound(l, n, e, pp);
        const double integral = lemma4_integral(l, n, e, pp);
        std::printf("%-12.6g %-12.6g %-8.4g %-12.6g %-22.15g %-22.15g %-12.5g\n", l, n, e, pp,
                    bound, integral, bound - integral);
        return bound - integral;
    };
    if (sweep <= 0) {
        print_row(lambda, nu, eps, p);
        return kOk;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sweep; ++i) {
        const double e = 1.5 * u01(rng);
        const double l = -e - 0.05 - 3.0 * u01(rng);
        const double n = std::min(-e - 0.05 - 3.0 * u01(rng), -1.0 - l - e - 0.3);
        const double pp = -5.0 + 10.0 * u01(rng);
        worst = std::min(worst, print_row(l, n, e, pp));
    }
    std::printf("worst margin over sweep: %.6g\n", worst);
    return worst >= -1e-9 ? kOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"global Lipschitz invariant center manifolds for trichotomic linear systems"};
    app.require_subcommand(1);

    CommonArgs args;
    bool force = false;
    std::string manifold_dir;
    double l4_lambda = -2.0, l4_nu = -2.0, l4_eps = 0.0, l4_p = 0.0;
    int l4_sweep = 0;
    std::uint64_t l4_seed = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", args.config_path, "run configuration (JSON)")->required();
        cmd->add_option("--out", args.out_dir, "output directory override");
        cmd->add_option("--seed", args.seed, "seed override")
            ->each([&](const std::string&) { args.seed_set = true; });
    };

    auto* hyp = app.add_subcommand("hypotheses", "certify the contraction hypotheses");
    add_common(hyp);
    auto* solve = app.add_subcommand("solve", "solve for the invariant manifold");
    add_common(solve);
    solve->add_flag("--force", force, "solve even when the certificate fails (not the smallness)");
    auto* validate = app.add_subcommand("validate", "validate a solved manifold");
    add_common(validate);
    validate->add_option("--manifold", manifold_dir, "directory holding manifold.csv + manifest");
    auto* lemma4 = app.add_subcommand("lemma4", "closed-form bound vs quadrature table");
    lemma4->add_option("--lambda", l4_lambda, "first exponent (< 0)");
    lemma4->add_option("--nu", l4_nu, "second exponent (< 0)");
    lemma4->add_option("--eps", l4_eps, "nonuniformity exponent (>= 0)");
    lemma4->add_option("--p", l4_p, "offset");
    lemma4->add_option("--sweep", l4_sweep, "random admissible tuples instead of one row");
    lemma4->add_option("--seed", l4_seed, "sweep seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(hyp)) return cmd_hypotheses(args);
        if (app.got_subcommand(solve)) return cmd_solve(args, force);
        if (app.got_subcommand(validate)) return cmd_validate(args, manifold_dir);
        if (app.got_subcommand(lemma4)) return cmd_lemma4(l4_lambda, l4_nu, l4_eps, l4_p, l4_sweep, l4_seed);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const HypothesisViolated& e) {
        std::fprintf(stderr, "hypothesis error: %s\n", e.what());
        return kHypothesisFail;
    } catch (const NonConvergence& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kNoConvergence;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kConfigError;
    }
    return kOk;
}
