#include "tricenter/config.hpp"

#include <cmath>

#include "tricenter/errors.hpp"
#include "tricenter/io.hpp"

namespace tricenter {

ScalarFunction Reparam::function() const {
    if (kind == "identity")
        return {[](double t) { return t; }, [](double) { return 1.0; }};
    if (kind == "odd-cubic") {
        const double c = coeff;
        return {[c](double t) { return t + c * t * t * t; },
                [c](double t) { return 1.0 + 3.0 * c * t * t; }};
    }
    throw ConfigError("unknown reparameterization kind: " + kind);
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    try {
        cfg.system = j.at("system").get<std::string>();
        if (cfg.system != "r4") throw ConfigError("unknown system: " + cfg.system);

        const auto& fam = j.at("family");
        cfg.family.kind = fam.at("kind").get<std::string>();
        cfg.family.a = fam.at("a").get<double>();
        cfg.family.b = fam.at("b").get<double>();
        cfg.family.c = fam.at("c").get<double>();
        cfg.family.d = fam.at("d").get<double>();
        cfg.family.D = fam.at("D").get<double>();
        cfg.family.eps = fam.at("eps").get<double>();
        if (fam.contains("reparam")) {
            cfg.family.reparam.kind = fam.at("reparam").at("kind").get<std::string>();
            cfg.family.reparam.coeff = fam.at("reparam").value("coeff", 0.0);
        }

        const auto& pert = j.at("perturbation");
        cfg.perturbation.kind = pert.at("kind").get<std::string>();
        cfg.perturbation.delta = pert.value("delta", 0.0);
        cfg.perturbation.gamma = pert.value("gamma", 1.0);

        cfg.grid = grid_from_json(j.at("grid"));

        if (j.contains("hypothesis")) {
            const auto& h = j.at("hypothesis");
            cfg.hypothesis.horizon = h.value("horizon", cfg.hypothesis.horizon);
            cfg.hypothesis.sup_points = h.value("sup_points", cfg.hypothesis.sup_points);
            cfg.hypothesis.quad_tol = h.value("quad_tol", cfg.hypothesis.quad_tol);
            cfg.hypothesis.tail_tol = h.value("tail_tol", cfg.hypothesis.tail_tol);
            cfg.hypothesis.convergence_tol =
                h.value("convergence_tol", cfg.hypothesis.convergence_tol);
            cfg.hypothesis.limit_tol = h.value("limit_tol", cfg.hypothesis.limit_tol);
            cfg.hypothesis.limit_horizon = h.value("limit_horizon", cfg.hypothesis.limit_horizon);
            cfg.hypothesis.max_radius = h.value("max_radius", cfg.hypothesis.max_radius);
        }
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            cfg.solver.tol = s.value("tol", cfg.solver.tol);
            cfg.solver.max_iterations = s.value("max_iterations", cfg.solver.max_iterations);
            cfg.solver.ratio_slack = s.value("ratio_slack", cfg.solver.ratio_slack);
            cfg.solver.burn_in = s.value("burn_in", cfg.solver.burn_in);
        }
        if (j.contains("validation")) {
            const auto& v = j.at("validation");
            auto& val = cfg.validation;
            val.invariance_samples = v.value("invariance_samples", val.invariance_samples);
            val.tau_max = v.value("tau_max", val.tau_max);
            val.growth_samples = v.value("growth_samples", val.growth_samples);
            val.spread_max = v.value("spread_max", val.spread_max);
            val.box_fraction = v.value("box_fraction", val.box_fraction);
            val.min_separation = v.value("min_separation", val.min_separation);
            val.integrator_tol = v.value("integrator_tol", val.integrator_tol);
            val.residual_floor = v.value("residual_floor", val.residual_floor);
        }
        cfg.seed = j.value("seed", cfg.seed);
        cfg.output = j.value("output", cfg.output);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad configuration: ") + e.what());
    }

    if (!(cfg.solver.tol > 0.0) || !(cfg.hypothesis.quad_tol > 0.0) ||
        !(cfg.validation.integrator_tol > 0.0))
        throw ConfigError("all tolerances must be positive");
    if (cfg.family.kind != "exponential" && cfg.family.kind != "rho" &&
        cfg.family.kind != "mu" && cfg.family.kind != "polynomial")
        throw ConfigError("unknown family kind: " + cfg.family.kind);
    if (cfg.perturbation.kind != "budget-sine" && cfg.perturbation.kind != "zero")
        throw ConfigError("unknown perturbation kind: " + cfg.perturbation.kind);
    return cfg;
}

nlohmann::json RunConfig::to_json() const {
    return nlohmann::json{
        {"system", system},
        {"family",
         {{"kind", family.kind},
          {"a", family.a},
          {"b", family.b},
          {"c", family.c},
          {"d", family.d},
          {"D", family.D},
          {"eps", family.eps},
          {"reparam", {{"kind", family.reparam.kind}, {"coeff", family.reparam.coeff}}}}},
        {"perturbation",
         {{"kind", perturbation.kind},
          {"delta", perturbation.delta},
          {"gamma", perturbation.gamma}}},
        {"grid", grid_to_json(grid)},
        {"hypothesis",
         {{"horizon", hypothesis.horizon},
          {"sup_points", hypothesis.sup_points},
          {"quad_tol", hypothesis.quad_tol},
          {"tail_tol", hypothesis.tail_tol},
          {"convergence_tol", hypothesis.convergence_tol},
          {"limit_tol", hypothesis.limit_tol},
          {"limit_horizon", hypothesis.limit_horizon},
          {"max_radius", hypothesis.max_radius}}},
        {"solver",
         {{"tol", solver.tol},
          {"max_iterations", solver.max_iterations},
          {"ratio_slack", solver.ratio_slack},
          {"burn_in", solver.burn_in}}},
        {"validation",
         {{"invariance_samples", validation.invariance_samples},
          {"tau_max", validation.tau_max},
          {"growth_samples", validation.growth_samples},
          {"spread_max", validation.spread_max},
          {"box_fraction", validation.box_fraction},
          {"min_separation", validation.min_separation},
          {"integrator_tol", validation.integrator_tol},
          {"residual_floor", validation.residual_floor}}},
        {"seed", seed},
        {"output", output}};
}

ProblemBundle instantiate(const RunConfig& cfg) {
    ProblemBundle bundle;
    const auto& fam = cfg.family;

    if (fam.kind == "exponential" || fam.kind == "rho") {
        RhoParams rp{fam.a, fam.b, fam.c, fam.d, fam.D, fam.eps,
                     fam.kind == "exponential" ? Reparam{}.function() : fam.reparam.function()};
        bundle.bounds = (fam.kind == "exponential")
                            ? make_exponential_bounds(fam.a, fam.b, fam.c, fam.d, fam.D, fam.eps)
                            : make_rho_bounds(rp);
        bundle.example = make_r4_example(nabcd_from_rho(rp), cfg.hypothesis.horizon);
        bundle.system = bundle.example.system();
        // solve against the family bounds (identical to the nabcd realization
        // for exponential rates, and branch-exact for the metrics)
        bundle.system.bounds = bundle.bounds;
        bundle.solvable = true;
        if (cfg.perturbation.kind == "zero") {
            bundle.budget = LipBudget::zero();
            bundle.perturbation = zero_perturbation(4);
        } else {
            bundle.budget = lip_budget_rho_formula(rp, cfg.perturbation.delta,
                                                   cfg.perturbation.gamma);
            bundle.perturbation = make_test_perturbation(bundle.budget, 4);
        }
        return bundle;
    }

    // mu-polynomial families: hypothesis checks only (no shipped realization)
    MuParams mp{fam.a, fam.b, fam.c, fam.d, fam.D, fam.eps,
                fam.kind == "polynomial" ? Reparam{}.function() : fam.reparam.function()};
    bundle.bounds = (fam.kind == "polynomial")
                        ? make_polynomial_bounds(fam.a, fam.b, fam.c, fam.d, fam.D, fam.eps)
                        : make_mu_polynomial_bounds(mp);
    bundle.solvable = false;
    if (cfg.perturbation.kind == "zero") {
        bundle.budget = LipBudget::zero();
        bundle.perturbation = zero_perturbation(4);
    } else {
        bundle.budget = lip_budget_mu(mp, cfg.perturbation.delta, cfg.perturbation.gamma);
        bundle.perturbation = make_test_perturbation(bundle.budget, 4);
    }
    return bundle;
}

}  // namespace tricenter
