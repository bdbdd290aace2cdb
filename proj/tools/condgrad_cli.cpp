// Command-line harness: single solves, table-style experiments, rate-bound
// traces, and sampling diagnostics over the shipped problem families.
//
// Exit codes: 0 success, 1 solve failures, 2 bad configuration.

#include "condgrad/experiment.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>

namespace {

using namespace condgrad;

struct InstanceOpts {
    std::string family = "lq_ball";
    long n = 100, m = 100, k = 5;
    double p = 2.0, q = 2.0, lambda = 1.0, alpha = 1.0;
    std::uint64_t seed = 1;

    void attach(CLI::App& app) {
        app.add_option("--family", family, "lq_ball | entropy | nmf")
            ->check(CLI::IsMember({"lq_ball", "entropy", "nmf"}));
        app.add_option("--n", n, "primary dimension");
        app.add_option("--m", m, "row dimension (entropy, nmf)");
        app.add_option("--k", k, "factorization rank (nmf)");
        app.add_option("--p", p, "residual exponent");
        app.add_option("--q", q, "ball exponent (lq_ball)");
        app.add_option("--lambda", lambda, "regularization weight");
        app.add_option("--alpha", alpha, "box bound (nmf)");
        app.add_option("--seed", seed, "instance seed");
    }

    InstanceSpec spec() const {
        InstanceSpec s;
        s.family = family;
        s.n = n;
        s.m = m;
        s.k = k;
        s.p = p;
        s.q = q;
        s.lambda = lambda;
        s.alpha = alpha;
        s.seed = seed;
        return s;
    }
};

struct TermOpts {
    double tol = 1e-6;
    long max_iter = 1000000;
    double max_seconds = 0.0;

    void attach(CLI::App& app) {
        app.add_option("--tol", tol, "stop once delta_t / delta_0 <= tol");
        app.add_option("--max-iter", max_iter, "iteration cap (0 disables)");
        app.add_option("--max-seconds", max_seconds, "wall-clock cap (0 disables)");
    }

    Termination term() const { return {tol, max_iter, max_seconds}; }
};

RateBoundSpec rate_spec_for(const CompositeProblem& problem, double L_init) {
    const auto& c = problem.constants;
    if (!c.nu || !c.M_nu)
        throw std::invalid_argument("instance '" + problem.name +
                                    "' has no certified (nu, M_nu); bounds unavailable");
    RateBoundSpec spec;
    spec.nu = *c.nu;
    spec.M_nu = *c.M_nu;
    spec.L_init = L_init;
    if (c.kappa && c.rho) {
        spec.regime = Regime::UniformlyConvex;
        spec.kappa = *c.kappa;
        spec.rho = *c.rho;
    } else if (c.D_g) {
        spec.regime = Regime::BoundedDomain;
        spec.D_g = *c.D_g;
    } else {
        throw std::invalid_argument("instance '" + problem.name +
                                    "' carries neither a diameter nor a convexity certificate");
    }
    return spec;
}

int cmd_run(const InstanceOpts& inst, const TermOpts& topt, const std::string& rule_name,
            const std::string& out_path) {
    const CompositeProblem problem = make_problem(inst.spec());
    const RuleSpec rule = rule_spec_from_string(rule_name);
    StepRuleConfig cfg;
    switch (rule.kind) {
        case RuleKind::Alg1: {
            const auto& c = problem.constants;
            if (!c.nu || !c.M_nu)
                throw std::invalid_argument("alg1 needs certified (nu, M_nu) for this family");
            cfg = ParamDependent{*c.nu, *c.M_nu};
            break;
        }
        case RuleKind::Alg2: cfg = AdaptiveLS{rule.L}; break;
        case RuleKind::Diminishing: cfg = Diminishing{}; break;
        case RuleKind::Nesterov: cfg = NesterovDiminishing{}; break;
        case RuleKind::Short: cfg = ShortStep{rule.L}; break;
    }
    const SolverTrace trace = solve(problem, cfg, problem.default_start, topt.term());
    if (out_path.empty() || out_path == "-")
        emit_trace_csv(trace, std::cout);
    else
        emit_trace_csv(trace, out_path);
    const bool converged =
        trace.status == SolveStatus::GapTolReached || trace.status == SolveStatus::Stationary;
    std::cerr << problem.name << ": " << trace.iterations() << " iterations, final delta/delta0 = "
              << format_double(trace.records.back().delta / trace.delta0) << "\n";
    return converged ? 0 : 1;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, int jobs) {
    const std::vector<ExperimentConfig> configs = parse_config_file(config_path);
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    bool all_ok = true;
    for (const ExperimentConfig& cfg : configs) {
        const ExperimentResult result = run_experiment(cfg, jobs);
        print_summary(result, std::cout);
        for (const RunOutcome& run : result.runs) {
            if (!run.ok) {
                all_ok = false;
                std::cerr << cfg.name << " " << run.rule << " seed " << run.seed
                          << " failed: " << run.error << "\n";
                continue;
            }
            if (run.trace.status == SolveStatus::MaxIterReached ||
                run.trace.status == SolveStatus::MaxTimeReached)
                all_ok = false;
            if (!out_dir.empty()) {
                const std::string path = out_dir + "/" + cfg.name + "_" + run.rule + "_" +
                                         std::to_string(run.seed) + ".csv";
                emit_trace_csv(run.trace, path);
            }
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_bounds(const InstanceOpts& inst, const TermOpts& topt, const std::string& rule_name,
               double L_init, const std::string& out_path) {
    const CompositeProblem problem = make_problem(inst.spec());
    const RuleSpec rule = rule_spec_from_string(rule_name);
    Method method;
    StepRuleConfig cfg;
    const RateBoundSpec spec = rate_spec_for(problem, L_init);
    if (rule.kind == RuleKind::Alg1) {
        method = Method::ParamDependent;
        cfg = ParamDependent{spec.nu, spec.M_nu};
    } else if (rule.kind == RuleKind::Alg2) {
        method = Method::AdaptiveLs;
        cfg = AdaptiveLS{L_init};
    } else {
        throw std::invalid_argument("bounds supports only alg1 and alg2");
    }
    const SolverTrace trace = solve(problem, cfg, problem.default_start, topt.term());

    // Optimal-value surrogate: best objective of a deeper reference run.
    Termination ref_term{1e-12, std::max<long>(topt.max_iter, 100000), 0.0};
    const SolverTrace ref = solve(problem, AdaptiveLS{1.0}, problem.default_start, ref_term);
    const double phi_star = std::min(ref.best_phi, trace.best_phi);

    std::vector<double> gaps;
    gaps.reserve(trace.records.size());
    for (const TraceRecord& r : trace.records) gaps.push_back(r.phi - phi_star);
    double tilde_L0 = 0.0;
    if (method == Method::AdaptiveLs) {
        const TraceRecord& r0 = trace.records.front();
        tilde_L0 = r0.dist > 0.0 && r0.delta > 0.0
                       ? tilde_L(r0.delta, r0.dist, spec.nu, spec.M_nu)
                       : spec.M_nu;
    }
    const TheoremBounds bounds = make_theorem_bounds(method, spec, gaps, tilde_L0);
    if (out_path.empty() || out_path == "-")
        emit_bounds_csv(trace, bounds, phi_star, std::cout);
    else
        emit_bounds_csv(trace, bounds, phi_star, out_path);
    return 0;
}

int cmd_check(const InstanceOpts& inst, int samples) {
    const CompositeProblem problem = make_problem(inst.spec());
    const auto& c = problem.constants;
    std::cout << "instance: " << problem.name << "\n";
    if (c.nu && c.M_nu) {
        const double v = check_holder(problem, *c.nu, *c.M_nu, samples, inst.seed + 1000);
        std::cout << "holder(nu=" << format_double(*c.nu) << ", M=" << format_double(*c.M_nu)
                  << "): max relative violation " << format_double(v)
                  << (v <= 1e-8 ? "  [ok]" : "  [VIOLATED]") << "\n";
    } else {
        std::cout << "holder: no certified constants for this family\n";
    }
    if (c.kappa && c.rho) {
        const double v =
            check_uniform_convexity(problem, *c.kappa, *c.rho, samples, inst.seed + 2000);
        std::cout << "uniform convexity(kappa=" << format_double(*c.kappa)
                  << ", rho=" << format_double(*c.rho) << "): max violation " << format_double(v)
                  << (v <= 1e-8 ? "  [ok]" : "  [VIOLATED]") << "\n";
    } else {
        std::cout << "uniform convexity: no certificate; diagnostic with kappa = 1, rho = 2: "
                  << format_double(check_uniform_convexity(problem, 1.0, 2.0, samples,
                                                           inst.seed + 2000))
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"projection-free composite minimization toolkit"};
    app.require_subcommand(1);

    InstanceOpts inst_run, inst_bounds, inst_check;
    TermOpts term_run, term_bounds;
    std::string rule_run = "alg2", rule_bounds = "alg2";
    std::string out_run, out_bounds, config_path, out_dir;
    double L_init = 1.0;
    int jobs = 1, samples = 500;

    CLI::App* run = app.add_subcommand("run", "single solve, trace CSV to stdout or --out");
    inst_run.attach(*run);
    term_run.attach(*run);
    run->add_option("--rule", rule_run, "alg1 | alg2[:L] | diminishing | nesterov | short:L");
    run->add_option("--out", out_run, "trace CSV path ('-' for stdout)");

    CLI::App* exp = app.add_subcommand("experiment", "batch runs from a config file");
    exp->add_option("--config", config_path, "INI-style experiment file")->required();
    exp->add_option("--out-dir", out_dir, "directory for per-run trace CSVs");
    exp->add_option("--jobs", jobs, "worker pool size");

    CLI::App* bnd = app.add_subcommand("bounds", "solve and emit rate-envelope CSV");
    inst_bounds.attach(*bnd);
    term_bounds.attach(*bnd);
    bnd->add_option("--rule", rule_bounds, "alg1 | alg2");
    bnd->add_option("--L-init", L_init, "initial line-search estimate");
    bnd->add_option("--out", out_bounds, "bounds CSV path ('-' for stdout)");

    CLI::App* chk = app.add_subcommand("check", "sampled oracle diagnostics");
    inst_check.attach(*chk);
    chk->add_option("--samples", samples, "sample count per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(inst_run, term_run, rule_run, out_run);
        if (exp->parsed()) return cmd_experiment(config_path, out_dir, jobs);
        if (bnd->parsed()) return cmd_bounds(inst_bounds, term_bounds, rule_bounds, L_init,
                                             out_bounds);
        if (chk->parsed()) return cmd_check(inst_check, samples);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
