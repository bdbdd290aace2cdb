#pragma once

#include "condgrad/solver.hpp"
#include "condgrad/theory.hpp"

#include <iosfwd>
#include <map>

namespace condgrad {

/// Step rules as named in config files. Alg1 resolves (nu, M_nu) from the
/// instance's certified constants at run time.
enum class RuleKind { Alg1, Alg2, Diminishing, Nesterov, Short };

struct RuleSpec {
    RuleKind kind = RuleKind::Alg2;
    double L = 1.0;  // L_init for Alg2, fixed L for Short
    std::string label() const;
};

RuleSpec rule_spec_from_string(const std::string& text);

/// One table row: an instance family swept over consecutive seeds, solved by
/// each requested rule from the family's canonical start.
struct ExperimentConfig {
    std::string name = "experiment";
    InstanceSpec instance;  // instance.seed is ignored; seeds come from base_seed
    std::vector<RuleSpec> rules;
    int n_seeds = 10;
    std::uint64_t base_seed = 1;
    Termination term;

    void validate() const;
};

struct RunOutcome {
    std::string rule;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;  // set when !ok
    SolverTrace trace;  // valid when ok
};

struct RuleSummary {
    std::string rule;
    int n_success = 0;
    int n_fail = 0;
    double avg_iterations = 0.0;  // over successful runs
    double avg_seconds = 0.0;
};

struct ExperimentResult {
    std::string name;
    std::vector<RuleSummary> summary;
    std::vector<RunOutcome> runs;  // rule-major, seed-minor
};

/// Runs every (rule, seed) pair. Instances are generated once per seed and
/// shared across rules; with jobs > 1 runs execute in a worker pool, which
/// never changes results because each run is seeded independently.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs = 1);

// ---------------------------------------------------------------------------
// Config files: INI-style sections, one experiment per section.
//
//   [table1_row3]
//   family = lq_ball
//   n = 1000
//   p = 2.0
//   q = 1.5
//   rules = alg1, alg2, diminishing
//   n_seeds = 10
//   base_seed = 1
//   tol = 1e-6
//   max_iter = 200000
// ---------------------------------------------------------------------------

std::vector<ExperimentConfig> parse_config(std::istream& in);
std::vector<ExperimentConfig> parse_config_file(const std::string& path);

// ---------------------------------------------------------------------------
// CSV emission. Floats use the shortest round-trip decimal form.
// ---------------------------------------------------------------------------

std::string format_double(double x);

/// Header `t,phi,delta,delta_star,tau,L,inner,elapsed_s`; L and inner are
/// empty for rules without a line search.
void emit_trace_csv(const SolverTrace& trace, std::ostream& out);
void emit_trace_csv(const SolverTrace& trace, const std::string& path);

/// Header `t,phi_gap,envelope,delta_star,delta_star_bound,valid`; valid is 1
/// once t enters the envelope's range (convex bounds).
void emit_bounds_csv(const SolverTrace& trace, const TheoremBounds& bounds, double phi_star,
                     std::ostream& out);
void emit_bounds_csv(const SolverTrace& trace, const TheoremBounds& bounds, double phi_star,
                     const std::string& path);

/// Summary table as aligned plain text, one line per rule.
void print_summary(const ExperimentResult& result, std::ostream& out);

}  // namespace condgrad
