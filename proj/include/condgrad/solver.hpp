#pragma once

#include "condgrad/problems.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace condgrad {

// ---------------------------------------------------------------------------
// Step-size rules
// ---------------------------------------------------------------------------

/// tau_t = min{1, (delta_t / (M_nu ||x_t - v_t||^{1+nu}))^{1/nu}}.
struct ParamDependent {
    double nu;
    double M_nu;
};

/// Doubling/halving line search on a local quadratic upper model; needs no
/// problem parameters beyond a positive initial estimate.
struct AdaptiveLS {
    double L_init = 1.0;
};

/// tau_t = 2 / (t + 2).
struct Diminishing {};

/// tau_t = 6(t+1) / ((t+2)(2t+3)).
struct NesterovDiminishing {};

/// tau_t = min{1, delta_t / (L ||x_t - v_t||^2)} with a user-supplied L.
struct ShortStep {
    double L;
};

using StepRuleConfig =
    std::variant<ParamDependent, AdaptiveLS, Diminishing, NesterovDiminishing, ShortStep>;

double step_param_dependent(double delta, double dist, double nu, double M_nu);
double step_diminishing(long t);
double step_nesterov(long t);
double step_short(double delta, double dist, double L);

// ---------------------------------------------------------------------------
// Traces and termination
// ---------------------------------------------------------------------------

struct TraceRecord {
    long t = 0;
    double phi = 0.0;
    double delta = 0.0;
    double delta_star = 0.0;          // min_{i <= t} delta_i
    double tau = 0.0;                 // step taken from x_t (0 on the final record)
    double dist = 0.0;                // ||x_t - v_t||
    std::optional<double> L;          // accepted L_t (AdaptiveLS only)
    std::optional<int> inner;         // line-search trials at t (AdaptiveLS only)
    double elapsed_s = 0.0;
};

enum class SolveStatus { GapTolReached, Stationary, MaxIterReached, MaxTimeReached };

struct Termination {
    double rel_gap_tol = 0.0;         // stop once delta_t / delta_0 <= tol (0 disables)
    long max_iter = 0;                // 0 disables
    double max_seconds = 0.0;         // 0 disables

    void validate() const;
};

struct SolverTrace {
    std::vector<TraceRecord> records;
    SolveStatus status = SolveStatus::MaxIterReached;
    Vector x_final;
    double delta0 = 0.0;
    double best_phi = 0.0;            // min phi over all iterates seen
    long iterations() const { return records.empty() ? 0 : records.back().t; }
};

// ---------------------------------------------------------------------------
// Adaptive line search (one outer step)
// ---------------------------------------------------------------------------

struct LineSearchState {
    Vector x_next;
    double phi_next = 0.0;
    double L = 0.0;
    double tau = 0.0;
    int inner_count = 0;
};

/// Trials i = 0, 1, ...: L^(i) = 2^{i-1} L_prev,
/// tau^(i) = min{1, delta / (2 L^(i) dist^2)}, candidate
/// (1 - tau^(i)) x + tau^(i) v; accepts the first trial with
///   phi(candidate) <= phi_x - tau delta / 2 + L tau^2 dist^2 / 2
/// up to a 1e-12 relative slack. Throws after 200 trials.
LineSearchState adaptive_line_search(const CompositeProblem& problem, const Vector& x,
                                     const Vector& v, double delta, double phi_x, double L_prev);

/// Conditional gradient main loop: LMO, gap, step rule, convex-combination
/// update, one trace record per iteration.
SolverTrace solve(const CompositeProblem& problem, const StepRuleConfig& rule, const Vector& x0,
                  const Termination& term);

}  // namespace condgrad
