#include "condgrad/solver.hpp"

#include <chrono>
#include <cmath>

namespace condgrad {

double step_param_dependent(double delta, double dist, double nu, double M_nu) {
    if (delta <= 0.0) return 0.0;
    if (dist <= 0.0)
        throw std::runtime_error("step_param_dependent: positive gap with x_t = v_t");
    const double ratio = delta / (M_nu * std::pow(dist, 1.0 + nu));
    return std::min(1.0, std::pow(ratio, 1.0 / nu));
}

double step_diminishing(long t) { return 2.0 / static_cast<double>(t + 2); }

double step_nesterov(long t) {
    const double td = static_cast<double>(t);
    return 6.0 * (td + 1.0) / ((td + 2.0) * (2.0 * td + 3.0));
}

double step_short(double delta, double dist, double L) {
    if (delta <= 0.0) return 0.0;
    if (dist <= 0.0) throw std::runtime_error("step_short: positive gap with x_t = v_t");
    return std::min(1.0, delta / (L * dist * dist));
}

void Termination::validate() const {
    if (rel_gap_tol <= 0.0 && max_iter <= 0 && max_seconds <= 0.0)
        throw std::invalid_argument("Termination: at least one criterion must be set");
    if (rel_gap_tol < 0.0 || max_seconds < 0.0 || max_iter < 0)
        throw std::invalid_argument("Termination: criteria must be nonnegative");
}

LineSearchState adaptive_line_search(const CompositeProblem& problem, const Vector& x,
                                     const Vector& v, double delta, double phi_x, double L_prev) {
    if (!(delta > 0.0)) throw std::invalid_argument("adaptive_line_search: delta must be > 0");
    if (!(L_prev > 0.0)) throw std::invalid_argument("adaptive_line_search: L_prev must be > 0");
    const double dist2 = (x - v).squaredNorm();
    const double slack = 1e-12 * (1.0 + std::abs(phi_x));
    constexpr int kMaxTrials = 200;
    double L = 0.5 * L_prev;
    for (int i = 0; i < kMaxTrials; ++i, L *= 2.0) {
        const double tau = dist2 > 0.0 ? std::min(1.0, delta / (2.0 * L * dist2)) : 1.0;
        Vector cand = (1.0 - tau) * x + tau * v;
        const double phi_cand = problem.f_value(cand) + problem.g_value(cand);
        const double model = phi_x - 0.5 * tau * delta + 0.5 * L * tau * tau * dist2;
        if (phi_cand <= model + slack) {
            return {std::move(cand), phi_cand, L, tau, i + 1};
        }
    }
    throw std::runtime_error(
        "adaptive_line_search: no acceptable trial after 200 doublings (last L = " +
        std::to_string(L / 2.0) + "); the objective oracles are inconsistent");
}

SolverTrace solve(const CompositeProblem& problem, const StepRuleConfig& rule, const Vector& x0,
                  const Termination& term) {
    term.validate();
    require_finite(x0, "solve: x0");
    double g_x = problem.g_value(x0);
    if (!std::isfinite(g_x)) throw std::invalid_argument("solve: x0 is infeasible");

    SolverTrace out;
    Vector x = x0;
    double L_prev = 0.0;
    if (const auto* als = std::get_if<AdaptiveLS>(&rule)) {
        if (!(als->L_init > 0.0)) throw std::invalid_argument("solve: L_init must be > 0");
        L_prev = als->L_init;
    }
    if (const auto* pd = std::get_if<ParamDependent>(&rule)) {
        if (!(pd->nu > 0.0 && pd->nu <= 1.0 && pd->M_nu > 0.0))
            throw std::invalid_argument("solve: ParamDependent needs nu in (0,1] and M_nu > 0");
    }

    const auto t_start = std::chrono::steady_clock::now();
    auto elapsed = [&t_start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };

    double delta_star = std::numeric_limits<double>::infinity();
    out.best_phi = std::numeric_limits<double>::infinity();
    // phi_next carries the line-search value of phi(x_{t+1}) so AdaptiveLS
    // does not evaluate f twice per iterate.
    std::optional<double> phi_carried;

    for (long t = 0;; ++t) {
        const double f_x = phi_carried ? *phi_carried - g_x : problem.f_value(x);
        const double phi = f_x + g_x;
        phi_carried.reset();
        const Vector grad = problem.f_grad(x);
        const LmoResult lmo = problem.lmo(grad);
        const double delta = fw_gap(grad, x, lmo.v, g_x, lmo.g_of_v);
        if (t == 0) out.delta0 = delta;
        delta_star = std::min(delta_star, delta);
        out.best_phi = std::min(out.best_phi, phi);

        TraceRecord rec;
        rec.t = t;
        rec.phi = phi;
        rec.delta = delta;
        rec.delta_star = delta_star;
        rec.dist = (x - lmo.v).norm();
        rec.elapsed_s = elapsed();
        out.records.push_back(rec);

        const bool stationary = delta <= 1e-15 * (1.0 + std::abs(phi));
        if (stationary) {
            out.status = SolveStatus::Stationary;
            break;
        }
        if (term.rel_gap_tol > 0.0 && delta <= term.rel_gap_tol * out.delta0) {
            out.status = SolveStatus::GapTolReached;
            break;
        }
        if (term.max_iter > 0 && t >= term.max_iter) {
            out.status = SolveStatus::MaxIterReached;
            break;
        }
        if (term.max_seconds > 0.0 && rec.elapsed_s >= term.max_seconds) {
            out.status = SolveStatus::MaxTimeReached;
            break;
        }

        TraceRecord& back = out.records.back();
        if (const auto* als = std::get_if<AdaptiveLS>(&rule)) {
            (void)als;
            LineSearchState ls = adaptive_line_search(problem, x, lmo.v, delta, phi, L_prev);
            x = std::move(ls.x_next);
            L_prev = ls.L;
            back.tau = ls.tau;
            back.L = ls.L;
            back.inner = ls.inner_count;
            phi_carried = ls.phi_next;
            g_x = problem.g_value(x);
        } else {
            double tau;
            if (const auto* pd = std::get_if<ParamDependent>(&rule)) {
                tau = step_param_dependent(delta, back.dist, pd->nu, pd->M_nu);
            } else if (std::holds_alternative<Diminishing>(rule)) {
                // The reference iteration counts for the open-loop rules come
                // from a 1-based schedule (first step 2/3, not 1); evaluating
                // at t+1 reproduces them and the deterministic tail profile
                // delta_t/delta_0 ~ 2/((t+1)(t+2)).
                tau = step_diminishing(t + 1);
            } else if (std::holds_alternative<NesterovDiminishing>(rule)) {
                tau = step_nesterov(t + 1);
            } else {
                tau = step_short(delta, back.dist, std::get<ShortStep>(rule).L);
            }
            back.tau = tau;
            x = ((1.0 - tau) * x + tau * lmo.v).eval();
            g_x = problem.g_value(x);
        }
        if (!std::isfinite(g_x))
            throw std::runtime_error("solve: iterate left dom g (oracle inconsistency)");
    }
    out.x_final = std::move(x);
    return out;
}

}  // namespace condgrad
