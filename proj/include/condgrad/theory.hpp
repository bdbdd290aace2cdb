#pragma once

#include "condgrad/problems.hpp"

#include <span>

namespace condgrad {

enum class Method { ParamDependent, AdaptiveLs };
enum class Regime { BoundedDomain, UniformlyConvex };

/// Constants feeding the theoretical rate machinery.
struct RateBoundSpec {
    double nu = 1.0;
    double M_nu = 0.0;
    Regime regime = Regime::BoundedDomain;
    double D_g = 0.0;    // BoundedDomain
    double kappa = 0.0;  // UniformlyConvex
    double rho = 2.0;    // UniformlyConvex
    double L_init = 1.0; // AdaptiveLs envelopes only

    void validate() const;
};

/// Smoothing envelope of a Hoelder-gradient function:
/// L(eps) = ((1-nu)/(1+nu) * 1/(2 eps))^{(1-nu)/(1+nu)} M^{2/(1+nu)};
/// equals M for nu = 1 (convention 0^0 = 1).
double holder_envelope(double eps, double nu, double M_nu);

/// Line-search certificate for one iteration:
/// max{ L(delta/2), L(delta^2 / (4 dist^2))^{(1+nu)/(2 nu)} }.
double tilde_L(double delta, double dist, double nu, double M_nu);

/// Regime-wide certificate bound, non-increasing in delta.
double bar_L(double delta, const RateBoundSpec& spec);

/// Per-theorem envelope constants and bound evaluators, assembled from a
/// run's phi-gap series (phi(x_t) minus the optimal-value surrogate) so the
/// gap values at the warm-up indices t0, tilde_t0 are available.
struct TheoremBounds {
    Method method;
    bool linear = false;     // nu = 1, rho = 2, uniformly convex
    double A = 0.0;          // recurrence constant of the selected theorem
    double c = 0.0;
    double alpha = 0.0;
    double linear_rate = 0.0;
    long tilde_t0 = 0;       // 0 for the parameter-dependent method
    long t0 = 0;             // 0 in the linear case
    double gap_ref0 = 0.0;   // phi gap at iterate tilde_t0
    double gap_t0 = 0.0;     // phi gap at iterate tilde_t0 + t0

    /// Envelope gamma_bar at the theorem's own index s.
    double gamma_bar(long s) const;
    /// Bound on phi(x_t) - phi* at absolute iterate t (convex f);
    /// +inf before the validity threshold.
    double phi_gap_bound(long t) const;
    long phi_gap_valid_from() const;
    /// Bound on delta*_t for convex f; +inf before its threshold.
    double delta_star_bound_convex(long t) const;
    long delta_star_convex_valid_from() const;
    /// Bound on delta*_t without convexity, valid for t >= tilde_t0.
    double delta_star_bound_nonconvex(long t) const;
};

/// phi_gaps[t] must hold phi(x_t) - phi_surrogate for t = 0..T of a run.
/// tilde_L0_run is the run's line-search certificate at t = 0 (ignored for
/// the parameter-dependent method).
TheoremBounds make_theorem_bounds(Method method, const RateBoundSpec& spec,
                                  std::span<const double> phi_gaps, double tilde_L0_run = 0.0);

enum class ComplexityRegime {
    NonconvexBounded,
    ConvexBounded,
    NonconvexUniformlyConvex,
    ConvexUniformlyConvexLinear,
    ConvexUniformlyConvexSublinear,
};

/// Closed-form iteration bound for reaching delta_t <= eps with the
/// adaptive line-search method. gap_ref0 and gap_t0 are the phi gaps at
/// iterates tilde_t0 and tilde_t0 + t0 of the run being certified.
double complexity_bound(double eps, const RateBoundSpec& spec, ComplexityRegime regime,
                        double gap_ref0, double gap_t0, long tilde_t0, long t0);

/// Max relative violation of the Hoelder inequality over sampled feasible
/// pairs: max (||grad f(x) - grad f(y)||_2 - M ||x - y||_2^nu) / M.
double check_holder(const CompositeProblem& problem, double nu, double M_nu, int n_pairs,
                    std::uint64_t seed);

/// Max violation of the uniform-convexity inequality of the LMO subproblem
/// over sampled (x, v): max (kappa/rho) ||v - v*||^rho - (subproblem value
/// at v - value at v*).
double check_uniform_convexity(const CompositeProblem& problem, double kappa, double rho,
                               int n_samples, std::uint64_t seed);

}  // namespace condgrad
