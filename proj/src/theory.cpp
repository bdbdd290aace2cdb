#include "condgrad/theory.hpp"

#include <cmath>

namespace condgrad {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double pow0(double base, double expo) {
    // 0^0 = 1 so the nu = 1 specializations collapse to M_nu exactly
    if (expo == 0.0) return 1.0;
    return std::pow(base, expo);
}
}  // namespace

void RateBoundSpec::validate() const {
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("RateBoundSpec: nu must be in (0,1]");
    if (!(M_nu > 0.0)) throw std::invalid_argument("RateBoundSpec: M_nu must be > 0");
    if (regime == Regime::BoundedDomain) {
        if (!(D_g > 0.0)) throw std::invalid_argument("RateBoundSpec: D_g must be > 0");
    } else {
        if (!(kappa > 0.0 && rho >= 2.0))
            throw std::invalid_argument("RateBoundSpec: need kappa > 0 and rho >= 2");
    }
    if (!(L_init > 0.0)) throw std::invalid_argument("RateBoundSpec: L_init must be > 0");
}

double holder_envelope(double eps, double nu, double M_nu) {
    if (!(eps > 0.0)) throw std::invalid_argument("holder_envelope: eps must be > 0");
    const double e = (1.0 - nu) / (1.0 + nu);
    return pow0((1.0 - nu) / (1.0 + nu) / (2.0 * eps), e) * std::pow(M_nu, 2.0 / (1.0 + nu));
}

double tilde_L(double delta, double dist, double nu, double M_nu) {
    if (!(delta > 0.0 && dist > 0.0))
        throw std::invalid_argument("tilde_L: delta and dist must be > 0");
    const double first = holder_envelope(0.5 * delta, nu, M_nu);
    const double second =
        std::pow(holder_envelope(delta * delta / (4.0 * dist * dist), nu, M_nu),
                 (1.0 + nu) / (2.0 * nu));
    return std::max(first, second);
}

double bar_L(double delta, const RateBoundSpec& spec) {
    if (!(delta > 0.0)) throw std::invalid_argument("bar_L: delta must be > 0");
    spec.validate();
    const double nu = spec.nu, M = spec.M_nu;
    const double first =
        pow0((1.0 - nu) / (1.0 + nu) / delta, (1.0 - nu) / (1.0 + nu)) * std::pow(M, 2.0 / (1.0 + nu));
    double second;
    if (spec.regime == Regime::BoundedDomain) {
        second = pow0(2.0 * (1.0 - nu) / (1.0 + nu), (1.0 - nu) / (2.0 * nu)) *
                 std::pow(M, 1.0 / nu) * pow0(spec.D_g / delta, (1.0 - nu) / nu);
    } else {
        second = pow0(2.0 * (1.0 - nu) / (1.0 + nu), (1.0 - nu) / (2.0 * nu)) *
                 std::pow(M, 1.0 / nu) *
                 pow0(spec.rho / (spec.kappa * std::pow(delta, spec.rho - 1.0)),
                      (1.0 - nu) / (spec.rho * nu));
    }
    return std::max(first, second);
}

// ---------------------------------------------------------------------------
// Theorem envelopes
// ---------------------------------------------------------------------------

TheoremBounds make_theorem_bounds(Method method, const RateBoundSpec& spec,
                                  std::span<const double> phi_gaps, double tilde_L0_run) {
    spec.validate();
    if (phi_gaps.empty()) throw std::invalid_argument("make_theorem_bounds: empty gap series");
    TheoremBounds b;
    b.method = method;
    const double nu = spec.nu, M = spec.M_nu;
    const bool adaptive = method == Method::AdaptiveLs;
    const double M_eff = adaptive ? 2.0 * M : M;

    if (spec.regime == Regime::BoundedDomain) {
        b.alpha = 1.0 / nu;
        b.A = std::pow(M_eff, 1.0 / nu) * std::pow(spec.D_g, (1.0 + nu) / nu);
    } else {
        b.alpha = (spec.rho - 1.0 - nu) / (spec.rho * nu);
        b.A = std::pow(spec.rho / spec.kappa, (1.0 + nu) / (spec.rho * nu)) *
              std::pow(M_eff, 1.0 / nu);
        b.linear = b.alpha == 0.0;  // exactly nu = 1, rho = 2
    }
    b.c = adaptive ? 0.25 : nu / (1.0 + nu);

    if (adaptive) {
        if (!(tilde_L0_run > 0.0))
            throw std::invalid_argument("make_theorem_bounds: AdaptiveLs needs tilde_L0 > 0");
        b.tilde_t0 =
            static_cast<long>(std::ceil(std::max(0.0, std::log2(spec.L_init / tilde_L0_run))));
    }
    auto gap_at = [&phi_gaps](long t) {
        const long last = static_cast<long>(phi_gaps.size()) - 1;
        return phi_gaps[static_cast<std::size_t>(std::clamp(t, 0L, last))];
    };
    b.gap_ref0 = gap_at(b.tilde_t0);

    if (b.linear) {
        // A = 2 M_1 / kappa (param-dependent) or 4 M_1 / kappa (adaptive)
        b.linear_rate = b.c * std::min(1.0, 1.0 / b.A);
        b.gap_t0 = b.gap_ref0;
        return b;
    }
    const double arg = b.gap_ref0 / (b.c * std::pow(b.A, 1.0 / b.alpha));
    b.t0 = arg > 1.0 ? static_cast<long>(std::ceil(std::log(arg) / b.c)) : 0;
    b.gap_t0 = gap_at(b.tilde_t0 + b.t0);
    return b;
}

double TheoremBounds::gamma_bar(long s) const {
    if (linear) return gap_ref0 * std::exp(-linear_rate * static_cast<double>(s));
    if (s < t0) return kInf;
    if (gap_t0 <= 0.0) return 0.0;
    const double base =
        std::pow(gap_t0, -alpha) + c * alpha / A * static_cast<double>(s - t0);
    return std::pow(base, -1.0 / alpha);
}

long TheoremBounds::phi_gap_valid_from() const { return tilde_t0 + (linear ? 0 : t0); }

double TheoremBounds::phi_gap_bound(long t) const {
    if (t < phi_gap_valid_from()) return kInf;
    return gamma_bar(t - tilde_t0);
}

long TheoremBounds::delta_star_convex_valid_from() const {
    if (linear) {
        // 2 max{1, A} / c = 4 max{1, 2 M_1 / kappa} in both theorem displays
        return tilde_t0 + static_cast<long>(std::ceil(4.0 * std::max(1.0, 0.5 * A)));
    }
    if (gap_t0 <= 0.0) return tilde_t0 + t0;
    return tilde_t0 + t0 +
           static_cast<long>(std::ceil(2.0 * A / (c * std::pow(gap_t0, alpha))));
}

double TheoremBounds::delta_star_bound_convex(long t) const {
    if (t < delta_star_convex_valid_from()) return kInf;
    const double amp = std::exp(1.0 / M_E);
    if (linear) return amp * gamma_bar((t - tilde_t0 + 2) / 2);
    return amp * gamma_bar((t - tilde_t0 + t0 + 1) / 2);
}

double TheoremBounds::delta_star_bound_nonconvex(long t) const {
    if (t < tilde_t0) return kInf;
    const double s = static_cast<double>(t + 1 - tilde_t0);
    const double base = gap_ref0 / (c * s);
    return std::max(base, std::pow(A * base, 1.0 / (1.0 + alpha)));
}

// ---------------------------------------------------------------------------
// Corollary iteration bounds
// ---------------------------------------------------------------------------

double complexity_bound(double eps, const RateBoundSpec& spec, ComplexityRegime regime,
                        double gap_ref0, double gap_t0, long tilde_t0, long t0) {
    if (!(eps > 0.0)) throw std::invalid_argument("complexity_bound: eps must be > 0");
    spec.validate();
    const double nu = spec.nu, M = spec.M_nu;
    const double amp = std::exp(1.0 / M_E);
    switch (regime) {
        case ComplexityRegime::NonconvexBounded:
            return static_cast<double>(tilde_t0) +
                   4.0 * gap_ref0 / eps *
                       std::max(1.0, std::pow(2.0 * M * std::pow(spec.D_g, 1.0 + nu) / eps, 1.0 / nu));
        case ComplexityRegime::ConvexBounded:
            return static_cast<double>(tilde_t0 + t0) +
                   8.0 * std::pow(2.0 * M * std::pow(spec.D_g, 1.0 + nu) / gap_t0, 1.0 / nu) *
                       std::max(1.0, nu * (std::pow(amp * gap_t0 / eps, 1.0 / nu) - 1.0));
        case ComplexityRegime::NonconvexUniformlyConvex: {
            const double e = (1.0 + nu) / (spec.rho * nu);
            const double num = std::pow(spec.rho, e) * std::pow(2.0 * M, 1.0 / nu);
            const double den =
                std::pow(spec.kappa, e) * std::pow(eps, (spec.rho - 1.0 - nu) / (spec.rho * nu));
            return static_cast<double>(tilde_t0) + 4.0 * gap_ref0 / eps * std::max(1.0, num / den);
        }
        case ComplexityRegime::ConvexUniformlyConvexLinear:
            return static_cast<double>(tilde_t0) +
                   8.0 * std::max(1.0, 4.0 * M / spec.kappa) *
                       std::max(1.0, std::log(gap_ref0 / eps));
        case ComplexityRegime::ConvexUniformlyConvexSublinear: {
            const double e = (1.0 + nu) / (spec.rho * nu);
            const double a = (spec.rho - 1.0 - nu) / (spec.rho * nu);
            const double lead = 8.0 * std::pow(spec.rho, e) * std::pow(2.0 * M, 1.0 / nu) /
                                (std::pow(spec.kappa, e) * std::pow(gap_t0, a));
            return static_cast<double>(tilde_t0 + t0) +
                   lead * std::max(1.0, (std::pow(amp * gap_t0 / eps, a) - 1.0) / a);
        }
    }
    throw std::logic_error("complexity_bound: unreachable");
}

// ---------------------------------------------------------------------------
// Sampling diagnostics
// ---------------------------------------------------------------------------

double check_holder(const CompositeProblem& problem, double nu, double M_nu, int n_pairs,
                    std::uint64_t seed) {
    Rng rng(seed);
    double worst = -kInf;
    for (int i = 0; i < n_pairs; ++i) {
        const Vector x = problem.sample_feasible(rng);
        const Vector y = problem.sample_feasible(rng);
        const double lhs = (problem.f_grad(x) - problem.f_grad(y)).norm();
        const double rhs = M_nu * std::pow((x - y).norm(), nu);
        worst = std::max(worst, (lhs - rhs) / M_nu);
    }
    return worst;
}

double check_uniform_convexity(const CompositeProblem& problem, double kappa, double rho,
                               int n_samples, std::uint64_t seed) {
    Rng rng(seed);
    double worst = -kInf;
    for (int i = 0; i < n_samples; ++i) {
        const Vector x = problem.sample_feasible(rng);
        const Vector grad = problem.f_grad(x);
        const LmoResult opt = problem.lmo(grad);
        const Vector v = problem.sample_feasible(rng);
        const double excess =
            grad.dot(v) + problem.g_value(v) - grad.dot(opt.v) - opt.g_of_v;
        const double lower = kappa / rho * std::pow((v - opt.v).norm(), rho);
        worst = std::max(worst, lower - excess);
    }
    return worst;
}

}  // namespace condgrad
