#pragma once

#include "condgrad/oracles.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

namespace condgrad {

/// Deterministic sampling helpers. Distributions are implemented by hand so
/// that a seed reproduces the same instance bit for bit on any platform.
struct Rng {
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    std::mt19937_64 gen;

    double uniform01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double normal();                  // Box-Muller, no cached spare
    double gamma(double shape);       // Marsaglia-Tsang, any shape > 0
    Matrix gaussian(Eigen::Index rows, Eigen::Index cols);
    /// QR-based orthonormal columns (rows x cols, rows >= cols), with the
    /// sign of R's diagonal fixed so the factor is unique.
    Matrix orthonormal(Eigen::Index rows, Eigen::Index cols);
};

/// Known analytic constants of a problem instance. All optional; a solver
/// rule or a theory envelope that needs one of them checks presence itself.
struct ProblemConstants {
    std::optional<double> nu;      // Hoelder exponent of grad f, in (0,1]
    std::optional<double> M_nu;    // Hoelder modulus
    std::optional<double> kappa;   // uniform-convexity modulus of the subproblem
    std::optional<double> rho;     // uniform-convexity exponent, >= 2
    std::optional<double> D_g;     // l2 diameter of dom g
};

/// Oracle bundle for min f(x) + g(x). g may be +inf outside its domain;
/// the LMO receives grad f(x) and returns the subproblem minimizer.
struct CompositeProblem {
    std::function<double(const Vector&)> f_value;
    std::function<Vector(const Vector&)> f_grad;
    std::function<double(const Vector&)> g_value;
    std::function<LmoResult(const Vector&)> lmo;
    std::function<Vector(Rng&)> sample_feasible;
    Vector default_start;
    ProblemConstants constants;
    std::string name;
};

// ---------------------------------------------------------------------------
// Instance families
// ---------------------------------------------------------------------------

/// min (1/p)||Ax - b||_p^p over the lq unit ball. A is n x n symmetric
/// positive definite with eigenvalues in [1, 100].
struct LpLqInstance {
    Matrix A;
    Vector b;
    double p, q;
    std::uint64_t seed;
    double spec_norm_A;  // exact by construction (largest eigenvalue)
};

/// min (1/p)||Ax - b||_p^p + lambda sum x_i log x_i over the simplex.
/// A is m x n with singular values in [0, 100].
struct EntropyInstance {
    Matrix A;
    Vector b;
    double p, lambda;
    std::uint64_t seed;
    double spec_norm_A;
};

/// min (1/2)||X - UV||_F^2 + lambda(||U||_F^2 + ||V||_F^2) with U in the
/// box [0, alpha]^{n x k} and the columns of V in the simplex. The solver
/// variable is the pair (U, V) flattened column-major, U first.
struct NmfInstance {
    Matrix X;
    double lambda, alpha;
    Eigen::Index k;
    std::uint64_t seed;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index m() const { return X.cols(); }
    Matrix unpack_U(const Vector& z) const;
    Matrix unpack_V(const Vector& z) const;
    Vector pack(const Matrix& U, const Matrix& V) const;
};

LpLqInstance gen_lq_instance(Eigen::Index n, double p, double q, std::uint64_t seed);
EntropyInstance gen_entropy_instance(Eigen::Index m, Eigen::Index n, double p, double lambda,
                                     std::uint64_t seed);
NmfInstance gen_nmf_instance(Eigen::Index n, Eigen::Index m, Eigen::Index k, double lambda,
                             double alpha, std::uint64_t seed);

/// Gradient of (1/p)||Ax - b||_p^p: A^T (|r|^{p-1} o sign(r)), r = Ax - b.
Vector grad_lp_residual(const Matrix& A, const Vector& b, double p, const Vector& x);
double value_lp_residual(const Matrix& A, const Vector& b, double p, const Vector& x);

/// Hoelder modulus of grad (1/p)||Ax - b||_p^p with respect to the l2 norm:
/// 2^{2-p} m^{(p-1)(2-p)/(2p)} ||A||_2^p, with exponent nu = p - 1.
double holder_constant_lp(double p, Eigen::Index m, double spec_norm_A);

/// l2 diameter of the lq unit ball: 2 n^{max(0, 1/2 - 1/q)}.
double lq_ball_l2_diameter(Eigen::Index n, double q);

/// f, G_U = (UV - X) V^T, G_V = U^T (UV - X) for f = (1/2)||X - UV||_F^2.
struct NmfEval {
    double f;
    Matrix G_U, G_V;
};
NmfEval nmf_value_and_grads(const NmfInstance& inst, const Matrix& U, const Matrix& V);

CompositeProblem make_problem(const LpLqInstance& inst);
CompositeProblem make_problem(const EntropyInstance& inst);
CompositeProblem make_problem(const NmfInstance& inst);

// ---------------------------------------------------------------------------
// Persistence: instances are stored as their generator arguments; the seed
// regenerates the matrices exactly.
// ---------------------------------------------------------------------------

struct InstanceSpec {
    std::string family;  // "lq_ball" | "entropy" | "nmf"
    Eigen::Index n = 0, m = 0, k = 0;
    double p = 2.0, q = 2.0, lambda = 0.0, alpha = 0.0;
    std::uint64_t seed = 0;
};

std::string to_json(const InstanceSpec& spec);
InstanceSpec instance_spec_from_json(const std::string& text);
CompositeProblem make_problem(const InstanceSpec& spec);

}  // namespace condgrad
