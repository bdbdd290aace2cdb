#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace condgrad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Throws if the expression contains NaN or Inf entries.
template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& x, const char* what) {
    if (!x.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

/// (sum_i |v_i|^p)^{1/p} for p >= 1; p = inf returns max |v_i|.
/// Scaled by the max magnitude so intermediate powers cannot overflow.
template <typename Derived>
double lp_norm(const Eigen::MatrixBase<Derived>& v, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    require_finite(v, "lp_norm");
    if (v.size() == 0) return 0.0;
    const double vmax = v.cwiseAbs().maxCoeff();
    if (vmax == 0.0) return 0.0;
    if (std::isinf(p)) return vmax;
    if (p == 1.0) return v.cwiseAbs().sum();
    if (p == 2.0) return v.norm();
    double s = (v.cwiseAbs() / vmax).array().pow(p).sum();
    return vmax * std::pow(s, 1.0 / p);
}

/// Largest singular value of A within relative error rel_tol, via power
/// iteration on A^T A. The start vector is derived deterministically from
/// `seed`. Throws std::runtime_error if the iteration cap is exceeded.
double spectral_norm(const Matrix& A, double rel_tol, std::uint64_t seed = 0,
                     int max_iter = 10000);

/// Euclidean projection onto the probability simplex (sort-and-threshold).
Vector project_simplex(const Vector& y);

}  // namespace condgrad
