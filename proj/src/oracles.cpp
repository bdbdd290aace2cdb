#include "condgrad/oracles.hpp"

#include <cmath>

namespace condgrad {

LmoResult lmo_lq_ball(const Vector& u, double q) {
    if (!(q > 1.0)) throw std::invalid_argument("lmo_lq_ball: q must be > 1");
    require_finite(u, "lmo_lq_ball");
    const double umax = u.cwiseAbs().maxCoeff();
    if (umax == 0.0) return {Vector::Zero(u.size()), 0.0, true};
    // Work with |u|/umax so the exponent 1/(q-1) cannot overflow; the scale
    // cancels in the normalization.
    const double e = 1.0 / (q - 1.0);
    Vector s = (u.cwiseAbs() / umax).array().pow(e);
    s /= lp_norm(s, q);
    Vector v = -u.array().sign() * s.array();
    return {std::move(v), 0.0, false};
}

double entropy_value(const Vector& x, double lambda) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        if (xi > 0.0) s += xi * std::log(xi);
    }
    return lambda * s;
}

LmoResult lmo_entropy_simplex(const Vector& u, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lmo_entropy_simplex: lambda must be > 0");
    require_finite(u, "lmo_entropy_simplex");
    Vector z = -u / lambda;
    const double zmax = z.maxCoeff();
    Vector v = (z.array() - zmax).exp();
    v /= v.sum();
    const double g = entropy_value(v, lambda);
    return {std::move(v), g, false};
}

LmoResult lmo_box_quadratic(const Matrix& G, double lambda, double alpha) {
    if (!(lambda > 0.0 && alpha > 0.0))
        throw std::invalid_argument("lmo_box_quadratic: lambda and alpha must be > 0");
    require_finite(G, "lmo_box_quadratic");
    Matrix U = (-G / (2.0 * lambda)).cwiseMax(0.0).cwiseMin(alpha);
    const double g = lambda * U.squaredNorm();
    return {Vector{U.reshaped()}, g, false};
}

LmoResult lmo_simplex_quadratic(const Matrix& G, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lmo_simplex_quadratic: lambda must be > 0");
    require_finite(G, "lmo_simplex_quadratic");
    Matrix V(G.rows(), G.cols());
    for (Eigen::Index j = 0; j < G.cols(); ++j) {
        V.col(j) = project_simplex(-G.col(j) / (2.0 * lambda));
    }
    const double g = lambda * V.squaredNorm();
    return {Vector{V.reshaped()}, g, false};
}

double fw_gap(const Vector& grad, const Vector& x, const Vector& v, double g_of_x,
              double g_of_v) {
    const double lin = grad.dot(x - v);
    const double gap = lin + g_of_x - g_of_v;
    if (gap >= 0.0) return gap;
    const double scale =
        std::max({1.0, std::abs(grad.dot(x)), std::abs(grad.dot(v)), std::abs(g_of_x),
                  std::abs(g_of_v)});
    if (gap >= -1e-12 * scale) return 0.0;
    throw std::runtime_error("fw_gap: negative gap beyond rounding tolerance (broken oracle)");
}

}  // namespace condgrad
