#include "condgrad/numerics.hpp"

#include <algorithm>
#include <random>

namespace condgrad {

double spectral_norm(const Matrix& A, double rel_tol, std::uint64_t seed, int max_iter) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("spectral_norm: rel_tol must be > 0");
    require_finite(A, "spectral_norm");
    const Eigen::Index n = A.cols();
    if (n == 0 || A.rows() == 0) return 0.0;
    if (A.isZero(0.0)) return 0.0;

    std::mt19937_64 rng(seed);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // uniform in (0,1), shifted off zero so the start has full support
        v[i] = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    v.normalize();

    // Power iteration on A^T A; lambda estimates sigma_max^2.
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vector w = A.transpose() * (A * v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;  // start vector fell in the null space
        const double lambda_new = v.dot(w);
        w /= nw;
        const double dv = (w - v).norm();
        v = w;
        if (it > 0 && std::abs(lambda_new - lambda) <= rel_tol * std::abs(lambda_new) &&
            dv <= std::sqrt(rel_tol)) {
            return std::sqrt(lambda_new);
        }
        lambda = lambda_new;
    }
    throw std::runtime_error("spectral_norm: power iteration did not converge");
}

Vector project_simplex(const Vector& y) {
    if (y.size() == 0) throw std::invalid_argument("project_simplex: empty vector");
    require_finite(y, "project_simplex");
    const Eigen::Index n = y.size();
    std::vector<double> u(y.data(), y.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        css += u[k];
        const double th = (css - 1.0) / static_cast<double>(k + 1);
        if (u[k] - th > 0.0) theta = th;
    }
    return (y.array() - theta).max(0.0);
}

}  // namespace condgrad
