#pragma once

#include "condgrad/numerics.hpp"

namespace condgrad {

/// Output of a linear-minimization oracle: the minimizer v of
/// <u, x> + g(x) together with g(v).
struct LmoResult {
    Vector v;
    double g_of_v = 0.0;
    bool degenerate = false;  // u = 0: every feasible point is optimal
};

/// argmin { <u, x> : ||x||_q <= 1 } for q > 1.
///
/// v_i = -sign(u_i) |u_i|^{1/(q-1)} / N, with N chosen so that ||v||_q = 1;
/// this makes <u, v> = -||u||_{q'} with 1/q + 1/q' = 1, which is the
/// optimal value by Hoelder's inequality. For u = 0 returns v = 0 with the
/// degeneracy flag set.
LmoResult lmo_lq_ball(const Vector& u, double q);

/// argmin { <u, x> + lambda * sum_i x_i log x_i : x in the simplex }.
/// Softmax of -u/lambda, evaluated with max subtraction; g_of_v is the
/// entropy term at v with the convention 0 log 0 = 0.
LmoResult lmo_entropy_simplex(const Vector& u, double lambda);

/// Entrywise argmin over { 0 <= U_ij <= alpha } of <G, U> + lambda ||U||_F^2:
/// U_ij = clamp(-G_ij / (2 lambda), 0, alpha). g_of_v = lambda ||U||_F^2.
LmoResult lmo_box_quadratic(const Matrix& G, double lambda, double alpha);

/// Columnwise argmin over simplex columns of <G, V> + lambda ||V||_F^2:
/// column j is the Euclidean projection of -G_col_j / (2 lambda) onto the
/// simplex. g_of_v = lambda ||V||_F^2. Result is flattened column-major.
LmoResult lmo_simplex_quadratic(const Matrix& G, double lambda);

/// Frank-Wolfe gap <grad, x - v> + g(x) - g(v). Always >= 0 when v is a
/// valid LMO output; small negative values from rounding are clamped to 0,
/// anything worse throws (a broken oracle).
double fw_gap(const Vector& grad, const Vector& x, const Vector& v, double g_of_x,
              double g_of_v);

/// Entropy regularizer lambda * sum_i x_i log x_i with 0 log 0 = 0.
double entropy_value(const Vector& x, double lambda);

}  // namespace condgrad
