#include "condgrad/problems.hpp"

#include "json.hpp"

#include <cmath>
#include <memory>

namespace condgrad {

double Rng::normal() {
    const double u1 = 1.0 - uniform01();  // in (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("Rng::gamma: shape must be > 0");
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0);
        const double u = 1.0 - uniform01();
        return g * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze method
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = 1.0 - uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

Matrix Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix G(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) G(i, j) = normal();
    return G;
}

Matrix Rng::orthonormal(Eigen::Index rows, Eigen::Index cols) {
    Matrix G = gaussian(rows, cols);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix& QR = qr.matrixQR();
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (QR(j, j) < 0.0) Q.col(j) = -Q.col(j);
    }
    return Q;
}

// ---------------------------------------------------------------------------

double holder_constant_lp(double p, Eigen::Index m, double spec_norm_A) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("holder_constant_lp: p must be in (1, 2]");
    if (!(m >= 1 && spec_norm_A > 0.0))
        throw std::invalid_argument("holder_constant_lp: need m >= 1 and ||A||_2 > 0");
    const double md = static_cast<double>(m);
    return std::pow(2.0, 2.0 - p) * std::pow(md, (p - 1.0) * (2.0 - p) / (2.0 * p)) *
           std::pow(spec_norm_A, p);
}

double lq_ball_l2_diameter(Eigen::Index n, double q) {
    return 2.0 * std::pow(static_cast<double>(n), std::max(0.0, 0.5 - 1.0 / q));
}

Vector grad_lp_residual(const Matrix& A, const Vector& b, double p, const Vector& x) {
    require_finite(x, "grad_lp_residual");
    Vector r = A * x - b;
    if (p != 2.0) {
        for (Eigen::Index i = 0; i < r.size(); ++i) {
            const double ri = r[i];
            r[i] = ri == 0.0 ? 0.0 : std::pow(std::abs(ri), p - 1.0) * (ri > 0.0 ? 1.0 : -1.0);
        }
    }
    return A.transpose() * r;
}

double value_lp_residual(const Matrix& A, const Vector& b, double p, const Vector& x) {
    const Vector r = A * x - b;
    if (p == 2.0) return 0.5 * r.squaredNorm();
    return r.array().abs().pow(p).sum() / p;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

/// Direction uniform on the lq sphere: coordinates from the generalized
/// Gaussian law with density proportional to exp(-|t|^q), normalized.
Vector lq_sphere_point(Rng& rng, Eigen::Index n, double q, double radius) {
    Vector g(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mag = std::pow(rng.gamma(1.0 / q), 1.0 / q);
        g[i] = rng.uniform01() < 0.5 ? -mag : mag;
    }
    return radius * g / lp_norm(g, q);
}

}  // namespace

LpLqInstance gen_lq_instance(Eigen::Index n, double p, double q, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_lq_instance: n must be >= 2");
    Rng rng(seed);
    Vector d(n);
    for (Eigen::Index i = 0; i < n; ++i) d[i] = rng.uniform(1.0, 100.0);
    Matrix U = rng.orthonormal(n, n);
    Matrix A = U * d.asDiagonal() * U.transpose();
    A = 0.5 * (A + A.transpose()).eval();
    Vector xbar = lq_sphere_point(rng, n, q, 10.0);
    Vector b = A * xbar;
    return {std::move(A), std::move(b), p, q, seed, d.maxCoeff()};
}

EntropyInstance gen_entropy_instance(Eigen::Index m, Eigen::Index n, double p, double lambda,
                                     std::uint64_t seed) {
    if (!(m >= 1 && m <= n)) throw std::invalid_argument("gen_entropy_instance: need 1 <= m <= n");
    Rng rng(seed);
    Vector d(m);
    for (Eigen::Index i = 0; i < m; ++i) d[i] = rng.uniform(0.0, 100.0);
    Matrix U = rng.orthonormal(n, m);
    Matrix V = rng.orthonormal(m, m);
    Matrix A = V * d.asDiagonal() * U.transpose();
    Vector b(m);
    for (Eigen::Index i = 0; i < m; ++i) b[i] = rng.uniform01();
    return {std::move(A), std::move(b), p, lambda, seed, d.maxCoeff()};
}

NmfInstance gen_nmf_instance(Eigen::Index n, Eigen::Index m, Eigen::Index k, double lambda,
                             double alpha, std::uint64_t seed) {
    if (!(k >= 1 && k <= std::min(n, m)))
        throw std::invalid_argument("gen_nmf_instance: need 1 <= k <= min(n, m)");
    Rng rng(seed);
    Matrix Ustar(n, k);
    for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index i = 0; i < n; ++i) Ustar(i, j) = rng.uniform(0.0, alpha);
    // Ground-truth columns are normalized magnitudes of normal draws, so the
    // planted factor is simplex-feasible; signed draws yield near-singular
    // column sums and instances whose reference iteration counts are not
    // reproducible.
    Matrix Vstar(k, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        double s;
        do {
            for (Eigen::Index i = 0; i < k; ++i) Vstar(i, j) = std::abs(rng.normal());
            s = Vstar.col(j).sum();
        } while (s < 1e-8);
        Vstar.col(j) /= s;
    }
    Matrix X = Ustar * Vstar;
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i < n; ++i) X(i, j) += 0.01 * rng.normal();
    return {std::move(X), lambda, alpha, k, seed};
}

// ---------------------------------------------------------------------------
// NMF variable packing
// ---------------------------------------------------------------------------

Matrix NmfInstance::unpack_U(const Vector& z) const {
    return z.head(n() * k).reshaped(n(), k);
}

Matrix NmfInstance::unpack_V(const Vector& z) const {
    return z.tail(k * m()).reshaped(k, m());
}

Vector NmfInstance::pack(const Matrix& U, const Matrix& V) const {
    Vector z(n() * k + k * m());
    z.head(n() * k) = U.reshaped();
    z.tail(k * m()) = V.reshaped();
    return z;
}

NmfEval nmf_value_and_grads(const NmfInstance& inst, const Matrix& U, const Matrix& V) {
    if (U.rows() != inst.n() || U.cols() != inst.k || V.rows() != inst.k || V.cols() != inst.m())
        throw std::invalid_argument("nmf_value_and_grads: shape mismatch");
    Matrix R = U * V - inst.X;
    return {0.5 * R.squaredNorm(), R * V.transpose(), U.transpose() * R};
}

// ---------------------------------------------------------------------------
// Oracle bundles
// ---------------------------------------------------------------------------

CompositeProblem make_problem(const LpLqInstance& instance) {
    auto inst = std::make_shared<const LpLqInstance>(instance);
    CompositeProblem prob;
    prob.name = "lq_ball";
    prob.f_value = [inst](const Vector& x) { return value_lp_residual(inst->A, inst->b, inst->p, x); };
    prob.f_grad = [inst](const Vector& x) { return grad_lp_residual(inst->A, inst->b, inst->p, x); };
    prob.g_value = [inst](const Vector& x) {
        return lp_norm(x, inst->q) <= 1.0 + 1e-9 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    prob.lmo = [inst](const Vector& grad) { return lmo_lq_ball(grad, inst->q); };
    prob.sample_feasible = [inst](Rng& rng) {
        const double r = std::pow(rng.uniform01(), 1.0 / static_cast<double>(inst->A.cols()));
        return Vector{lq_sphere_point(rng, inst->A.cols(), inst->q, r)};
    };
    prob.default_start = Vector::Zero(inst->A.cols());
    prob.constants.nu = inst->p - 1.0;
    prob.constants.M_nu = holder_constant_lp(inst->p, inst->A.rows(), inst->spec_norm_A);
    prob.constants.rho = std::max(2.0, inst->q);
    prob.constants.D_g = lq_ball_l2_diameter(inst->A.cols(), inst->q);
    // kappa is left unset: the Example-1 modulus needs min ||grad f||_2 over
    // the ball, which is not certified per instance.
    return prob;
}

CompositeProblem make_problem(const EntropyInstance& instance) {
    auto inst = std::make_shared<const EntropyInstance>(instance);
    CompositeProblem prob;
    prob.name = "entropy";
    prob.f_value = [inst](const Vector& x) { return value_lp_residual(inst->A, inst->b, inst->p, x); };
    prob.f_grad = [inst](const Vector& x) { return grad_lp_residual(inst->A, inst->b, inst->p, x); };
    prob.g_value = [inst](const Vector& x) {
        if (std::abs(x.sum() - 1.0) > 1e-8 || x.minCoeff() < -1e-12)
            return std::numeric_limits<double>::infinity();
        return entropy_value(x, inst->lambda);
    };
    prob.lmo = [inst](const Vector& grad) { return lmo_entropy_simplex(grad, inst->lambda); };
    prob.sample_feasible = [inst](Rng& rng) {
        Vector v(inst->A.cols());
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = -std::log(1.0 - rng.uniform01());
        return Vector{v / v.sum()};
    };
    prob.default_start = Vector::Constant(inst->A.cols(), 1.0 / static_cast<double>(inst->A.cols()));
    prob.constants.nu = inst->p - 1.0;
    if (inst->p <= 2.0)
        prob.constants.M_nu = holder_constant_lp(inst->p, inst->A.rows(), inst->spec_norm_A);
    prob.constants.kappa = inst->lambda;
    prob.constants.rho = 2.0;
    prob.constants.D_g = std::sqrt(2.0);
    return prob;
}

CompositeProblem make_problem(const NmfInstance& instance) {
    auto inst = std::make_shared<const NmfInstance>(instance);
    const Eigen::Index n = inst->n(), m = inst->m(), k = inst->k;
    CompositeProblem prob;
    prob.name = "nmf";
    prob.f_value = [inst](const Vector& z) {
        return 0.5 * (inst->unpack_U(z) * inst->unpack_V(z) - inst->X).squaredNorm();
    };
    prob.f_grad = [inst](const Vector& z) {
        const NmfEval e = nmf_value_and_grads(*inst, inst->unpack_U(z), inst->unpack_V(z));
        return inst->pack(e.G_U, e.G_V);
    };
    prob.g_value = [inst](const Vector& z) {
        const Matrix U = inst->unpack_U(z);
        const Matrix V = inst->unpack_V(z);
        const bool box_ok = U.minCoeff() >= -1e-9 && U.maxCoeff() <= inst->alpha + 1e-9;
        const bool cols_ok = V.minCoeff() >= -1e-12 &&
                             (V.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-8;
        if (!box_ok || !cols_ok) return std::numeric_limits<double>::infinity();
        return inst->lambda * (U.squaredNorm() + V.squaredNorm());
    };
    prob.lmo = [inst](const Vector& grad) {
        const LmoResult u_part = lmo_box_quadratic(inst->unpack_U(grad), inst->lambda, inst->alpha);
        const LmoResult v_part = lmo_simplex_quadratic(inst->unpack_V(grad), inst->lambda);
        LmoResult out;
        out.v.resize(grad.size());
        out.v.head(u_part.v.size()) = u_part.v;
        out.v.tail(v_part.v.size()) = v_part.v;
        out.g_of_v = u_part.g_of_v + v_part.g_of_v;
        return out;
    };
    prob.sample_feasible = [inst](Rng& rng) {
        Matrix U(inst->n(), inst->k);
        for (Eigen::Index j = 0; j < inst->k; ++j)
            for (Eigen::Index i = 0; i < inst->n(); ++i) U(i, j) = rng.uniform(0.0, inst->alpha);
        Matrix V(inst->k, inst->m());
        for (Eigen::Index j = 0; j < inst->m(); ++j) {
            for (Eigen::Index i = 0; i < inst->k; ++i) V(i, j) = -std::log(1.0 - rng.uniform01());
            V.col(j) /= V.col(j).sum();
        }
        return inst->pack(U, V);
    };
    prob.default_start =
        inst->pack(Matrix::Ones(n, k), Matrix::Constant(k, m, 1.0 / static_cast<double>(k)));
    prob.constants.nu = 1.0;
    {
        // Lipschitz bound for grad f over the feasible box/simplex product:
        // sup(||U||_2^2 + ||V||_2^2 + ||UV - X||_F).
        const double uF = inst->alpha * std::sqrt(static_cast<double>(n * k));
        const double vF = std::sqrt(static_cast<double>(m));
        prob.constants.M_nu = uF * uF + vF * vF + inst->X.norm() + uF * vF;
    }
    prob.constants.kappa = 2.0 * inst->lambda;
    prob.constants.rho = 2.0;
    prob.constants.D_g = std::sqrt(inst->alpha * inst->alpha * static_cast<double>(n * k) +
                                   2.0 * static_cast<double>(m));
    return prob;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

std::string to_json(const InstanceSpec& spec) {
    nlohmann::json j{{"family", spec.family}, {"n", spec.n},         {"m", spec.m},
                     {"k", spec.k},           {"p", spec.p},         {"q", spec.q},
                     {"lambda", spec.lambda}, {"alpha", spec.alpha}, {"seed", spec.seed}};
    return j.dump(2);
}

InstanceSpec instance_spec_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    InstanceSpec spec;
    spec.family = j.at("family").get<std::string>();
    spec.n = j.value("n", 0);
    spec.m = j.value("m", 0);
    spec.k = j.value("k", 0);
    spec.p = j.value("p", 2.0);
    spec.q = j.value("q", 2.0);
    spec.lambda = j.value("lambda", 0.0);
    spec.alpha = j.value("alpha", 0.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    return spec;
}

CompositeProblem make_problem(const InstanceSpec& spec) {
    if (spec.family == "lq_ball") return make_problem(gen_lq_instance(spec.n, spec.p, spec.q, spec.seed));
    if (spec.family == "entropy")
        return make_problem(gen_entropy_instance(spec.m, spec.n, spec.p, spec.lambda, spec.seed));
    if (spec.family == "nmf")
        return make_problem(gen_nmf_instance(spec.n, spec.m, spec.k, spec.lambda, spec.alpha, spec.seed));
    throw std::invalid_argument("make_problem: unknown family '" + spec.family + "'");
}

}  // namespace condgrad
