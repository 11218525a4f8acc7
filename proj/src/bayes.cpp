// SPDX-License-Identifier: MIT
#include "qmctrio/bayes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmctrio/linalg.hpp"

namespace qmct {

namespace {

constexpr double kZ99 = 2.58;

struct Assembled {
    double c0 = 0.0;
    std::vector<double> c;
    SymMatrix cmat;
};

Assembled assemble(const KernelSpec& spec, std::span<const double> nodes, std::size_t n) {
    Assembled a;
    a.c0 = double_integral(spec);
    a.c.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        a.c[i] = mean_embedding(spec, nodes.subspan(i * spec.d, spec.d));
    a.cmat = gram(spec, nodes, n);
    return a;
}

}  // namespace

BayesFit bayes_cubature(std::span<const double> nodes, std::size_t n, std::size_t d,
                        std::span<const double> y, double theta, WeightMode mode) {
    if (n == 0 || y.size() != n) throw std::invalid_argument("bayes_cubature: bad sizes");
    const KernelSpec spec = KernelSpec::matern(d, theta);
    const Assembled a = assemble(spec, nodes, n);

    BayesFit fit;
    fit.theta = theta;
    fit.weight_mode = mode;
    fit.n = n;
    fit.d = d;

    double dsc_sq = 0.0;
    if (mode == WeightMode::equal) {
        const double w = 1.0 / static_cast<double>(n);
        double cross = 0.0, quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cross += a.c[i];
            fit.mu_hat += y[i];
            for (std::size_t j = 0; j < n; ++j) quad += a.cmat(i, j);
        }
        fit.mu_hat *= w;
        dsc_sq = a.c0 - 2.0 * w * cross + w * w * quad;
    } else {
        const CholeskyFactor chol = cholesky(a.cmat);
        fit.jitter = chol.jitter;
        const std::vector<double> w = spd_solve(chol, a.c);
        double ctw = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ctw += a.c[i] * w[i];
            fit.mu_hat += w[i] * y[i];
        }
        dsc_sq = a.c0 - ctw;
    }
    fit.dsc_b = std::sqrt(std::max(0.0, dsc_sq));
    return fit;
}

namespace {

// (1/n) log det C_theta + log(y^T C_theta^-1 y); +inf on factorization failure.
double mle_objective(std::span<const double> nodes, std::size_t n, std::size_t d,
                     std::span<const double> y, double theta) {
    const KernelSpec spec = KernelSpec::matern(d, theta);
    const SymMatrix cmat = gram(spec, nodes, n);
    try {
        const CholeskyFactor chol = cholesky(cmat);
        const std::vector<double> ciy = spd_solve(chol, y);
        double quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) quad += y[i] * ciy[i];
        if (!(quad > 0.0)) return std::numeric_limits<double>::infinity();
        return logdet(chol) / static_cast<double>(n) + std::log(quad);
    } catch (const std::runtime_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

std::pair<double, double> mle_fit(std::span<const double> nodes, std::size_t n,
                                  std::size_t d, std::span<const double> y) {
    if (n < 2) throw std::invalid_argument("mle_fit: need n >= 2");
    bool all_zero = true;
    for (double v : y)
        if (v != 0.0) all_zero = false;
    if (all_zero) throw std::invalid_argument("mle_fit: y is identically zero");

    constexpr int kGridPoints = 25;
    const double lo = std::log(1e-2), hi = std::log(1e3);
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> grid(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / (kGridPoints - 1);
        const double val = mle_objective(nodes, n, d, y, std::exp(grid[i]));
        if (val < best_val) {
            best_val = val;
            best = i;
        }
    }
    if (best < 0) throw std::runtime_error("mle_fit: objective not finite on the grid");

    // golden-section refinement on log theta between the grid neighbors
    double a = grid[std::max(0, best - 1)];
    double b = grid[std::min(kGridPoints - 1, best + 1)];
    constexpr double kGolden = 0.61803398874989484820;
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = mle_objective(nodes, n, d, y, std::exp(x1));
    double f2 = mle_objective(nodes, n, d, y, std::exp(x2));
    while (b - a > 1e-3) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = mle_objective(nodes, n, d, y, std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = mle_objective(nodes, n, d, y, std::exp(x2));
        }
    }
    const double theta = std::exp(0.5 * (a + b));

    const KernelSpec spec = KernelSpec::matern(d, theta);
    const CholeskyFactor chol = cholesky(gram(spec, nodes, n));
    const std::vector<double> ciy = spd_solve(chol, y);
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) quad += y[i] * ciy[i];
    const double s = std::sqrt(std::max(0.0, quad) / static_cast<double>(n));
    return {theta, s};
}

BayesFit bayes_fit(std::span<const double> nodes, std::size_t n, std::size_t d,
                   std::span<const double> y, WeightMode mode) {
    const auto [theta, s] = mle_fit(nodes, n, d, y);
    BayesFit fit = bayes_cubature(nodes, n, d, y, theta, mode);
    fit.scale = s;
    fit.half_width_99 = kZ99 * fit.dsc_b * s;
    return fit;
}

std::pair<double, double> credible_bound(const BayesFit& fit) {
    return {fit.mu_hat - fit.half_width_99, fit.mu_hat + fit.half_width_99};
}

GpDraw gp_joint_sample(const KernelSpec& spec, double scale, std::span<const double> nodes,
                       std::size_t n, RandomStream& stream) {
    if (spec.kind != KernelKind::matern)
        throw std::invalid_argument("gp_joint_sample: matern covariance expected");
    // joint covariance of (integral, f(x_1), ..., f(x_n))
    SymMatrix joint(n + 1);
    joint.set(0, 0, double_integral(spec));
    for (std::size_t i = 0; i < n; ++i)
        joint.set(0, i + 1, mean_embedding(spec, nodes.subspan(i * spec.d, spec.d)));
    const SymMatrix cmat = gram(spec, nodes, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) joint.set(i + 1, j + 1, cmat(i, j));

    const CholeskyFactor chol = cholesky(joint);
    std::vector<double> z(n + 1);
    for (double& v : z) v = stream.next_normal();

    GpDraw draw;
    draw.y.resize(n);
    for (std::size_t i = 0; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= i; ++k) acc += chol(i, k) * z[k];
        acc *= scale;
        if (i == 0) draw.integral_mean = acc;
        else draw.y[i - 1] = acc;
    }
    return draw;
}

double randomized_bayes_discrepancy(
    const KernelSpec& spec,
    const std::function<std::vector<double>(std::size_t)>& make_design_nodes, std::size_t n,
    std::size_t replications) {
    if (replications < 2)
        throw std::invalid_argument("randomized_bayes_discrepancy: need >= 2 replications");
    const double w = 1.0 / static_cast<double>(n);
    double mean_sq = 0.0;
    for (std::size_t r = 0; r < replications; ++r) {
        const std::vector<double> nodes = make_design_nodes(r);
        const Assembled a = assemble(spec, nodes, n);
        double cross = 0.0, quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cross += a.c[i];
            for (std::size_t j = 0; j < n; ++j) quad += a.cmat(i, j);
        }
        mean_sq += a.c0 - 2.0 * w * cross + w * w * quad;
    }
    mean_sq /= static_cast<double>(replications);
    return std::sqrt(std::max(0.0, mean_sq));
}

}  // namespace qmct
