// SPDX-License-Identifier: MIT
#include "qmctrio/apps.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmctrio/rand.hpp"

namespace qmct {

namespace {

constexpr double kInvCdfClamp = 1e-15;

double clamp01(double u) {
    return std::min(1.0 - kInvCdfClamp, std::max(kInvCdfClamp, u));
}

double cdf_of_bound(double bound, double shift, double scale) {
    if (std::isinf(bound)) return bound > 0 ? 1.0 : 0.0;
    return phi((bound - shift) / scale);
}

void check_lower_triangular(const std::vector<double>& factor, std::size_t d) {
    for (std::size_t j = 0; j < d; ++j) {
        if (!(factor[j * d + j] > 0.0))
            throw std::invalid_argument("GaussianProblem: factor diagonal must be positive");
        for (std::size_t k = j + 1; k < d; ++k)
            if (factor[j * d + k] != 0.0)
                throw std::invalid_argument("GaussianProblem: factor must be lower triangular");
    }
}

}  // namespace

GaussianProblem GaussianProblem::make(std::size_t d, std::vector<double> lower,
                                      std::vector<double> upper, SymMatrix sigma) {
    if (lower.size() != d || upper.size() != d || sigma.order() != d)
        throw std::invalid_argument("GaussianProblem: dimension mismatch");
    for (std::size_t j = 0; j < d; ++j)
        if (!(lower[j] < upper[j]))
            throw std::invalid_argument("GaussianProblem: requires lower < upper");
    GaussianProblem p;
    p.d = d;
    p.lower = std::move(lower);
    p.upper = std::move(upper);
    const CholeskyFactor chol = cholesky(sigma, JitterPolicy{0.0, 0.0});
    p.factor = chol.lower;
    p.sigma = std::move(sigma);
    return p;
}

GaussianProblem GaussianProblem::example3() {
    const double inf = std::numeric_limits<double>::infinity();
    (void)inf;
    SymMatrix sigma(3, {16, 4, 4, 4, 2, 1.5, 4, 1.5, 1.3125});
    return make(3, {-6, -2, -2}, {5, 2, 1}, std::move(sigma));
}

Integrand genz_integrand(const GaussianProblem& p) {
    check_lower_triangular(p.factor, p.d);
    const std::size_t d = p.d;
    const std::vector<double> factor = p.factor;
    const std::vector<double> a = p.lower, b = p.upper;

    const double alpha1 = cdf_of_bound(a[0], 0.0, factor[0]);
    const double beta1 = cdf_of_bound(b[0], 0.0, factor[0]);

    Integrand f;
    f.d = d > 1 ? d - 1 : 1;
    f.label = "mvn-genz";
    f.eval = [d, factor, a, b, alpha1, beta1](std::span<const double> x) {
        double alpha = alpha1, beta = beta1;
        double prod = beta - alpha;
        std::vector<double> y(d > 1 ? d - 1 : 0);
        for (std::size_t j = 1; j < d; ++j) {
            y[j - 1] = phi_inv(clamp01(alpha + x[j - 1] * (beta - alpha)));
            double shift = 0.0;
            for (std::size_t k = 0; k < j; ++k) shift += factor[j * d + k] * y[k];
            const double ljj = factor[j * d + j];
            alpha = cdf_of_bound(a[j], shift, ljj);
            beta = cdf_of_bound(b[j], shift, ljj);
            prod *= beta - alpha;
        }
        return prod;
    };
    return f;
}

Integrand affine_integrand(const GaussianProblem& p) {
    check_lower_triangular(p.factor, p.d);
    const std::size_t d = p.d;
    for (std::size_t j = 0; j < d; ++j)
        if (std::isinf(p.lower[j]) || std::isinf(p.upper[j]))
            throw std::invalid_argument("affine_integrand: bounds must be finite");

    double log_det = 0.0;  // log det Sigma = 2 sum log l_jj
    double volume = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
        log_det += 2.0 * std::log(p.factor[j * d + j]);
        volume *= p.upper[j] - p.lower[j];
    }
    const double log_norm =
        -0.5 * (static_cast<double>(d) * std::log(2.0 * 3.14159265358979323846) + log_det);
    const std::vector<double> factor = p.factor;
    const std::vector<double> a = p.lower, b = p.upper;

    Integrand f;
    f.d = d;
    f.label = "mvn-affine";
    f.eval = [d, factor, a, b, log_norm, volume](std::span<const double> x) {
        // u solves L u = z, so z^T Sigma^-1 z = u^T u
        std::vector<double> u(d);
        for (std::size_t j = 0; j < d; ++j) {
            double z = a[j] + (b[j] - a[j]) * x[j];
            for (std::size_t k = 0; k < j; ++k) z -= factor[j * d + k] * u[k];
            u[j] = z / factor[j * d + j];
        }
        double quad = 0.0;
        for (double v : u) quad += v * v;
        return std::exp(log_norm - 0.5 * quad) * volume;
    };
    return f;
}

SymMatrix brownian_cov(std::size_t d, double tau) {
    if (d == 0 || !(tau > 0.0)) throw std::invalid_argument("brownian_cov: bad arguments");
    SymMatrix sigma(d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k <= j; ++k)
            sigma.set(j, k, static_cast<double>(k + 1) * tau / static_cast<double>(d));
    return sigma;
}

std::vector<double> path_factor(const SymMatrix& sigma, PathConstruction construction) {
    const std::size_t d = sigma.order();
    if (construction == PathConstruction::cholesky) return cholesky(sigma).lower;
    const EigenDecomposition eig = sym_eigen(sigma);
    std::vector<double> l(d * d);
    for (std::size_t k = 0; k < d; ++k) {
        const double root = std::sqrt(std::max(0.0, eig.values[k]));
        for (std::size_t j = 0; j < d; ++j) l[j * d + k] = eig.vectors[k * d + j] * root;
    }
    return l;
}

OptionProblem OptionProblem::example12() { return OptionProblem{}; }

double OptionProblem::zero_strike_mean() const {
    double sum = 0.0;
    for (std::size_t j = 1; j <= d; ++j)
        sum += std::exp(rate * static_cast<double>(j) * horizon / static_cast<double>(d));
    return std::exp(-rate * horizon) * spot * sum / static_cast<double>(d);
}

namespace {

double asian_payoff_from_path(const OptionProblem& p, std::span<const double> path,
                              std::size_t dates) {
    const double drift = p.rate - 0.5 * p.volatility * p.volatility;
    double mean = 0.0;
    for (std::size_t j = 1; j <= dates; ++j) {
        const double t = static_cast<double>(j) * p.horizon / static_cast<double>(dates);
        mean += p.spot * std::exp(drift * t + p.volatility * path[j - 1]);
    }
    mean /= static_cast<double>(dates);
    return std::max(mean - p.strike, 0.0) * std::exp(-p.rate * p.horizon);
}

}  // namespace

Integrand asian_call_integrand(const OptionProblem& p) {
    if (!(p.spot > 0 && p.strike > 0 && p.rate > 0 && p.volatility > 0 && p.horizon > 0) ||
        p.d == 0)
        throw std::invalid_argument("OptionProblem: parameters must be positive");
    const std::size_t d = p.d;
    const std::vector<double> l = path_factor(brownian_cov(d, p.horizon), p.construction);
    const OptionProblem prob = p;

    Integrand f;
    f.d = d;
    f.label = p.construction == PathConstruction::pca ? "asian-pca" : "asian-cholesky";
    f.eval = [d, l, prob](std::span<const double> x) {
        std::vector<double> y(d), path(d, 0.0);
        for (std::size_t j = 0; j < d; ++j) y[j] = phi_inv(clamp01(x[j]));
        for (std::size_t j = 0; j < d; ++j) {
            double z = 0.0;
            for (std::size_t k = 0; k < d; ++k) z += l[j * d + k] * y[k];
            path[j] = z;
        }
        return asian_payoff_from_path(prob, path, d);
    };
    return f;
}

double multilevel_estimate(const OptionProblem& p, const std::vector<std::size_t>& levels,
                           const std::vector<unsigned>& level_log2n, SamplerKind sampler,
                           Randomization randomization, const StreamKey& key) {
    if (levels.empty() || levels.size() != level_log2n.size())
        throw std::invalid_argument("multilevel_estimate: level lists mismatch");
    for (std::size_t l = 1; l < levels.size(); ++l)
        if (levels[l] <= levels[l - 1] || levels[l] % levels[l - 1] != 0)
            throw std::invalid_argument("multilevel_estimate: levels must be nested");
    if (levels.back() != p.d)
        throw std::invalid_argument("multilevel_estimate: finest level must equal d");

    double total = 0.0;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const std::size_t fine = levels[l];
        const std::size_t coarse = l == 0 ? 0 : levels[l - 1];
        SamplerSpec spec{sampler, fine, randomization, key.child("level", l)};
        const SampleDesign design = generate_nodes(spec, level_log2n[l]);

        OptionProblem fine_prob = p;
        fine_prob.d = fine;
        OptionProblem coarse_prob = p;
        coarse_prob.d = coarse;

        const double dt = p.horizon / static_cast<double>(fine);
        const double root_dt = std::sqrt(dt);
        const std::size_t ratio = coarse ? fine / coarse : 0;

        double level_sum = 0.0;
        std::vector<double> path(fine), coarse_path(coarse ? coarse : 0);
        for (std::size_t i = 0; i < design.n; ++i) {
            auto x = design.node(i);
            // one shared Brownian path from fine time increments
            double w = 0.0;
            for (std::size_t j = 0; j < fine; ++j) {
                w += root_dt * phi_inv(clamp01(x[j]));
                path[j] = w;
            }
            double v = asian_payoff_from_path(fine_prob, path, fine);
            if (coarse) {
                for (std::size_t j = 0; j < coarse; ++j)
                    coarse_path[j] = path[(j + 1) * ratio - 1];
                v -= asian_payoff_from_path(coarse_prob, coarse_path, coarse);
            }
            level_sum += design.weights[i] * v;
        }
        total += level_sum;
    }
    return total;
}

}  // namespace qmct
