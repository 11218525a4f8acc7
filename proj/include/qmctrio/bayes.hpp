// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qmctrio/kernels.hpp"
#include "qmctrio/rand.hpp"

namespace qmct {

enum class WeightMode { equal, optimal };

/// Bayesian cubature result under the product Matern covariance s^2 C_theta.
struct BayesFit {
    double theta = 1.0;
    double scale = 0.0;  // s
    WeightMode weight_mode = WeightMode::optimal;
    double mu_hat = 0.0;
    double dsc_b = 0.0;
    double half_width_99 = 0.0;  // 2.58 * dsc_b * scale
    double jitter = 0.0;
    std::size_t n = 0;
    std::size_t d = 0;
};

/// Posterior cubature at a fixed shape theta. equal mode uses w = 1/n and the
/// full quadratic form; optimal mode solves C w = c, which also zeroes the
/// conditional error mean. scale is left at 0 unless set by mle_fit.
BayesFit bayes_cubature(std::span<const double> nodes, std::size_t n, std::size_t d,
                        std::span<const double> y, double theta, WeightMode mode);

/// MLE hyperparameters: theta minimizes (1/n) log det C_theta + log(y^T C_theta^-1 y)
/// over a 25-point log grid on [1e-2, 1e3] refined by golden section to
/// relative width 1e-3; s = sqrt(y^T C^-1 y / n) at the minimizer.
std::pair<double, double> mle_fit(std::span<const double> nodes, std::size_t n,
                                  std::size_t d, std::span<const double> y);

/// Full pipeline: MLE hyperparameters, then cubature with the given weights,
/// filling scale and half_width_99.
BayesFit bayes_fit(std::span<const double> nodes, std::size_t n, std::size_t d,
                   std::span<const double> y, WeightMode mode);

/// 99% credible interval (lo, hi) centered at mu_hat.
std::pair<double, double> credible_bound(const BayesFit& fit);

/// One exact joint draw of (integral, node values) from the zero-mean GP with
/// covariance s^2 C_theta: joint covariance blocks s^2 [c0, c^T; c, C].
struct GpDraw {
    double integral_mean = 0.0;  // mu_f
    std::vector<double> y;
};

GpDraw gp_joint_sample(const KernelSpec& spec, double scale, std::span<const double> nodes,
                       std::size_t n, RandomStream& stream);

/// sqrt of the replication-mean of the Bayesian squared discrepancy over
/// random equal-weight designs produced by make_design(replication).
double randomized_bayes_discrepancy(
    const KernelSpec& spec,
    const std::function<std::vector<double>(std::size_t)>& make_design_nodes, std::size_t n,
    std::size_t replications);

}  // namespace qmct
