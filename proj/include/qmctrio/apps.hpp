// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <vector>

#include "qmctrio/core.hpp"
#include "qmctrio/linalg.hpp"
#include "qmctrio/sequences.hpp"

namespace qmct {

/// Box probability of a N(0, Sigma) variable over [lower, upper]
/// (+-infinity allowed as bounds). factor is the lower-triangular Cholesky
/// factor of Sigma, row-major d x d.
struct GaussianProblem {
    std::size_t d = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    SymMatrix sigma;
    std::vector<double> factor;

    static GaussianProblem make(std::size_t d, std::vector<double> lower,
                                std::vector<double> upper, SymMatrix sigma);

    /// The 3-d worked example: a = (-6,-2,-2), b = (5,2,1),
    /// Sigma = [[16,4,4],[4,2,1.5],[4,1.5,1.3125]].
    static GaussianProblem example3();

    /// Reference value for example3.
    static constexpr double kExample3Mean = 0.6763373243578;
};

/// Separation-of-variables transform: integrand on [0,1]^(d-1) whose integral
/// is the box probability. Arguments of the inverse CDF are clamped to
/// [1e-15, 1 - 1e-15] so designs containing the origin stay finite.
Integrand genz_integrand(const GaussianProblem& p);

/// Plain affine change of variables z = a + (b-a) o x; requires finite bounds.
Integrand affine_integrand(const GaussianProblem& p);

/// Brownian motion covariance min(t_j, t_k) at t_j = j tau / d.
SymMatrix brownian_cov(std::size_t d, double tau);

enum class PathConstruction { pca, cholesky };

/// Factor L with L L^T = Sigma: eigendecomposition V Lambda^(1/2) with
/// eigenvalues descending (pca) or the lower-triangular Cholesky factor.
std::vector<double> path_factor(const SymMatrix& sigma, PathConstruction construction);

/// Asian arithmetic-mean call under Black-Scholes dynamics, monitored at
/// d equally spaced dates.
struct OptionProblem {
    double spot = 100.0;
    double strike = 100.0;
    double rate = 0.05;
    double volatility = 0.5;
    double horizon = 1.0;
    std::size_t d = 12;
    PathConstruction construction = PathConstruction::pca;

    static OptionProblem example12();

    /// Discounted mean of the strike-0 payoff: e^{-r tau} (S0/d) sum e^{r t_j}.
    [[nodiscard]] double zero_strike_mean() const;
};

Integrand asian_call_integrand(const OptionProblem& p);

/// Telescoping estimate over nested monitoring grids d_1 < ... < d_L
/// (each level count must divide the next). Level l couples the fine and
/// coarse payoffs through one shared Brownian path built from time
/// increments. sampler chooses iid or sobol driving points per level.
double multilevel_estimate(const OptionProblem& p, const std::vector<std::size_t>& levels,
                           const std::vector<unsigned>& level_log2n, SamplerKind sampler,
                           Randomization randomization, const StreamKey& key);

}  // namespace qmct
