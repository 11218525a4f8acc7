// SPDX-License-Identifier: MIT
#pragma once

#include <span>
#include <vector>

#include "qmctrio/core.hpp"
#include "qmctrio/kernels.hpp"

namespace qmct {

/// sqrt(k0 - 2 k^T w + w^T K w), valid for any weights. Tiny negative
/// round-off under the square root is clamped to zero.
double discrepancy_quadratic(const KernelSpec& spec, const SampleDesign& design);

/// Closed-form L2 discrepancy for equal weights 1/n. Throws for unequal
/// weights (use discrepancy_quadratic instead).
double l2_discrepancy_closed(const SampleDesign& design);

/// Closed-form coordinate-weighted L2 discrepancy, equal weights only.
double weighted_l2_discrepancy(const SampleDesign& design, std::span<const double> gamma);

/// Expected squared discrepancy under equal-weight IID sampling:
/// (1/n) [ int K(x,x) dnu - k0 ].
double iid_expected_sq_disc(const KernelSpec& spec, std::size_t n);

/// Discrepancy-minimizing weights w = K^-1 k for fixed nodes (row-major n x d).
std::vector<double> optimal_weights(const KernelSpec& spec, std::span<const double> nodes,
                                    std::size_t n);

/// Test integrand f(x) = sum_j a_j K(x, z_j) with exact mean and exact
/// variation (anchored at T(f) = f(1), valid for the l2 / weighted_l2
/// kernels whose section at the all-ones point is the constant 1).
struct KernelSectionIntegrand {
    KernelSpec spec;
    std::vector<double> anchors;       // m x d, row-major
    std::vector<double> coefficients;  // m
    double exact_mean = 0;
    double exact_variation = 0;

    KernelSectionIntegrand(KernelSpec spec, std::vector<double> anchors,
                           std::vector<double> coefficients);

    [[nodiscard]] std::size_t anchor_count() const { return coefficients.size(); }
    [[nodiscard]] double operator()(std::span<const double> x) const;
    [[nodiscard]] double value_at_ones() const;
    [[nodiscard]] Integrand as_integrand() const;
};

/// ||f - f(1)||_F = sqrt(a^T K_zz a - f(1)^2).
double section_variation(const KernelSectionIntegrand& f);

/// Assembles a TrioReport: error = exact_mean - estimate when the mean is
/// known; confounding = error / (var * dsc) with the zero case mapped to 0.
TrioReport trio_decompose(const SampleDesign& design, const Integrand& f, double dsc,
                          std::optional<double> var, TrioFlavor flavor);

/// Randomized discrepancy for equal-weight IID sampling in L2(nu) with
/// T = mean: exactly 1/sqrt(n).
double randomized_discrepancy_iid(std::size_t n);

}  // namespace qmct
