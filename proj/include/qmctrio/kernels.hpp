// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qmctrio/linalg.hpp"

namespace qmct {

enum class KernelKind { l2, weighted_l2, matern };

/// A product reproducing kernel / GP covariance on [0,1]^d under the uniform
/// measure, with closed-form mean embedding and double integral.
///
/// Per-coordinate factors:
///   l2:          2 - max(x,t)
///   weighted_l2: 1 + gamma_k^2 (1 - max(x,t))
///   matern:      (1 + theta|x-t|) exp(-theta|x-t|)
struct KernelSpec {
    KernelKind kind = KernelKind::l2;
    std::size_t d = 1;
    std::vector<double> gamma;  // weighted_l2 only, one per coordinate, > 0
    double theta = 1.0;         // matern only, > 0

    static KernelSpec l2(std::size_t d);
    static KernelSpec weighted(std::size_t d, std::vector<double> gamma);
    /// gamma_k^2 = k^-decay, k = 1..d.
    static KernelSpec weighted_decay(std::size_t d, double decay);
    static KernelSpec matern(std::size_t d, double theta);
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> t);

/// k(x) = integral of K(x, t) over t in [0,1]^d.
double mean_embedding(const KernelSpec& spec, std::span<const double> x);

/// k0 = double integral of K over [0,1]^d x [0,1]^d.
double double_integral(const KernelSpec& spec);

/// Pairwise kernel matrix for row-major nodes (n x d).
SymMatrix gram(const KernelSpec& spec, std::span<const double> nodes, std::size_t n);

}  // namespace qmct
