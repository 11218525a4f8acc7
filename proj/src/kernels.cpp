// SPDX-License-Identifier: MIT
#include "qmctrio/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace qmct {

KernelSpec KernelSpec::l2(std::size_t d) { return {KernelKind::l2, d, {}, 1.0}; }

KernelSpec KernelSpec::weighted(std::size_t d, std::vector<double> gamma) {
    if (gamma.size() != d) throw std::invalid_argument("KernelSpec: gamma count != d");
    for (double g : gamma)
        if (!(g > 0.0)) throw std::invalid_argument("KernelSpec: gamma must be positive");
    return {KernelKind::weighted_l2, d, std::move(gamma), 1.0};
}

KernelSpec KernelSpec::weighted_decay(std::size_t d, double decay) {
    std::vector<double> gamma(d);
    for (std::size_t k = 0; k < d; ++k)
        gamma[k] = std::sqrt(std::pow(static_cast<double>(k + 1), -decay));
    return weighted(d, std::move(gamma));
}

KernelSpec KernelSpec::matern(std::size_t d, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("KernelSpec: theta must be positive");
    return {KernelKind::matern, d, {}, theta};
}

namespace {

void check_cube(const KernelSpec& spec, std::span<const double> x) {
    if (x.size() != spec.d) throw std::invalid_argument("kernel: point dimension mismatch");
    for (double v : x)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error("kernel: point outside [0,1]^d");
}

}  // namespace

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> t) {
    check_cube(spec, x);
    check_cube(spec, t);
    double prod = 1.0;
    switch (spec.kind) {
        case KernelKind::l2:
            for (std::size_t k = 0; k < spec.d; ++k) prod *= 2.0 - std::max(x[k], t[k]);
            break;
        case KernelKind::weighted_l2:
            for (std::size_t k = 0; k < spec.d; ++k)
                prod *= 1.0 + spec.gamma[k] * spec.gamma[k] * (1.0 - std::max(x[k], t[k]));
            break;
        case KernelKind::matern:
            for (std::size_t k = 0; k < spec.d; ++k) {
                const double u = spec.theta * std::abs(x[k] - t[k]);
                prod *= (1.0 + u) * std::exp(-u);
            }
            break;
    }
    return prod;
}

namespace {

// int_0^a (1 + theta u) exp(-theta u) du = 2/theta - (a + 2/theta) exp(-theta a)
double matern_partial(double theta, double a) {
    return 2.0 / theta - (a + 2.0 / theta) * std::exp(-theta * a);
}

}  // namespace

double mean_embedding(const KernelSpec& spec, std::span<const double> x) {
    check_cube(spec, x);
    double prod = 1.0;
    switch (spec.kind) {
        case KernelKind::l2:
            for (std::size_t k = 0; k < spec.d; ++k) prod *= (3.0 - x[k] * x[k]) / 2.0;
            break;
        case KernelKind::weighted_l2:
            for (std::size_t k = 0; k < spec.d; ++k)
                prod *= 1.0 + spec.gamma[k] * spec.gamma[k] * (1.0 - x[k] * x[k]) / 2.0;
            break;
        case KernelKind::matern:
            // split the t-integral at t = x
            for (std::size_t k = 0; k < spec.d; ++k)
                prod *= matern_partial(spec.theta, x[k]) +
                        matern_partial(spec.theta, 1.0 - x[k]);
            break;
    }
    return prod;
}

double double_integral(const KernelSpec& spec) {
    double prod = 1.0;
    switch (spec.kind) {
        case KernelKind::l2:
            for (std::size_t k = 0; k < spec.d; ++k) prod *= 4.0 / 3.0;
            break;
        case KernelKind::weighted_l2:
            for (std::size_t k = 0; k < spec.d; ++k)
                prod *= 1.0 + spec.gamma[k] * spec.gamma[k] / 3.0;
            break;
        case KernelKind::matern: {
            // int_0^1 [g(x) + g(1-x)] dx with g(a) = matern_partial(theta, a)
            const double th = spec.theta;
            const double c1 = 4.0 / th - 6.0 / (th * th) +
                              (2.0 / th + 6.0 / (th * th)) * std::exp(-th);
            for (std::size_t k = 0; k < spec.d; ++k) prod *= c1;
            break;
        }
    }
    return prod;
}

SymMatrix gram(const KernelSpec& spec, std::span<const double> nodes, std::size_t n) {
    if (nodes.size() != n * spec.d) throw std::invalid_argument("gram: node storage size");
    SymMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = nodes.subspan(i * spec.d, spec.d);
        for (std::size_t j = 0; j <= i; ++j)
            g.set(i, j, kernel_eval(spec, xi, nodes.subspan(j * spec.d, spec.d)));
    }
    return g;
}

}  // namespace qmct
