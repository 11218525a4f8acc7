// SPDX-License-Identifier: MIT
#include "qmctrio/trio.hpp"

#include <cmath>
#include <stdexcept>

#include "qmctrio/linalg.hpp"

namespace qmct {

namespace {

void require_equal_weights(const SampleDesign& design, const char* what) {
    const double w0 = 1.0 / static_cast<double>(design.n);
    for (double w : design.weights)
        if (std::abs(w - w0) > 1e-12)
            throw std::invalid_argument(std::string(what) +
                                        ": closed form assumes equal weights 1/n; "
                                        "use discrepancy_quadratic for general weights");
}

double clamped_sqrt(double sq) {
    return std::sqrt(std::max(0.0, sq));
}

}  // namespace

double discrepancy_quadratic(const KernelSpec& spec, const SampleDesign& design) {
    if (spec.d != design.d)
        throw std::invalid_argument("discrepancy_quadratic: dimension mismatch");
    const double k0 = double_integral(spec);
    double cross = 0.0;
    for (std::size_t i = 0; i < design.n; ++i)
        cross += design.weights[i] * mean_embedding(spec, design.node(i));
    double quad = 0.0;
    for (std::size_t i = 0; i < design.n; ++i) {
        auto xi = design.node(i);
        // diagonal
        quad += design.weights[i] * design.weights[i] * kernel_eval(spec, xi, xi);
        for (std::size_t j = 0; j < i; ++j)
            quad += 2.0 * design.weights[i] * design.weights[j] *
                    kernel_eval(spec, xi, design.node(j));
    }
    return clamped_sqrt(k0 - 2.0 * cross + quad);
}

double l2_discrepancy_closed(const SampleDesign& design) {
    require_equal_weights(design, "l2_discrepancy_closed");
    const std::size_t n = design.n, d = design.d;
    double sq = std::pow(4.0 / 3.0, static_cast<double>(d));
    double cross = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto x = design.node(i);
        double p = 1.0;
        for (std::size_t k = 0; k < d; ++k) p *= (3.0 - x[k] * x[k]) / 2.0;
        cross += p;
    }
    sq -= 2.0 / static_cast<double>(n) * cross;
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = design.node(i);
        double p = 1.0;
        for (std::size_t k = 0; k < d; ++k) p *= 2.0 - xi[k];
        quad += p;
        for (std::size_t j = 0; j < i; ++j) {
            auto xj = design.node(j);
            double q = 1.0;
            for (std::size_t k = 0; k < d; ++k) q *= 2.0 - std::max(xi[k], xj[k]);
            quad += 2.0 * q;
        }
    }
    sq += quad / (static_cast<double>(n) * static_cast<double>(n));
    return clamped_sqrt(sq);
}

double weighted_l2_discrepancy(const SampleDesign& design, std::span<const double> gamma) {
    require_equal_weights(design, "weighted_l2_discrepancy");
    if (gamma.size() != design.d)
        throw std::invalid_argument("weighted_l2_discrepancy: gamma count != d");
    const std::size_t n = design.n, d = design.d;
    double sq = 1.0;
    for (double g : gamma) sq *= 1.0 + g * g / 3.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto x = design.node(i);
        double p = 1.0;
        for (std::size_t k = 0; k < d; ++k)
            p *= 1.0 + gamma[k] * gamma[k] * (1.0 - x[k] * x[k]) / 2.0;
        cross += p;
    }
    sq -= 2.0 / static_cast<double>(n) * cross;
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = design.node(i);
        for (std::size_t j = 0; j <= i; ++j) {
            auto xj = design.node(j);
            double q = 1.0;
            for (std::size_t k = 0; k < d; ++k)
                q *= 1.0 + gamma[k] * gamma[k] * (1.0 - std::max(xi[k], xj[k]));
            quad += (i == j ? 1.0 : 2.0) * q;
        }
    }
    sq += quad / (static_cast<double>(n) * static_cast<double>(n));
    return clamped_sqrt(sq);
}

double iid_expected_sq_disc(const KernelSpec& spec, std::size_t n) {
    if (n == 0) throw std::invalid_argument("iid_expected_sq_disc: n must be positive");
    double diag = 1.0;
    switch (spec.kind) {
        case KernelKind::l2:
            diag = std::pow(1.5, static_cast<double>(spec.d));
            break;
        case KernelKind::weighted_l2:
            for (double g : spec.gamma) diag *= 1.0 + g * g / 2.0;  // int (1+g^2(1-x)) dx
            break;
        case KernelKind::matern:
            diag = 1.0;
            break;
    }
    return (diag - double_integral(spec)) / static_cast<double>(n);
}

std::vector<double> optimal_weights(const KernelSpec& spec, std::span<const double> nodes,
                                    std::size_t n) {
    const SymMatrix k_mat = gram(spec, nodes, n);
    std::vector<double> k_vec(n);
    for (std::size_t i = 0; i < n; ++i)
        k_vec[i] = mean_embedding(spec, nodes.subspan(i * spec.d, spec.d));
    const CholeskyFactor chol = cholesky(k_mat);
    return spd_solve(chol, k_vec);
}

KernelSectionIntegrand::KernelSectionIntegrand(KernelSpec spec_, std::vector<double> anchors_,
                                               std::vector<double> coefficients_)
    : spec(std::move(spec_)), anchors(std::move(anchors_)),
      coefficients(std::move(coefficients_)) {
    if (spec.kind == KernelKind::matern)
        throw std::invalid_argument(
            "KernelSectionIntegrand: f(1)-anchored variation requires l2 or weighted_l2");
    if (anchors.size() != coefficients.size() * spec.d)
        throw std::invalid_argument("KernelSectionIntegrand: anchor storage size");
    exact_mean = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j)
        exact_mean += coefficients[j] *
                      mean_embedding(spec, std::span(anchors).subspan(j * spec.d, spec.d));
    exact_variation = section_variation(*this);
}

double KernelSectionIntegrand::operator()(std::span<const double> x) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j)
        acc += coefficients[j] *
               kernel_eval(spec, x, std::span(anchors).subspan(j * spec.d, spec.d));
    return acc;
}

double KernelSectionIntegrand::value_at_ones() const {
    const std::vector<double> ones(spec.d, 1.0);
    return (*this)(ones);
}

Integrand KernelSectionIntegrand::as_integrand() const {
    Integrand f;
    f.d = spec.d;
    f.exact_mean = exact_mean;
    f.exact_variation = exact_variation;
    f.label = "kernel-section";
    f.eval = [copy = *this](std::span<const double> x) { return copy(x); };
    return f;
}

double section_variation(const KernelSectionIntegrand& f) {
    const std::size_t m = f.anchor_count();
    const SymMatrix kzz = gram(f.spec, f.anchors, m);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            norm_sq += f.coefficients[i] * f.coefficients[j] * kzz(i, j);
    const double f1 = f.value_at_ones();
    const double var_sq = norm_sq - f1 * f1;
    if (var_sq < -1e-12)
        throw std::runtime_error("section_variation: negative squared variation");
    return clamped_sqrt(var_sq);
}

TrioReport trio_decompose(const SampleDesign& design, const Integrand& f, double dsc,
                          std::optional<double> var, TrioFlavor flavor) {
    TrioReport report;
    report.flavor = flavor;
    report.discrepancy = dsc;
    report.variation = var;
    report.mu_hat = estimate(design, f);
    if (f.exact_mean) {
        report.error = *f.exact_mean - report.mu_hat;
        if (var) {
            const double denom = *var * dsc;
            report.confounding = denom != 0.0 ? *report.error / denom : 0.0;
        }
    }
    return report;
}

double randomized_discrepancy_iid(std::size_t n) {
    if (n == 0) throw std::invalid_argument("randomized_discrepancy_iid: n must be positive");
    return 1.0 / std::sqrt(static_cast<double>(n));
}

}  // namespace qmct
