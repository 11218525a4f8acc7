// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qmct {

/// A discrete sampling measure: n nodes in [0,1]^d with weights.
/// Row-major node storage, one point per row. Immutable after construction.
struct SampleDesign {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> nodes;    // n*d, row-major
    std::vector<double> weights;  // n
    bool probability = false;     // weights sum to 1 (checked when set)

    // provenance
    std::string sampler;
    std::uint64_t seed = 0;
    std::string substream;

    [[nodiscard]] std::span<const double> node(std::size_t i) const {
        return {nodes.data() + i * d, d};
    }

    /// Checks coordinates in [0,1], finite weights, and (when flagged
    /// probability) that weights sum to 1 within 1e-12. Throws on violation.
    void validate() const;

    static SampleDesign equal_weight(std::size_t n, std::size_t d,
                                     std::vector<double> nodes);
};

struct Integrand {
    std::size_t d = 0;
    std::function<double(std::span<const double>)> eval;
    std::optional<double> exact_mean;
    std::optional<double> exact_variation;
    std::string label;
};

enum class TrioFlavor { deterministic, randomized, bayesian, randomized_bayesian };

/// One cubature run decomposed into the error identity factors.
/// error, variation and confounding are absent when the exact mean or the
/// variation of the integrand is unknown.
struct TrioReport {
    double mu_hat = 0;
    std::optional<double> error;
    std::optional<double> variation;
    double discrepancy = 0;
    std::optional<double> confounding;
    TrioFlavor flavor = TrioFlavor::deterministic;
};

/// Weighted sum of integrand values over the design nodes.
/// Throws on dimension mismatch and on a non-finite integrand value
/// (the message identifies the offending node index).
double estimate(const SampleDesign& design, const Integrand& f);

/// Point-set interchange format: header `# d=<d> n=<n> weights=<uniform|explicit>`,
/// one point per line, coordinates space-separated, explicit weights as the
/// final column.
void write_design(std::ostream& os, const SampleDesign& design);
SampleDesign read_design(std::istream& is);

const char* to_string(TrioFlavor flavor);

}  // namespace qmct
