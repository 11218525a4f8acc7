// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qmct {

/// Identifies a deterministic random stream by a master seed and a path of
/// (label, index) pairs, e.g. experiment -> replication -> purpose.
/// Identical keys yield identical streams; distinct paths yield streams that
/// behave independently under any thread scheduling.
struct StreamKey {
    std::uint64_t master_seed = 0;
    std::vector<std::pair<std::string, std::uint64_t>> path;

    [[nodiscard]] StreamKey child(std::string label, std::uint64_t index) const;
    [[nodiscard]] std::uint64_t hash() const;
};

/// Value-type pseudo-random stream derived from a StreamKey.
class RandomStream {
public:
    explicit RandomStream(const StreamKey& key) : state_(key.hash()) {}

    std::uint64_t next_u64();
    /// Uniform variate in [0, 1).
    double next_uniform01();
    /// Standard normal variate by inversion of next_uniform01.
    double next_normal();
    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

private:
    std::uint64_t state_;
};

std::vector<double> uniform01(const StreamKey& key, std::size_t count);

/// Standard normal CDF, absolute error below 1e-12.
double phi(double x);

/// Standard normal quantile on (0,1): rational approximation polished by one
/// Newton step against phi. Throws std::domain_error outside (0,1).
double phi_inv(double p);

/// Least-squares slope of log2err against log2n. Requires at least 3 points.
double fit_slope(std::span<const double> log2n, std::span<const double> log2err);

}  // namespace qmct
