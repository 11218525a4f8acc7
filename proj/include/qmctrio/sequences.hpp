// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <string>

#include "qmctrio/core.hpp"
#include "qmctrio/rand.hpp"

namespace qmct {

enum class SamplerKind { iid, lattice, sobol };
enum class Randomization { none, shift, scramble_shift };

/// Sampler configuration. lattice and sobol support d <= 32 (embedded
/// parameter tables) and power-of-two sizes n = 2^m, m <= 20.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::iid;
    std::size_t d = 1;
    Randomization randomization = Randomization::none;
    StreamKey key;
};

constexpr std::size_t kMaxTableDim = 32;
constexpr unsigned kMaxLogN = 20;

/// n IID uniform points, weights 1/n.
SampleDesign iid_nodes(const SamplerSpec& spec, std::size_t n);

/// Rank-1 lattice node set x_i = frac(i z / n + shift), n = 2^m.
/// The shift is drawn from the sampler's stream key when randomization = shift.
SampleDesign lattice_nodes(const SamplerSpec& spec, unsigned m);

/// First 2^m Sobol' points (32-bit direction numbers, natural index order;
/// index 0 is the origin). randomization = scramble_shift applies a random
/// lower-triangular bit-matrix scramble followed by a digital shift per
/// dimension; this linear scramble has the same mean-square discrepancy
/// behavior as nested uniform scrambling for the L2-type kernels used here.
SampleDesign sobol_nodes(const SamplerSpec& spec, unsigned m);

/// Dispatch on spec.kind with n = 2^m (iid uses n = 2^m as well).
SampleDesign generate_nodes(const SamplerSpec& spec, unsigned m);

SamplerKind sampler_kind_from_string(const std::string& name);
Randomization randomization_from_string(const std::string& name);
const char* to_string(SamplerKind kind);

}  // namespace qmct
