// SPDX-License-Identifier: MIT
#include "qmctrio/sequences.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qmct {

namespace {

// ---------------------------------------------------------------------------
// Rank-1 lattice generating vector, n = 2^20, d <= 32.
// Component-by-component search over random odd candidate pools minimizing
// the shift-averaged weighted L2 criterion with product weights k^-3.
// ---------------------------------------------------------------------------
constexpr std::array<std::uint32_t, kMaxTableDim> kLatticeZ = {
    1,      400279, 574899, 617775, 689527, 470353, 118789, 731105,
    318713, 218987, 179997, 234249, 677255, 738987, 78111,  433947,
    565333, 53811,  300487, 971737, 92703,  576337, 966609, 387345,
    71245,  220887, 189513, 921785, 548071, 111323, 426497, 691191};

// ---------------------------------------------------------------------------
// Sobol' parameters, dimensions 2..32 (dimension 1 is the van der Corput
// sequence). Primitive polynomial degrees, interior-coefficient codes, and
// Joe-Kuo D6 initial direction numbers.
// ---------------------------------------------------------------------------
constexpr std::array<unsigned, 31> kSobolDegree = {
    1, 2, 3, 3, 4, 4, 5, 5, 5, 5, 5, 5, 6, 6, 6, 6,
    6, 6, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7, 7};
constexpr std::array<unsigned, 31> kSobolPoly = {
    0, 1, 1, 2, 1, 4, 2,  4,  7,  11, 13, 14, 1,  13, 16, 19,
    22, 25, 1, 4, 7, 8, 14, 19, 21, 28, 31, 32, 37, 41, 42};
constexpr unsigned kSobolInit[31][7] = {
    {1},
    {1, 3},
    {1, 3, 1},
    {1, 1, 1},
    {1, 1, 3, 3},
    {1, 3, 5, 13},
    {1, 1, 5, 5, 17},
    {1, 1, 5, 5, 5},
    {1, 1, 7, 11, 19},
    {1, 1, 5, 1, 1},
    {1, 1, 1, 3, 11},
    {1, 3, 5, 5, 31},
    {1, 3, 3, 9, 7, 49},
    {1, 1, 1, 15, 21, 21},
    {1, 3, 1, 13, 27, 49},
    {1, 1, 1, 15, 7, 5},
    {1, 3, 1, 15, 13, 25},
    {1, 1, 5, 5, 19, 61},
    {1, 3, 7, 11, 23, 15, 103},
    {1, 3, 7, 13, 13, 15, 69},
    {1, 1, 3, 13, 7, 35, 63},
    {1, 3, 5, 9, 1, 25, 53},
    {1, 3, 1, 13, 9, 35, 107},
    {1, 3, 1, 5, 27, 61, 131},
    {1, 1, 5, 11, 19, 41, 61},
    {1, 3, 5, 3, 3, 13, 69},
    {1, 1, 7, 13, 1, 19, 1},
    {1, 3, 7, 5, 13, 19, 59},
    {1, 1, 3, 9, 25, 29, 41},
    {1, 3, 5, 13, 23, 1, 55},
    {1, 3, 7, 3, 13, 59, 17}};

constexpr unsigned kBits = 32;

// Direction integers for one dimension, MSB-first (bit 31 = first digit).
std::array<std::uint32_t, kBits> direction_integers(std::size_t dim /* 0-based */) {
    std::array<std::uint32_t, kBits> v{};
    if (dim == 0) {
        for (unsigned j = 0; j < kBits; ++j) v[j] = 1u << (kBits - 1 - j);
        return v;
    }
    const unsigned s = kSobolDegree[dim - 1];
    const unsigned a = kSobolPoly[dim - 1];
    for (unsigned j = 0; j < s; ++j)
        v[j] = static_cast<std::uint32_t>(kSobolInit[dim - 1][j]) << (kBits - 1 - j);
    for (unsigned l = s; l < kBits; ++l) {
        std::uint32_t x = v[l - s] >> s;
        x ^= v[l - s];
        for (unsigned j = 1; j < s; ++j)
            if ((a >> (s - 1 - j)) & 1u) x ^= v[l - j];
        v[l] = x;
    }
    return v;
}

void check_table_dims(const SamplerSpec& spec, unsigned m) {
    if (spec.d == 0 || spec.d > kMaxTableDim)
        throw std::invalid_argument("sampler: dimension exceeds embedded table width (32)");
    if (m > kMaxLogN)
        throw std::invalid_argument("sampler: m exceeds 20");
}

SampleDesign finish(SampleDesign design, const SamplerSpec& spec, const char* name) {
    design.sampler = name;
    design.seed = spec.key.master_seed;
    design.validate();
    return design;
}

}  // namespace

SampleDesign iid_nodes(const SamplerSpec& spec, std::size_t n) {
    if (n == 0) throw std::invalid_argument("iid_nodes: n must be positive");
    RandomStream stream(spec.key);
    std::vector<double> nodes(n * spec.d);
    for (double& x : nodes) x = stream.next_uniform01();
    return finish(SampleDesign::equal_weight(n, spec.d, std::move(nodes)), spec, "iid");
}

SampleDesign lattice_nodes(const SamplerSpec& spec, unsigned m) {
    check_table_dims(spec, m);
    const std::size_t n = std::size_t{1} << m;
    std::vector<double> shift(spec.d, 0.0);
    if (spec.randomization != Randomization::none) {
        RandomStream stream(spec.key);
        for (double& s : shift) s = stream.next_uniform01();
    }
    std::vector<double> nodes(n * spec.d);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < spec.d; ++k) {
            const std::size_t num = (i * kLatticeZ[k]) & (n - 1);  // i*z mod n
            double x = static_cast<double>(num) * inv_n + shift[k];
            nodes[i * spec.d + k] = x - std::floor(x);
        }
    return finish(SampleDesign::equal_weight(n, spec.d, std::move(nodes)), spec, "lattice");
}

SampleDesign sobol_nodes(const SamplerSpec& spec, unsigned m) {
    check_table_dims(spec, m);
    const std::size_t n = std::size_t{1} << m;
    const bool scramble = spec.randomization == Randomization::scramble_shift;

    std::vector<std::array<std::uint32_t, kBits>> v(spec.d);
    for (std::size_t k = 0; k < spec.d; ++k) v[k] = direction_integers(k);

    // Linear matrix scramble: fold the random lower-triangular digit matrix
    // into the direction integers, then add a digital shift.
    std::vector<std::uint32_t> digital_shift(spec.d, 0);
    if (scramble) {
        RandomStream stream(spec.key);
        for (std::size_t k = 0; k < spec.d; ++k) {
            std::array<std::uint32_t, kBits> col{};
            for (unsigned c = 0; c < kBits; ++c) {
                const std::uint32_t diag = 1u << (kBits - 1 - c);
                col[c] = diag | (stream.next_u32() & (diag - 1u));
            }
            for (auto& dir : v[k]) {
                std::uint32_t y = 0;
                for (unsigned c = 0; c < kBits; ++c)
                    if (dir & (1u << (kBits - 1 - c))) y ^= col[c];
                dir = y;
            }
            digital_shift[k] = stream.next_u32();
        }
    }

    std::vector<double> nodes(n * spec.d);
    constexpr double norm = 0x1.0p-32;
    for (std::size_t k = 0; k < spec.d; ++k) {
        std::uint32_t y = 0;
        // Gray-code increments; natural index order is restored because the
        // point for index i is emitted at position i directly below.
        std::vector<std::uint32_t> ints(n, 0);
        ints[0] = 0;
        for (std::size_t g = 1; g < n; ++g) {
            unsigned bit = 0;
            std::size_t t = g;
            while (!(t & 1)) {
                t >>= 1;
                ++bit;
            }
            y ^= v[k][bit];
            ints[g ^ (g >> 1)] = y;  // g-th Gray point is point number g^(g>>1)...
        }
        for (std::size_t i = 0; i < n; ++i)
            nodes[i * spec.d + k] = static_cast<double>(ints[i] ^ digital_shift[k]) * norm;
    }
    return finish(SampleDesign::equal_weight(n, spec.d, std::move(nodes)), spec, "sobol");
}

SampleDesign generate_nodes(const SamplerSpec& spec, unsigned m) {
    switch (spec.kind) {
        case SamplerKind::iid: return iid_nodes(spec, std::size_t{1} << m);
        case SamplerKind::lattice: return lattice_nodes(spec, m);
        case SamplerKind::sobol: return sobol_nodes(spec, m);
    }
    throw std::logic_error("generate_nodes: unknown sampler");
}

SamplerKind sampler_kind_from_string(const std::string& name) {
    if (name == "iid") return SamplerKind::iid;
    if (name == "lattice") return SamplerKind::lattice;
    if (name == "sobol") return SamplerKind::sobol;
    throw std::invalid_argument("unknown sampler: " + name);
}

Randomization randomization_from_string(const std::string& name) {
    if (name == "none") return Randomization::none;
    if (name == "shift") return Randomization::shift;
    if (name == "scramble") return Randomization::scramble_shift;
    throw std::invalid_argument("unknown randomization: " + name);
}

const char* to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::iid: return "iid";
        case SamplerKind::lattice: return "lattice";
        case SamplerKind::sobol: return "sobol";
    }
    return "unknown";
}

}  // namespace qmct
