// SPDX-License-Identifier: MIT
#include "qmctrio/rand.hpp"

#include <cmath>
#include <stdexcept>

namespace qmct {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + kGamma + (h << 6) + (h >> 2)));
}

}  // namespace

StreamKey StreamKey::child(std::string label, std::uint64_t index) const {
    StreamKey k = *this;
    k.path.emplace_back(std::move(label), index);
    return k;
}

std::uint64_t StreamKey::hash() const {
    std::uint64_t h = mix64(master_seed + kGamma);
    for (const auto& [label, index] : path) {
        for (unsigned char c : label) h = combine(h, c);
        h = combine(h, 0x1fULL);  // label/index separator
        h = combine(h, index);
    }
    return h;
}

std::uint64_t RandomStream::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double RandomStream::next_uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_normal() {
    double u = next_uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    return phi_inv(u);
}

std::vector<double> uniform01(const StreamKey& key, std::size_t count) {
    RandomStream s(key);
    std::vector<double> out(count);
    for (double& v : out) v = s.next_uniform01();
    return out;
}

double phi(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

namespace {

// Acklam's rational approximation to the normal quantile, ~1e-9 accurate
// before polishing.
double phi_inv_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double phi_inv(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("phi_inv: p must lie in (0,1)");
    double x = phi_inv_approx(p);
    // One Newton step: x -= (Phi(x) - p) / pdf(x).
    double pdf = std::exp(-0.5 * x * x) * 0.3989422804014326779;
    if (pdf > 0.0) x -= (phi(x) - p) / pdf;
    return x;
}

double fit_slope(std::span<const double> log2n, std::span<const double> log2err) {
    if (log2n.size() != log2err.size())
        throw std::invalid_argument("fit_slope: size mismatch");
    if (log2n.size() < 3)
        throw std::invalid_argument("fit_slope: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(log2n.size());
    for (std::size_t i = 0; i < log2n.size(); ++i) {
        if (!std::isfinite(log2n[i]) || !std::isfinite(log2err[i]))
            throw std::invalid_argument("fit_slope: non-finite input");
        sx += log2n[i];
        sy += log2err[i];
        sxx += log2n[i] * log2n[i];
        sxy += log2n[i] * log2err[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qmct
