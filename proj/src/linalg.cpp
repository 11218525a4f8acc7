// SPDX-License-Identifier: MIT
#include "qmctrio/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qmct {

SymMatrix::SymMatrix(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) throw std::invalid_argument("SymMatrix: storage size");
    double max_abs = 0.0, max_asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            max_abs = std::max({max_abs, std::abs(a_[i * n + j]), std::abs(a_[j * n + i])});
            max_asym = std::max(max_asym, std::abs(a_[i * n + j] - a_[j * n + i]));
        }
    if (max_asym > 1e-12 * std::max(max_abs, 1.0))
        throw std::invalid_argument("SymMatrix: input not symmetric");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            double v = 0.5 * (a_[i * n + j] + a_[j * n + i]);
            a_[i * n + j] = a_[j * n + i] = v;
        }
}

namespace {

bool try_cholesky(const SymMatrix& a, double eps, std::vector<double>& lower) {
    const std::size_t n = a.order();
    lower.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j) + eps;
        for (std::size_t k = 0; k < j; ++k) diag -= lower[j * n + k] * lower[j * n + k];
        if (!(diag > 0.0)) return false;
        const double ljj = std::sqrt(diag);
        lower[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= lower[i * n + k] * lower[j * n + k];
            lower[i * n + j] = s / ljj;
        }
    }
    return true;
}

}  // namespace

CholeskyFactor cholesky(const SymMatrix& a, JitterPolicy policy) {
    const std::size_t n = a.order();
    if (n == 0) throw std::invalid_argument("cholesky: empty matrix");
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
    const double scale = trace / static_cast<double>(n);

    CholeskyFactor f;
    f.n = n;
    if (try_cholesky(a, 0.0, f.lower)) {
        f.jitter = 0.0;
        return f;
    }
    for (double rel = policy.first; rel <= policy.last * 1.0000001; rel *= 10.0) {
        const double eps = rel * scale;
        if (try_cholesky(a, eps, f.lower)) {
            f.jitter = eps;
            return f;
        }
    }
    throw std::runtime_error("cholesky: matrix not positive definite at maximum jitter");
}

std::vector<double> spd_solve(const CholeskyFactor& chol, std::span<const double> b) {
    const std::size_t n = chol.n;
    if (b.size() != n) throw std::invalid_argument("spd_solve: size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (chol(i, i) == 0.0) throw std::runtime_error("spd_solve: singular factor");
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= chol(i, k) * x[k];
        x[i] = s / chol(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= chol(k, ii) * x[k];
        x[ii] = s / chol(ii, ii);
    }
    return x;
}

double logdet(const CholeskyFactor& chol) {
    double s = 0.0;
    for (std::size_t i = 0; i < chol.n; ++i) {
        if (chol(i, i) == 0.0) throw std::runtime_error("logdet: singular factor");
        s += std::log(chol(i, i));
    }
    return 2.0 * s;
}

EigenDecomposition sym_eigen(const SymMatrix& a) {
    const std::size_t n = a.order();
    std::vector<double> m = a.data();           // working copy
    std::vector<double> v(n * n, 0.0);          // accumulated rotations, row i = coords
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double fro = 0.0;
    for (double x : m) fro += x * x;
    fro = std::sqrt(fro);
    const double tol = 1e-12 * std::max(fro, 1e-300);

    auto offdiag = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * m[i * n + j] * m[i * n + j];
        return std::sqrt(s);
    };

    int sweeps = 0;
    while (offdiag() > tol) {
        if (++sweeps > 100) throw std::runtime_error("sym_eigen: no convergence in 100 sweeps");
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m[p * n + q];
                if (apq == 0.0) continue;
                const double app = m[p * n + p], aqq = m[q * n + q];
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m[k * n + p], mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m[p * n + k], mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vpk = v[p * n + k], vqk = v[q * n + k];
                    v[p * n + k] = c * vpk - s * vqk;
                    v[q * n + k] = s * vpk + c * vqk;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m[i * n + i] > m[j * n + j]; });

    EigenDecomposition out;
    out.n = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = m[src * n + src];
        // deterministic sign: largest-magnitude component positive
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v[src * n + i]) > std::abs(v[src * n + imax])) imax = i;
        const double sgn = v[src * n + imax] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.vectors[k * n + i] = sgn * v[src * n + i];
    }
    return out;
}

}  // namespace qmct
