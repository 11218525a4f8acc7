// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qmct {

/// Dense symmetric matrix. Construction symmetrizes and rejects inputs whose
/// asymmetry exceeds 1e-12 * max|entry|.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    SymMatrix(std::size_t n, std::vector<double> entries);

    [[nodiscard]] std::size_t order() const { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return a_[i * n_ + j];
    }
    void set(std::size_t i, std::size_t j, double v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }
    [[nodiscard]] const std::vector<double>& data() const { return a_; }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Lower-triangular Cholesky factor of A + jitter*I.
struct CholeskyFactor {
    std::size_t n = 0;
    std::vector<double> lower;  // row-major, upper part zero
    double jitter = 0.0;        // epsilon actually added to the diagonal

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return lower[i * n + j];
    }
};

struct JitterPolicy {
    // Escalation ladder, relative to trace(A)/n.
    double first = 1e-12;
    double last = 1e-6;
};

/// Attempts a plain factorization; on failure escalates the diagonal jitter
/// through {first, 10*first, ..., last} * trace(A)/n. Throws when even the
/// largest jitter fails.
CholeskyFactor cholesky(const SymMatrix& a, JitterPolicy policy = {});

/// Solves (L L^T) x = b by forward/back substitution.
std::vector<double> spd_solve(const CholeskyFactor& chol, std::span<const double> b);

/// log det(L L^T) = 2 sum log L_ii.
double logdet(const CholeskyFactor& chol);

/// Eigenvalues in descending order; eigenvectors[k*n..k*n+n) is the k-th
/// orthonormal eigenvector, sign fixed so its largest-magnitude component
/// is positive.
struct EigenDecomposition {
    std::vector<double> values;
    std::vector<double> vectors;  // row k = eigenvector k
    std::size_t n = 0;
};

/// Cyclic Jacobi iteration; converges to off-diagonal Frobenius norm below
/// 1e-12 * ||A||_F. Intended for small matrices (n <= 64).
EigenDecomposition sym_eigen(const SymMatrix& a);

}  // namespace qmct
