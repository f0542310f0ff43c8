// Copyright 2026 The qjpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense complex linear algebra: Hermitian eigensystems with degeneracy
// grouping, spectral projectors, unitary exponentials and SVD rank/pinv.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qjpd/errors.hpp"

namespace qjpd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kDegeneracyTol = 1e-9;
inline constexpr double kRankThresholdRatio = 1e-8;

/// Largest entry modulus of any dense Eigen expression.
template <class Derived>
double max_norm(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Elementwise comparison; the tolerance is always explicit.
inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return max_norm(a - b) <= tol;
}

inline double hermitian_deviation(const ComplexMatrix& m) {
    return max_norm(m - m.adjoint());
}

inline ComplexMatrix identity(std::size_t n) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

/// Spectral decomposition grouped by distinct eigenvalue.
///
/// `eigenvalues[k]` is the k-th distinct eigenvalue (descending), `projectors[k]`
/// the orthogonal projector onto its eigenspace and `multiplicities[k]` the
/// dimension of that eigenspace.
struct EigenSystem {
    std::vector<double> eigenvalues;
    std::vector<ComplexMatrix> projectors;
    std::vector<int> multiplicities;

    std::size_t size() const { return eigenvalues.size(); }

    std::size_t dim() const {
        return projectors.empty() ? 0 : static_cast<std::size_t>(projectors.front().rows());
    }

    ComplexMatrix reconstruct() const {
        ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim()),
                                                static_cast<Eigen::Index>(dim()));
        for (std::size_t k = 0; k < size(); ++k) out += eigenvalues[k] * projectors[k];
        return out;
    }
};

/// Diagonalizes a Hermitian matrix. Eigenvalues closer than `degeneracy_tol`
/// (scaled by the spectral radius when it exceeds one) form one group; the
/// group's eigenvalue is the mean of its members.
inline EigenSystem eigensystem(const ComplexMatrix& h, double degeneracy_tol = kDegeneracyTol) {
    if (h.rows() == 0 || h.rows() != h.cols()) {
        throw Error(ErrorKind::EmptyMatrix, "eigensystem needs a non-empty square matrix");
    }
    if (!(degeneracy_tol > 0.0)) {
        throw Error(ErrorKind::DomainError, "degeneracy tolerance must be positive");
    }
    const double scale = std::max(1.0, max_norm(h));
    if (hermitian_deviation(h) > kHermitianTol * scale) {
        throw Error(ErrorKind::NotHermitian,
                    "matrix asymmetry " + std::to_string(hermitian_deviation(h)));
    }

    // Symmetrize first so that the solver sees an exactly Hermitian input.
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }

    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    const Eigen::Index n = sym.rows();
    const double radius = values.cwiseAbs().maxCoeff();
    const double tol = degeneracy_tol * std::max(1.0, radius);

    EigenSystem out;
    // Solver order is ascending; walk it backwards for descending output.
    Eigen::Index i = n - 1;
    while (i >= 0) {
        Eigen::Index j = i;
        double sum = values[i];
        while (j - 1 >= 0 && values[j] - values[j - 1] <= tol) {
            --j;
            sum += values[j];
        }
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        for (Eigen::Index k = j; k <= i; ++k) {
            p += vectors.col(k) * vectors.col(k).adjoint();
        }
        const auto count = static_cast<int>(i - j + 1);
        out.eigenvalues.push_back(sum / count);
        out.projectors.push_back(std::move(p));
        out.multiplicities.push_back(count);
        i = j - 1;
    }
    return out;
}

/// e^{-i scale H} assembled from the spectral projectors.
inline ComplexMatrix unitary_exponential(const EigenSystem& eig, double scale) {
    const auto n = static_cast<Eigen::Index>(eig.dim());
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t k = 0; k < eig.size(); ++k) {
        out += std::exp(Complex(0.0, -scale * eig.eigenvalues[k])) * eig.projectors[k];
    }
    return out;
}

inline ComplexMatrix matrix_exponential_unitary(const ComplexMatrix& h, double scale) {
    return unitary_exponential(eigensystem(h), scale);
}

struct RankResult {
    int rank = 0;
    RealMatrix pseudo_inverse;
    RealVector singular_values;
};

/// Numerical rank (singular values above `threshold_ratio` times the largest)
/// and the pseudo-inverse built from the retained singular triplets.
inline RankResult real_rank_and_pinv(const RealMatrix& m, double threshold_ratio = kRankThresholdRatio) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw Error(ErrorKind::EmptyMatrix, "rank of an empty matrix");
    }
    if (!(threshold_ratio > 0.0 && threshold_ratio < 1.0)) {
        throw Error(ErrorKind::DomainError, "threshold ratio must lie in (0, 1)");
    }
    Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RankResult out;
    out.singular_values = svd.singularValues();
    const double largest = out.singular_values.size() > 0 ? out.singular_values[0] : 0.0;
    out.pseudo_inverse = RealMatrix::Zero(m.cols(), m.rows());
    if (largest <= 0.0) return out;
    const double cutoff = threshold_ratio * largest;
    for (Eigen::Index k = 0; k < out.singular_values.size(); ++k) {
        const double sv = out.singular_values[k];
        if (sv <= cutoff) break;
        out.pseudo_inverse += (svd.matrixV().col(k) / sv) * svd.matrixU().col(k).transpose();
        ++out.rank;
    }
    return out;
}

}  // namespace qjpd
