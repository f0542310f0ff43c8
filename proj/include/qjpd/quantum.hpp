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

#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qjpd/distribution.hpp"
#include "qjpd/matcore.hpp"

namespace qjpd {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdSlack = 1e-9;

/// A Hermitian matrix with a lazily computed, shared eigensystem.
///
/// Copies share the cache; the first call to eig() fills it exactly once.
class HermitianObservable {
public:
    HermitianObservable() = default;

    explicit HermitianObservable(ComplexMatrix m, std::string label = {})
        : matrix_(std::move(m)), label_(std::move(label)), cache_(std::make_shared<Cache>()) {
        if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
            throw Error(ErrorKind::DimensionMismatch, "observable must be a non-empty square matrix");
        }
        const double scale = std::max(1.0, max_norm(matrix_));
        if (hermitian_deviation(matrix_) > kHermitianTol * scale) {
            throw Error(ErrorKind::NotHermitian, "observable '" + label_ + "' is not Hermitian");
        }
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    const std::string& label() const { return label_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

    const EigenSystem& eig() const {
        std::call_once(cache_->once, [this] { cache_->eig = eigensystem(matrix_); });
        return cache_->eig;
    }

    const std::vector<double>& eigenvalues() const { return eig().eigenvalues; }

private:
    struct Cache {
        std::once_flag once;
        EigenSystem eig;
    };

    ComplexMatrix matrix_;
    std::string label_;
    std::shared_ptr<Cache> cache_;
};

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// up to a small negative slack.
class DensityState {
public:
    explicit DensityState(ComplexMatrix m) : matrix_(std::move(m)) {
        if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
            throw Error(ErrorKind::DimensionMismatch, "density matrix must be non-empty and square");
        }
        if (hermitian_deviation(matrix_) > kHermitianTol) {
            throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
        }
        const Complex tr = matrix_.trace();
        if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
            throw Error(ErrorKind::InvalidState, "density matrix trace is " + std::to_string(tr.real()));
        }
        const ComplexMatrix sym = 0.5 * (matrix_ + matrix_.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues()[0] < -kPsdSlack) {
            throw Error(ErrorKind::InvalidState, "density matrix has negative eigenvalue " +
                                                      std::to_string(solver.eigenvalues()[0]));
        }
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

    static DensityState maximally_mixed(std::size_t n) {
        return DensityState(identity(n) / static_cast<double>(n));
    }

    static DensityState pure(const Eigen::VectorXcd& psi) {
        const Eigen::VectorXcd v = psi / psi.norm();
        return DensityState(v * v.adjoint());
    }

private:
    ComplexMatrix matrix_;
};

/// Real coordinates of a density matrix: the N-1 leading diagonal entries,
/// then (Re rho_ji, Im rho_ji) for every i < j in row-major order.
struct StateParamVector {
    std::vector<double> values;
};

inline std::size_t param_length(std::size_t n) { return n * n - 1; }

/// Parametrization of any square matrix (no validation); inverse of embed_matrix
/// on unit-trace Hermitian matrices.
inline StateParamVector parametrize_matrix(const ComplexMatrix& rho) {
    const auto n = static_cast<std::size_t>(rho.rows());
    StateParamVector out;
    out.values.reserve(param_length(n));
    for (std::size_t i = 0; i + 1 < n; ++i) out.values.push_back(rho(i, i).real());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.values.push_back(rho(j, i).real());
            out.values.push_back(rho(j, i).imag());
        }
    }
    return out;
}

/// Unit-trace Hermitian matrix for a parameter vector, without the
/// positivity check (used for affine maps over the whole parameter space).
inline ComplexMatrix embed_matrix(const std::vector<double>& v, std::size_t n) {
    if (n == 0 || v.size() != param_length(n)) {
        throw Error(ErrorKind::LengthMismatch, "parameter vector of length " + std::to_string(v.size()) +
                                                   " does not match dimension " + std::to_string(n));
    }
    ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    double lead = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        rho(i, i) = v[i];
        lead += v[i];
    }
    rho(n - 1, n - 1) = 1.0 - lead;
    std::size_t k = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex lower(v[k], v[k + 1]);
            rho(j, i) = lower;
            rho(i, j) = std::conj(lower);
            k += 2;
        }
    }
    return rho;
}

inline StateParamVector parametrize(const DensityState& rho) { return parametrize_matrix(rho.matrix()); }

inline DensityState embed(const StateParamVector& v, std::size_t n) {
    return DensityState(embed_matrix(v.values, n));
}

/// Angular-momentum matrices of the irreducible spin-j representation.
struct SpinTriple {
    int j_times_two = 0;
    HermitianObservable J1, J2, J3;

    double j() const { return 0.5 * j_times_two; }
    std::size_t dim() const { return static_cast<std::size_t>(j_times_two + 1); }

    /// Component 1, 2 or 3.
    const HermitianObservable& component(int i) const {
        switch (i) {
            case 1: return J1;
            case 2: return J2;
            case 3: return J3;
            default: throw Error(ErrorKind::IndexOutOfRange, "spin component must be 1, 2 or 3");
        }
    }
};

/// J3 = diag(j, j-1, ..., -j); J1 and J2 from the ladder operator
/// <m+1|J+|m> = sqrt(j(j+1) - m(m+1)).
inline SpinTriple spin_operators(int j_times_two) {
    if (j_times_two < 1) throw Error(ErrorKind::DomainError, "spin must be at least 1/2");
    const auto n = static_cast<Eigen::Index>(j_times_two + 1);
    const double j = 0.5 * j_times_two;
    ComplexMatrix jz = ComplexMatrix::Zero(n, n);
    ComplexMatrix jp = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = j - static_cast<double>(i);
        jz(i, i) = m;
        if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix jm = jp.adjoint();
    const ComplexMatrix jx = 0.5 * (jp + jm);
    const ComplexMatrix jy = (jp - jm) / Complex(0.0, 2.0);
    const std::string tag = j_times_two % 2 == 0 ? std::to_string(j_times_two / 2)
                                                 : std::to_string(j_times_two) + "/2";
    return SpinTriple{j_times_two,
                      HermitianObservable(jx, "spin:" + tag + ":1"),
                      HermitianObservable(jy, "spin:" + tag + ":2"),
                      HermitianObservable(jz, "spin:" + tag + ":3")};
}

/// Qubit state m|psi(theta,phi)><psi| + (1-m)|psi(pi-theta,phi)><psi|.
inline DensityState bloch_state(double theta, double phi, double m = 1.0) {
    constexpr double pi = std::numbers::pi;
    if (!(theta >= 0.0 && theta <= pi)) throw Error(ErrorKind::DomainError, "theta outside [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * pi)) throw Error(ErrorKind::DomainError, "phi outside [0, 2pi)");
    if (!(m >= 0.0 && m <= 1.0)) throw Error(ErrorKind::DomainError, "m outside [0, 1]");
    const double z = (2.0 * m - 1.0) * std::cos(theta);
    const Complex off = std::polar(std::sin(theta), phi);
    ComplexMatrix rho(2, 2);
    rho << 0.5 * (1.0 + z), 0.5 * std::conj(off),
           0.5 * off,       0.5 * (1.0 - z);
    return DensityState(rho);
}

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": dimensions " + std::to_string(a) +
                                                      " and " + std::to_string(b));
    }
}

/// Born-rule distribution of one observable: one atom per distinct eigenvalue.
inline QuasiDistribution born_distribution(const HermitianObservable& a, const DensityState& rho) {
    require_same_dim(a.dim(), rho.dim(), "born_distribution");
    const auto& eig = a.eig();
    QuasiDistribution out;
    out.n_vars = 1;
    out.info.scheme = "born";
    out.info.observables = {a.label()};
    for (std::size_t k = eig.size(); k-- > 0;) {
        const Complex w = (eig.projectors[k] * rho.matrix()).trace();
        out.atoms.push_back({{detail::snap_to_grid(eig.eigenvalues[k])}, w});
    }
    return out;
}

inline double expectation(const HermitianObservable& a, const DensityState& rho) {
    require_same_dim(a.dim(), rho.dim(), "expectation");
    const Complex v = (a.matrix() * rho.matrix()).trace();
    if (std::abs(v.imag()) > 1e-10) {
        throw Error(ErrorKind::NonRealExpectation, "imaginary part " + std::to_string(v.imag()));
    }
    return v.real();
}

}  // namespace qjpd
