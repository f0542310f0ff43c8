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

#include <cstddef>
#include <random>
#include <vector>

#include "qjpd/quantum.hpp"

namespace qjpd {

using Rng = std::mt19937_64;

inline ComplexMatrix random_ginibre(std::size_t n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto m = static_cast<Eigen::Index>(n);
    ComplexMatrix g(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    }
    return g;
}

/// G G^dagger / Tr(G G^dagger) for a complex Ginibre sample G.
inline DensityState random_density(std::size_t n, Rng& rng) {
    const ComplexMatrix g = random_ginibre(n, rng);
    const ComplexMatrix w = g * g.adjoint();
    ComplexMatrix rho = w / w.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityState(rho);
}

inline HermitianObservable random_hermitian(std::size_t n, Rng& rng, std::string label = "H") {
    const ComplexMatrix g = random_ginibre(n, rng);
    return HermitianObservable(0.5 * (g + g.adjoint()), std::move(label));
}

/// Haar-distributed unitary from the QR decomposition of a Ginibre sample.
inline ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    const ComplexMatrix g = random_ginibre(n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex d = r(k, k);
        q.col(k) *= d / std::abs(d);
    }
    return q;
}

/// Uniform point on the probability simplex of the given size.
inline std::vector<double> random_simplex(std::size_t n, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> out(n);
    double sum = 0.0;
    for (auto& x : out) {
        x = expo(rng);
        sum += x;
    }
    for (auto& x : out) x /= sum;
    return out;
}

}  // namespace qjpd
