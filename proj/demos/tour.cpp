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


// Tour of the library on spin 1/2 and spin 1: Kirkwood-Dirac and symmetric
// orderings, marginals, duality and state reconstruction.

#include <cstddef>
#include <cstdio>
#include <numbers>
#include <vector>

#include "qjpd/qjpd.hpp"

namespace {

void print(const char* title, const qjpd::QuasiDistribution& d) {
    std::printf("%s\n", title);
    for (const auto& a : d.atoms) {
        std::printf("  (");
        for (std::size_t v = 0; v < a.point.size(); ++v) std::printf(v ? ", %+.3f" : "%+.3f", a.point[v]);
        std::printf(")  %+.6f %+.6fi\n", a.weight.real(), a.weight.imag());
    }
}

}  // namespace

int main() {
    using namespace qjpd;
    constexpr double pi = std::numbers::pi;

    const SpinTriple half = spin_operators(1);
    const std::vector<HermitianObservable> pair{half.J1, half.J2};
    const DensityState y_plus = bloch_state(pi / 2, pi / 2);

    const OperatorAtomSet kd = build_atoms(scheme_kirkwood(2), pair);
    const OperatorAtomSet sym = build_atoms(scheme_s_alpha(0.5), pair);
    print("Kirkwood-Dirac, |y+>:", evaluate_distribution(kd, y_plus));
    const QuasiDistribution s = evaluate_distribution(sym, y_plus);
    print("Symmetric ordering, |y+>:", s);
    std::printf("  support on eigenvalue pairs: %s\n", verify_support(s, pair).ok ? "yes" : "no");

    print("J1 marginal of the symmetric ordering:", marginal(s, 0));
    print("Born distribution of J1:", born_distribution(half.J1, y_plus));

    // Duality: the classical average of f equals Tr[f(A,B) rho] for the
    // operator obtained from the same atoms.
    const auto xy = [](const SupportPoint& p) { return Complex((p[0] + 1.0) * (p[1] + 0.5), 0.0); };
    const Complex classical = quasi_expectation(xy, s);
    const Complex quantum = (quantize(xy, sym) * y_plus.matrix()).trace();
    std::printf("<f> classical %+.6f%+.6fi, quantized %+.6f%+.6fi\n", classical.real(), classical.imag(),
                quantum.real(), quantum.imag());

    // Spin 1: the Kirkwood-Dirac distribution of (J1, J2) determines the state.
    const SpinTriple one = spin_operators(2);
    const ReconstructionMap map = reconstruction_map(std::vector<HermitianObservable>{one.J1, one.J2},
                                                     scheme_kirkwood(2));
    Rng rng(2026);
    const DensityState rho = random_density(3, rng);
    const DensityState back = reconstruct_state(map, evaluate_distribution(map.atoms, rho));
    std::printf("spin-1 rank %d of %zu, reconstruction error %.2e\n", map.rank, param_length(3),
                max_norm(ComplexMatrix(back.matrix() - rho.matrix())));

    const FeasibilityReport f = degeneracy_feasible(3, 3, 2);
    std::printf("N=3, N_A=3, N_B=2: %ld <= %ld is %s\n", static_cast<long>(f.lhs), static_cast<long>(f.rhs),
                f.feasible ? "feasible" : "infeasible");
    return 0;
}
