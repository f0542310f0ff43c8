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

// Diagnostics over quasi-distributions: support on possible values, realness,
// Hermiticity of a scheme, linear-inversion tomography and the counting bound
// on degeneracies.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qjpd/engine.hpp"
#include "qjpd/random.hpp"

namespace qjpd {

inline constexpr double kRealTol = 1e-10;
inline constexpr double kZeroExpectationTol = 1e-10;

struct SupportReport {
    bool ok = true;
    std::vector<SupportPoint> offending;
};

/// Checks that every atom heavier than `tol` sits at a tuple of eigenvalues.
inline SupportReport verify_support(const QuasiDistribution& dist, std::span<const HermitianObservable> obs,
                                    double tol = kPruneTol) {
    if (obs.size() != dist.n_vars) {
        throw Error(ErrorKind::DimensionMismatch, "one observable per distribution variable");
    }
    SupportReport report;
    for (const auto& a : dist.atoms) {
        if (std::abs(a.weight) <= tol) continue;
        bool possible = true;
        for (std::size_t v = 0; v < dist.n_vars && possible; ++v) {
            const auto& ev = obs[v].eigenvalues();
            possible = std::any_of(ev.begin(), ev.end(), [&](double e) {
                return std::abs(e - a.point[v]) <= kSupportMergeTol;
            });
        }
        if (!possible) {
            report.ok = false;
            report.offending.push_back(a.point);
        }
    }
    return report;
}

inline bool is_real(const QuasiDistribution& dist, double tol = kRealTol) { return dist.max_abs_imag() <= tol; }

namespace detail {

inline std::vector<double> random_parameter(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> u(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    std::vector<double> s(n);
    for (auto& x : s) x = u(rng);
    return s;
}

}  // namespace detail

/// True iff every operator atom is Hermitian, i.e. every state yields a real
/// distribution. Cross-checked against h(s) = h(-s)^dagger at random s.
inline bool scheme_is_real(const SchemeSpec& spec, std::span<const HermitianObservable> obs,
                           std::size_t n_samples = 16, std::uint64_t seed = 1) {
    const OperatorAtomSet atoms = build_atoms(spec, obs);
    const bool hermitian = std::all_of(atoms.atoms.begin(), atoms.atoms.end(), [](const OperatorAtom& a) {
        return hermitian_deviation(a.matrix) <= kHermitianTol;
    });
    if (hermitian) {
        Rng rng(seed);
        for (std::size_t i = 0; i < n_samples; ++i) {
            std::vector<double> s = detail::random_parameter(spec.n_vars, rng);
            std::vector<double> minus_s(s.size());
            std::transform(s.begin(), s.end(), minus_s.begin(), [](double x) { return -x; });
            const double gap = max_norm(hashed_operator(spec, obs, s) -
                                        hashed_operator(spec, obs, minus_s).adjoint());
            if (gap > 1e-9) {
                throw Error(ErrorKind::InconsistentScheme,
                            "Hermitian atoms but h(s) != h(-s)^dagger, gap " + std::to_string(gap));
            }
        }
    }
    return hermitian;
}

/// Qubit only: true iff h(s)_11 == h(s)_22 at every sampled s, in which case
/// the scheme cannot tell |z+> from |z->.
inline bool diag_equality_check(const SchemeSpec& spec, std::span<const HermitianObservable> obs,
                                std::size_t n_samples = 32, std::uint64_t seed = 2) {
    if (obs.empty() || obs.front().dim() != 2) {
        throw Error(ErrorKind::DomainError, "diagonal equality check is defined for two-level systems");
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::vector<double> s = detail::random_parameter(spec.n_vars, rng);
        const ComplexMatrix h = hashed_operator(spec, obs, s);
        if (std::abs(h(0, 0) - h(1, 1)) > 1e-10) return false;
    }
    return true;
}

/// Affine map from the real state parameters to the stacked (Re, Im)
/// distribution coefficients over a fixed support.
struct ReconstructionMap {
    std::vector<HermitianObservable> observables;
    SchemeSpec scheme;
    OperatorAtomSet atoms;
    std::vector<SupportPoint> support;
    RealMatrix map_matrix;
    RealVector offset;
    int rank = 0;
    RealMatrix pinv;
    RealVector singular_values;

    std::size_t dim() const { return atoms.dim; }
    bool full_rank() const { return static_cast<std::size_t>(rank) == param_length(dim()); }

    /// Stacked (Re w, Im w) per support point. Atoms missing from `dist` count
    /// as zero; atoms off the support are an error.
    RealVector coefficients(const QuasiDistribution& dist, double tol = kSupportMergeTol) const {
        RealVector c = RealVector::Zero(static_cast<Eigen::Index>(2 * support.size()));
        for (const auto& a : dist.atoms) {
            auto it = std::lower_bound(support.begin(), support.end(), a.point,
                                       [](const SupportPoint& p, const SupportPoint& q) {
                                           return compare_points(p, q, kSupportMergeTol) < 0;
                                       });
            if (it == support.end() || !points_close(*it, a.point, kSupportMergeTol)) {
                if (std::abs(a.weight) > tol) {
                    throw Error(ErrorKind::SupportMismatch, "distribution has weight off the map support");
                }
                continue;
            }
            const auto row = static_cast<Eigen::Index>(2 * (it - support.begin()));
            c[row] += a.weight.real();
            c[row + 1] += a.weight.imag();
        }
        return c;
    }
};

inline ReconstructionMap reconstruction_map(std::span<const HermitianObservable> obs, const SchemeSpec& spec,
                                            double threshold_ratio = kRankThresholdRatio) {
    ReconstructionMap map;
    map.observables.assign(obs.begin(), obs.end());
    map.scheme = spec;
    map.atoms = build_atoms(spec, obs);
    map.support = map.atoms.support();
    const std::size_t n = map.atoms.dim;
    const std::size_t params = param_length(n);
    const auto rows = static_cast<Eigen::Index>(2 * map.support.size());

    auto stacked = [&](const ComplexMatrix& rho) {
        const std::vector<Complex> w = pair_atoms(map.atoms, rho);
        RealVector c(rows);
        for (std::size_t i = 0; i < w.size(); ++i) {
            c[static_cast<Eigen::Index>(2 * i)] = w[i].real();
            c[static_cast<Eigen::Index>(2 * i + 1)] = w[i].imag();
        }
        return c;
    };

    std::vector<double> x(params, 0.0);
    map.offset = stacked(embed_matrix(x, n));
    map.map_matrix = RealMatrix::Zero(rows, static_cast<Eigen::Index>(params));
    for (std::size_t k = 0; k < params; ++k) {
        x.assign(params, 0.0);
        x[k] = 1.0;
        map.map_matrix.col(static_cast<Eigen::Index>(k)) = stacked(embed_matrix(x, n)) - map.offset;
    }
    RankResult r = real_rank_and_pinv(map.map_matrix, threshold_ratio);
    map.rank = r.rank;
    map.pinv = std::move(r.pseudo_inverse);
    map.singular_values = std::move(r.singular_values);
    return map;
}

inline ReconstructionMap reconstruction_map(const HermitianObservable& a, const HermitianObservable& b,
                                            const SchemeSpec& spec) {
    require_same_dim(a.dim(), b.dim(), "reconstruction_map");
    const std::vector<HermitianObservable> obs{a, b};
    return reconstruction_map(obs, spec);
}

/// Linear-inversion tomography from a distribution over the map's support.
inline DensityState reconstruct_state(const ReconstructionMap& map, const QuasiDistribution& dist) {
    if (!map.full_rank()) {
        throw Error(ErrorKind::RankDeficient, "map rank " + std::to_string(map.rank) + " < " +
                                                  std::to_string(param_length(map.dim())) +
                                                  ": states are not distinguishable by this scheme");
    }
    const RealVector x = map.pinv * (map.coefficients(dist) - map.offset);
    return DensityState(embed_matrix(std::vector<double>(x.data(), x.data() + x.size()), map.dim()));
}

/// Counting bound 2N^2 - 1 <= (2 N_A - 1)(2 N_B - 1) for Kirkwood-Dirac
/// tomography with observables of N_A and N_B distinct eigenvalues.
struct FeasibilityReport {
    int n = 0;
    int n_a = 0;
    int n_b = 0;
    long lhs = 0;
    long rhs = 0;
    bool feasible = false;
};

inline FeasibilityReport degeneracy_feasible(int n, int n_a, int n_b) {
    if (n < 1 || n_a < 1 || n_b < 1 || n_a > n || n_b > n) {
        throw Error(ErrorKind::DomainError, "need 1 <= N_A, N_B <= N");
    }
    FeasibilityReport r{n, n_a, n_b, 2L * n * n - 1, (2L * n_a - 1) * (2L * n_b - 1), false};
    r.feasible = r.lhs <= r.rhs;
    return r;
}

/// Minimum distinct-eigenvalue count when both observables share it.
inline double same_count_threshold(int n) { return 0.5 * (std::sqrt(2.0 * n * n - 1.0) + 1.0); }

/// Minimum distinct-eigenvalue count of B when A is non-degenerate.
inline double nondegenerate_partner_threshold(int n) {
    return static_cast<double>(n * n + n - 1) / static_cast<double>(2 * n - 1);
}

struct RealnessReport {
    std::size_t dim = 0;
    std::size_t samples = 0;
    std::size_t real_samples = 0;
    /// Two-level systems: samples where "real" and "<J3> = 0" disagree.
    /// Larger spins: samples that are real but have <J3> != 0.
    std::size_t violations = 0;
    /// Larger spins only: a state with <J3> = 0 whose distribution is complex.
    std::optional<ComplexMatrix> counterexample;
    double counterexample_max_imag = 0.0;
};

namespace detail {

/// A random state whose Kirkwood-Dirac distribution is real: I/N plus a
/// scaled direction from the kernel of the imaginary rows of the map.
inline DensityState random_real_kd_state(const ReconstructionMap& map, Rng& rng) {
    const std::size_t n = map.dim();
    const Eigen::Index params = map.map_matrix.cols();
    RealMatrix im_rows(map.map_matrix.rows() / 2, params);
    for (Eigen::Index r = 0; r < im_rows.rows(); ++r) im_rows.row(r) = map.map_matrix.row(2 * r + 1);
    Eigen::JacobiSVD<RealMatrix> svd(im_rows, Eigen::ComputeFullV);
    const double cutoff = kRankThresholdRatio * std::max(1e-300, svd.singularValues().size() > 0
                                                                      ? svd.singularValues()[0]
                                                                      : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) rank += svd.singularValues()[k] > cutoff;
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealVector delta = RealVector::Zero(params);
    for (Eigen::Index k = rank; k < params; ++k) delta += gauss(rng) * svd.matrixV().col(k);
    const std::vector<double> zero(static_cast<std::size_t>(params), 0.0);
    const ComplexMatrix direction =
        embed_matrix(std::vector<double>(delta.data(), delta.data() + delta.size()), n) - embed_matrix(zero, n);
    const ComplexMatrix mixed = identity(n) / static_cast<double>(n);
    // Spectral norm <= n * max entry, and the mixed state has eigenvalues 1/n.
    const double spread = std::max(1e-12, max_norm(direction) * static_cast<double>(n * n));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return DensityState(mixed + (u(rng) / spread) * direction);
}

}  // namespace detail

/// Samples states and relates realness of the Kirkwood-Dirac distribution of
/// (J1, J2) to <J3> = 0. For spin 1/2 the two are equivalent; for larger spin
/// only "real implies <J3> = 0" holds, and a counterexample to the converse
/// is searched for (up to 10^4 states) and reported.
inline RealnessReport realness_implies_z_expectation(const SpinTriple& spin, std::size_t n_samples,
                                                     std::uint64_t seed = 7, double tol_real = kRealTol,
                                                     double tol_z = kZeroExpectationTol) {
    const std::vector<HermitianObservable> pair{spin.J1, spin.J2};
    const OperatorAtomSet atoms = build_atoms(scheme_kirkwood(2), pair);
    RealnessReport report;
    report.dim = spin.dim();
    report.samples = n_samples;
    Rng rng(seed);

    auto check = [&](const DensityState& rho) {
        const bool real = is_real(evaluate_distribution(atoms, rho), tol_real);
        const bool z_zero = std::abs(expectation(spin.J3, rho)) <= tol_z;
        report.real_samples += real;
        return std::pair{real, z_zero};
    };

    if (spin.dim() == 2) {
        std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
        std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double m = i % 2 == 0 ? 0.5 : unit(rng);
            const auto [real, z_zero] = check(bloch_state(theta(rng), phi(rng), m));
            report.violations += real != z_zero;
        }
        return report;
    }

    const ReconstructionMap map = reconstruction_map(pair, scheme_kirkwood(2));
    for (std::size_t i = 0; i < n_samples; ++i) {
        const DensityState rho = i % 2 == 0 ? detail::random_real_kd_state(map, rng)
                                            : random_density(spin.dim(), rng);
        const auto [real, z_zero] = check(rho);
        report.violations += real && !z_zero;
    }

    // Reversing the basis maps J3 to -J3, so averaging rho with its reversal
    // gives <J3> = 0.
    const auto n = static_cast<Eigen::Index>(spin.dim());
    ComplexMatrix flip = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) flip(k, n - 1 - k) = 1.0;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const DensityState base = random_density(spin.dim(), rng);
        const DensityState rho(0.5 * (base.matrix() + flip * base.matrix() * flip));
        if (std::abs(expectation(spin.J3, rho)) > tol_z) continue;
        const QuasiDistribution dist = evaluate_distribution(atoms, rho);
        if (!is_real(dist, tol_real)) {
            report.counterexample = rho.matrix();
            report.counterexample_max_imag = dist.max_abs_imag();
            break;
        }
    }
    if (!report.counterexample) {
        throw Error(ErrorKind::ConvergenceFailure, "no zero-<J3> state with complex distribution found");
    }
    return report;
}

}  // namespace qjpd
