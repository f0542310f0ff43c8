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

// The quasi-classicalization engine.
//
// Every factor exp(-i s c A) of a product-form word expands as
// sum_k exp(-i s c alpha_k) E_A(alpha_k). Expanding a whole word therefore
// yields one operator atom per choice of eigenvalue in each factor, located at
// (sum of c * alpha over the factors of variable v)_v and carrying the ordered
// product of the chosen projectors. The inverse Fourier transform of the
// hashed operator is that finite set of atoms, so no transform is ever taken
// numerically. The 2*pi normalization constants are never materialized: the
// atoms sum to the identity and the weights of a distribution sum to one.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qjpd/distribution.hpp"
#include "qjpd/quantum.hpp"
#include "qjpd/scheme.hpp"

namespace qjpd {

struct AtomOptions {
    double merge_tol = kSupportMergeTol;
    double prune_tol = kPruneTol;
};

namespace detail {

inline void check_observables(std::size_t n_vars, std::span<const HermitianObservable> obs) {
    if (obs.size() != n_vars) {
        throw Error(ErrorKind::DimensionMismatch, "scheme has " + std::to_string(n_vars) +
                                                      " variables but " + std::to_string(obs.size()) +
                                                      " observables were given");
    }
    for (const auto& o : obs) require_same_dim(o.dim(), obs.front().dim(), "observables");
}

inline std::vector<std::string> labels_of(std::span<const HermitianObservable> obs) {
    std::vector<std::string> out;
    for (const auto& o : obs) out.push_back(o.label());
    return out;
}

/// Depth-first expansion of one word into raw atoms.
inline void expand_word(const std::vector<Factor>& word, std::span<const HermitianObservable> obs,
                        std::size_t depth, const SupportPoint& point, const ComplexMatrix& product,
                        Complex weight, std::vector<std::pair<SupportPoint, ComplexMatrix>>& raw) {
    if (depth == word.size()) {
        raw.emplace_back(point, weight * product);
        return;
    }
    const Factor& f = word[depth];
    const EigenSystem& eig = obs[f.obs].eig();
    for (std::size_t k = 0; k < eig.size(); ++k) {
        const ComplexMatrix next = product * eig.projectors[k];
        if (max_norm(next) == 0.0) continue;
        SupportPoint shifted = point;
        shifted[f.var] += f.coeff * eig.eigenvalues[k];
        expand_word(word, obs, depth + 1, shifted, next, weight, raw);
    }
}

}  // namespace detail

/// Exact operator atoms of a product-form scheme.
inline OperatorAtomSet build_atoms(const SchemeSpec& spec, std::span<const HermitianObservable> obs,
                                   const AtomOptions& opts = {}) {
    spec.validate();
    detail::check_observables(spec.n_vars, obs);
    const std::size_t dim = obs.front().dim();

    std::vector<std::pair<SupportPoint, ComplexMatrix>> raw;
    for (const auto& term : spec.terms) {
        detail::expand_word(term.word, obs, 0, SupportPoint(spec.n_vars, 0.0), identity(dim), term.weight,
                            raw);
    }

    OperatorAtomSet out;
    out.n_vars = spec.n_vars;
    out.dim = dim;
    out.info = {spec.label, detail::labels_of(obs), spec.approximate, spec.note};
    for (auto& [p, m] : detail::merge_atoms(std::move(raw), opts.merge_tol)) {
        if (max_norm(m) < opts.prune_tol) continue;
        out.atoms.push_back({std::move(p), std::move(m)});
    }
    return out;
}

/// Tr[atom * rho] for every atom, in atom order, for any square matrix rho.
inline std::vector<Complex> pair_atoms(const OperatorAtomSet& atoms, const ComplexMatrix& rho) {
    require_same_dim(atoms.dim, static_cast<std::size_t>(rho.rows()), "pair_atoms");
    std::vector<Complex> out;
    out.reserve(atoms.atoms.size());
    for (const auto& a : atoms.atoms) out.push_back((a.matrix * rho).trace());
    return out;
}

inline QuasiDistribution evaluate_distribution(const OperatorAtomSet& atoms, const DensityState& rho,
                                               double prune_tol = kPruneTol) {
    const std::vector<Complex> w = pair_atoms(atoms, rho.matrix());
    QuasiDistribution out;
    out.n_vars = atoms.n_vars;
    out.info = atoms.info;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (std::abs(w[i]) < prune_tol) continue;
        out.atoms.push_back({atoms.atoms[i].point, w[i]});
    }
    return out;
}

/// One-variable marginal; points with zero total weight are kept.
inline QuasiDistribution marginal(const QuasiDistribution& dist, std::size_t keep_var) {
    if (keep_var >= dist.n_vars) {
        throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(keep_var) + " of " +
                                                    std::to_string(dist.n_vars));
    }
    std::vector<std::pair<SupportPoint, Complex>> raw;
    raw.reserve(dist.atoms.size());
    for (const auto& a : dist.atoms) raw.emplace_back(SupportPoint{a.point[keep_var]}, a.weight);
    QuasiDistribution out = make_distribution(1, std::move(raw), kSupportMergeTol, 0.0);
    out.info = dist.info;
    if (keep_var < dist.info.observables.size()) {
        out.info.observables = {dist.info.observables[keep_var]};
    }
    return out;
}

/// f(A) = sum over atoms of f(x) * atom(x).
template <class F>
ComplexMatrix quantize(F&& f, const OperatorAtomSet& atoms) {
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(atoms.dim),
                                            static_cast<Eigen::Index>(atoms.dim));
    for (const auto& a : atoms.atoms) out += Complex(f(a.point)) * a.matrix;
    return out;
}

template <class F>
Complex quasi_expectation(F&& f, const QuasiDistribution& dist) {
    Complex sum{0.0, 0.0};
    for (const auto& a : dist.atoms) sum += Complex(f(a.point)) * a.weight;
    return sum;
}

/// The hashed operator at parameter point s.
inline ComplexMatrix hashed_operator(const SchemeSpec& spec, std::span<const HermitianObservable> obs,
                                     std::span<const double> s) {
    detail::check_observables(spec.n_vars, obs);
    if (s.size() != spec.n_vars) throw Error(ErrorKind::LengthMismatch, "parameter point has wrong length");
    const std::size_t dim = obs.front().dim();
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto& term : spec.terms) {
        ComplexMatrix word = identity(dim);
        for (const auto& f : term.word) {
            word = word * unitary_exponential(obs[f.obs].eig(), s[f.var] * f.coeff);
        }
        out += term.weight * word;
    }
    return out;
}

inline ComplexMatrix hashed_operator(const WignerSpec& spec, std::span<const HermitianObservable> obs,
                                     std::span<const double> s) {
    detail::check_observables(spec.n_vars, obs);
    if (s.size() != spec.n_vars) throw Error(ErrorKind::LengthMismatch, "parameter point has wrong length");
    ComplexMatrix generator = ComplexMatrix::Zero(obs.front().matrix().rows(), obs.front().matrix().cols());
    for (std::size_t k = 0; k < s.size(); ++k) generator += s[k] * obs[k].matrix();
    return matrix_exponential_unitary(generator, 1.0);
}

inline ComplexMatrix hashed_operator(const HashedSpec& spec, std::span<const HermitianObservable> obs,
                                     std::span<const double> s) {
    return std::visit([&](const auto& sp) { return hashed_operator(sp, obs, s); }, spec);
}

/// Tr[rho h(s)] at each parameter point.
inline std::vector<Complex> characteristic_function(const HashedSpec& spec,
                                                    std::span<const HermitianObservable> obs,
                                                    const DensityState& rho,
                                                    const std::vector<SupportPoint>& s_points) {
    require_same_dim(obs.empty() ? 0 : obs.front().dim(), rho.dim(), "characteristic_function");
    std::vector<Complex> out;
    out.reserve(s_points.size());
    for (const auto& s : s_points) out.push_back((rho.matrix() * hashed_operator(spec, obs, s)).trace());
    return out;
}

/// sum_x w(x) exp(-i s.x): the characteristic function recovered from atoms.
inline std::vector<Complex> atom_fourier_sum(const QuasiDistribution& dist,
                                             const std::vector<SupportPoint>& s_points) {
    std::vector<Complex> out;
    out.reserve(s_points.size());
    for (const auto& s : s_points) {
        if (s.size() != dist.n_vars) throw Error(ErrorKind::LengthMismatch, "parameter point has wrong length");
        Complex sum{0.0, 0.0};
        for (const auto& a : dist.atoms) {
            double phase = 0.0;
            for (std::size_t k = 0; k < s.size(); ++k) phase += s[k] * a.point[k];
            sum += a.weight * std::exp(Complex(0.0, -phase));
        }
        out.push_back(sum);
    }
    return out;
}

/// Uniform grid along one axis: `steps` points from lo to hi inclusive.
struct AxisGrid {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 1;

    double at(std::size_t i) const {
        return steps <= 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    double spacing() const { return steps <= 1 ? 0.0 : (hi - lo) / static_cast<double>(steps - 1); }
};

/// Row-major enumeration of the product of axis grids.
inline std::vector<SupportPoint> grid_points(const std::vector<AxisGrid>& axes) {
    std::vector<SupportPoint> out;
    if (axes.empty()) return out;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        SupportPoint p(axes.size());
        for (std::size_t k = 0; k < axes.size(); ++k) p[k] = axes[k].at(idx[k]);
        out.push_back(std::move(p));
        std::size_t k = axes.size();
        while (k > 0) {
            --k;
            if (++idx[k] < axes[k].steps) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
    }
}

struct GridDensity {
    std::vector<SupportPoint> points;
    std::vector<Complex> values;
    bool approximate = true;
    bool possibly_divergent = true;
};

/// Hann-windowed discrete inverse Fourier transform of the Wigner
/// characteristic function, sampled on `s_axes` and evaluated at `x_points`.
/// The exact density generally does not exist for finite systems; the
/// estimate depends on the window and is flagged accordingly.
inline GridDensity wigner_windowed_density(std::span<const HermitianObservable> obs, const DensityState& rho,
                                           const std::vector<AxisGrid>& s_axes,
                                           const std::vector<SupportPoint>& x_points) {
    const WignerSpec spec{obs.size()};
    if (s_axes.size() != obs.size()) throw Error(ErrorKind::LengthMismatch, "one s-axis per observable");
    const std::vector<SupportPoint> s_points = grid_points(s_axes);
    const std::vector<Complex> chi = characteristic_function(spec, obs, rho, s_points);
    double cell = 1.0;
    for (const auto& ax : s_axes) cell *= ax.spacing() / (2.0 * std::numbers::pi);
    std::vector<double> window(s_points.size(), 1.0);
    for (std::size_t i = 0; i < s_points.size(); ++i) {
        for (std::size_t k = 0; k < s_axes.size(); ++k) {
            const double width = s_axes[k].hi - s_axes[k].lo;
            if (width <= 0.0) continue;
            const double u = (s_points[i][k] - s_axes[k].lo) / width;
            window[i] *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * u));
        }
    }
    GridDensity out;
    out.points = x_points;
    for (const auto& x : x_points) {
        Complex sum{0.0, 0.0};
        for (std::size_t i = 0; i < s_points.size(); ++i) {
            double phase = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) phase += s_points[i][k] * x[k];
            sum += window[i] * chi[i] * std::exp(Complex(0.0, phase));
        }
        out.values.push_back(cell * sum);
    }
    return out;
}

}  // namespace qjpd
