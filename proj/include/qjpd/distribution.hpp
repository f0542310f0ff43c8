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

// Finite atomic distributions over R^n: complex weights (QuasiDistribution)
// and operator-valued weights (OperatorAtomSet), plus the support-point
// snapping that makes their keys well defined under rounding.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qjpd/matcore.hpp"

namespace qjpd {

using SupportPoint = std::vector<double>;

inline constexpr double kSupportMergeTol = 1e-9;
inline constexpr double kPruneTol = 1e-12;

/// Lexicographic three-way comparison with per-coordinate tolerance.
inline int compare_points(const SupportPoint& a, const SupportPoint& b, double tol) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i] - tol) return -1;
        if (a[i] > b[i] + tol) return 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

inline bool points_close(const SupportPoint& a, const SupportPoint& b, double tol) {
    return compare_points(a, b, tol) == 0;
}

namespace detail {

inline double snap_to_grid(double x) {
    const double r = std::round(x * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;  // drops the sign of negative zero
}

}  // namespace detail

/// Identifies coordinates that agree within `tol` along each axis.
///
/// Values on one axis are sorted and chained into clusters whenever neighbours
/// are at most `tol` apart. Every member is replaced by the cluster mean,
/// rounded onto a 1e-12 grid, so that merged points compare exactly equal.
inline void snap_coordinates(std::vector<SupportPoint>& points, double tol) {
    if (points.empty()) return;
    const std::size_t n_vars = points.front().size();
    std::vector<std::size_t> order(points.size());
    for (std::size_t v = 0; v < n_vars; ++v) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return points[a][v] < points[b][v];
        });
        std::size_t begin = 0;
        while (begin < order.size()) {
            std::size_t end = begin + 1;
            double sum = points[order[begin]][v];
            while (end < order.size() &&
                   points[order[end]][v] - points[order[end - 1]][v] <= tol) {
                sum += points[order[end]][v];
                ++end;
            }
            const double value = detail::snap_to_grid(sum / static_cast<double>(end - begin));
            for (std::size_t k = begin; k < end; ++k) points[order[k]][v] = value;
            begin = end;
        }
    }
}

/// Descriptive tags carried along with computed distributions.
struct DistributionInfo {
    std::string scheme;
    std::vector<std::string> observables;
    bool approximate = false;
    std::string note;
};

struct WeightedPoint {
    SupportPoint point;
    Complex weight;
};

/// Finite map from support points to complex weights, kept in ascending
/// lexicographic order of the points.
struct QuasiDistribution {
    std::size_t n_vars = 0;
    std::vector<WeightedPoint> atoms;
    DistributionInfo info;

    Complex total() const {
        Complex sum{0.0, 0.0};
        for (const auto& a : atoms) sum += a.weight;
        return sum;
    }

    double max_abs_imag() const {
        double m = 0.0;
        for (const auto& a : atoms) m = std::max(m, std::abs(a.weight.imag()));
        return m;
    }

    /// Weight at `p`; points absent from the support carry zero weight.
    Complex weight_at(const SupportPoint& p, double tol = kSupportMergeTol) const {
        auto it = std::lower_bound(atoms.begin(), atoms.end(), p,
                                   [tol](const WeightedPoint& a, const SupportPoint& q) {
                                       return compare_points(a.point, q, tol) < 0;
                                   });
        if (it != atoms.end() && points_close(it->point, p, tol)) return it->weight;
        return {0.0, 0.0};
    }
};

struct OperatorAtom {
    SupportPoint point;
    ComplexMatrix matrix;
};

/// Operator-valued atoms of a quasi-joint-spectral distribution.
struct OperatorAtomSet {
    std::size_t n_vars = 0;
    std::size_t dim = 0;
    std::vector<OperatorAtom> atoms;
    DistributionInfo info;

    ComplexMatrix total() const {
        ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
        for (const auto& a : atoms) sum += a.matrix;
        return sum;
    }

    std::vector<SupportPoint> support() const {
        std::vector<SupportPoint> out;
        out.reserve(atoms.size());
        for (const auto& a : atoms) out.push_back(a.point);
        return out;
    }
};

namespace detail {

/// Snaps, merges (summing values) and sorts raw (point, value) pairs.
template <class Value>
std::vector<std::pair<SupportPoint, Value>> merge_atoms(
    std::vector<std::pair<SupportPoint, Value>> raw, double merge_tol) {
    std::vector<SupportPoint> pts;
    pts.reserve(raw.size());
    for (auto& r : raw) pts.push_back(std::move(r.first));
    snap_coordinates(pts, merge_tol);
    std::map<SupportPoint, Value> merged;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = merged.try_emplace(std::move(pts[i]), raw[i].second);
        if (!inserted) it->second += raw[i].second;
    }
    std::vector<std::pair<SupportPoint, Value>> out;
    out.reserve(merged.size());
    for (auto& [p, v] : merged) out.emplace_back(p, std::move(v));
    return out;
}

}  // namespace detail

/// Builds a distribution from raw weighted points (merged and sorted, with
/// weights of magnitude below `prune_tol` dropped).
inline QuasiDistribution make_distribution(std::size_t n_vars,
                                           std::vector<std::pair<SupportPoint, Complex>> raw,
                                           double merge_tol = kSupportMergeTol,
                                           double prune_tol = kPruneTol) {
    QuasiDistribution out;
    out.n_vars = n_vars;
    for (auto& [p, w] : detail::merge_atoms(std::move(raw), merge_tol)) {
        if (std::abs(w) < prune_tol) continue;
        out.atoms.push_back({std::move(p), w});
    }
    return out;
}

}  // namespace qjpd
