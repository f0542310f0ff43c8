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

// Quasi-classicalization schemes. A scheme is a weighted sum of words; each
// word is an ordered product of one-parameter unitaries exp(-i s_v c A_o).

#pragma once

#include <cmath>
#include <cstdio>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qjpd/matcore.hpp"

namespace qjpd {

inline constexpr double kSchemeTol = 1e-12;

/// One factor exp(-i s[var] * coeff * A[obs]) of a word.
struct Factor {
    std::size_t var = 0;
    double coeff = 1.0;
    std::size_t obs = 0;

    bool operator==(const Factor&) const = default;
};

struct SchemeTerm {
    Complex weight{1.0, 0.0};
    std::vector<Factor> word;

    bool operator==(const SchemeTerm&) const = default;
};

/// Convex mixture of product-form words.
///
/// Invariants (checked by validate()): term weights sum to one, and inside
/// every term the coefficients attached to each variable sum to one.
struct SchemeSpec {
    std::size_t n_vars = 0;
    std::vector<SchemeTerm> terms;
    std::string label;
    bool approximate = false;
    std::string note;

    void validate() const {
        if (n_vars == 0) throw Error(ErrorKind::InvalidScheme, "scheme needs at least one variable");
        if (terms.empty()) throw Error(ErrorKind::InvalidScheme, "scheme has no terms");
        Complex total{0.0, 0.0};
        for (std::size_t t = 0; t < terms.size(); ++t) {
            total += terms[t].weight;
            std::vector<double> per_var(n_vars, 0.0);
            for (const auto& f : terms[t].word) {
                if (f.var >= n_vars || f.obs >= n_vars) {
                    throw Error(ErrorKind::InvalidScheme, "term " + std::to_string(t) +
                                                              ": factor index out of range");
                }
                per_var[f.var] += f.coeff;
            }
            for (std::size_t v = 0; v < n_vars; ++v) {
                if (std::abs(per_var[v] - 1.0) > kSchemeTol) {
                    throw Error(ErrorKind::InvalidScheme,
                                "term " + std::to_string(t) + ": coefficients of variable " +
                                    std::to_string(v) + " sum to " + std::to_string(per_var[v]));
                }
            }
        }
        if (std::abs(total - Complex(1.0, 0.0)) > kSchemeTol) {
            throw Error(ErrorKind::InvalidScheme, "term weights do not sum to one");
        }
    }
};

/// exp(-i sum_k s_k A_k). Not product form; only its characteristic function
/// is computed exactly.
struct WignerSpec {
    std::size_t n_vars = 2;
};

using HashedSpec = std::variant<SchemeSpec, WignerSpec>;

inline SchemeSpec scheme_kirkwood(std::size_t n_vars) {
    if (n_vars == 0) throw Error(ErrorKind::DomainError, "Kirkwood-Dirac scheme needs n_vars >= 1");
    SchemeSpec spec;
    spec.n_vars = n_vars;
    spec.label = "kirkwood";
    SchemeTerm term;
    for (std::size_t v = 0; v < n_vars; ++v) term.word.push_back({v, 1.0, v});
    spec.terms.push_back(std::move(term));
    return spec;
}

namespace detail {

inline std::string format_param(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// exp(-i alpha s A) exp(-i t B) exp(-i (1-alpha) s A); vanishing factors are
/// dropped since they are the identity.
inline std::vector<Factor> sandwich_word(double alpha) {
    std::vector<Factor> word;
    if (alpha != 0.0) word.push_back({0, alpha, 0});
    word.push_back({1, 1.0, 1});
    if (1.0 - alpha != 0.0) word.push_back({0, 1.0 - alpha, 0});
    return word;
}

}  // namespace detail

inline SchemeSpec scheme_s_alpha(double alpha) {
    SchemeSpec spec;
    spec.n_vars = 2;
    spec.label = "s_alpha(" + detail::format_param(alpha) + ")";
    spec.terms.push_back({{1.0, 0.0}, detail::sandwich_word(alpha)});
    return spec;
}

inline SchemeSpec scheme_margenau_hill(double alpha) {
    SchemeSpec spec;
    spec.n_vars = 2;
    spec.label = "margenau_hill(" + detail::format_param(alpha) + ")";
    const double forward = 0.5 * (1.0 + alpha);
    const double backward = 0.5 * (1.0 - alpha);
    if (forward != 0.0) spec.terms.push_back({{forward, 0.0}, {{0, 1.0, 0}, {1, 1.0, 1}}});
    if (backward != 0.0) spec.terms.push_back({{backward, 0.0}, {{1, 1.0, 1}, {0, 1.0, 0}}});
    return spec;
}

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

/// (P_n(x), P_n'(x)) from the three-term recurrence.
inline std::pair<double, double> legendre_with_derivative(std::size_t n, double x) {
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
    }
    return {p1, static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace detail

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::DomainError, "quadrature needs at least one node");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = detail::legendre_with_derivative(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = detail::legendre_with_derivative(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

/// Born-Jordan ordering (1/2) int_{-1}^{1} S_{(1-k)/2} dk, discretized by a
/// Gauss-Legendre rule. The continuous part becomes a cluster of atoms, so the
/// scheme is flagged approximate.
inline SchemeSpec scheme_born_jordan(std::size_t quadrature_nodes = 201) {
    const QuadratureRule rule = gauss_legendre(quadrature_nodes);
    SchemeSpec spec;
    spec.n_vars = 2;
    spec.label = "born_jordan(" + std::to_string(quadrature_nodes) + ")";
    spec.approximate = true;
    spec.note = "Gauss-Legendre quadrature over k in [-1,1], nodes=" + std::to_string(quadrature_nodes);
    for (std::size_t i = 0; i < quadrature_nodes; ++i) {
        const double k = rule.nodes[i];
        spec.terms.push_back({{0.5 * rule.weights[i], 0.0}, detail::sandwich_word(0.5 * (1.0 - k))});
    }
    return spec;
}

/// The four alternating unitary word shapes for a pair (A, B):
///   T1: A^{a1} B^{b1} ... A^{an} B^{bn}
///   T2: A^{a1} B^{b1} ... B^{bn} A^{a(n+1)}
///   T3: B^{b1} A^{a1} ... B^{bn} A^{an}
///   T4: B^{b1} A^{a1} ... A^{an} B^{b(n+1)}
/// where X^{c} stands for exp(-i s_X c X).
enum class UnitaryForm { T1, T2, T3, T4 };

inline SchemeSpec scheme_unitary_form(UnitaryForm form, std::span<const double> a,
                                      std::span<const double> b) {
    const bool starts_with_a = form == UnitaryForm::T1 || form == UnitaryForm::T2;
    const bool extra_a = form == UnitaryForm::T2;
    const bool extra_b = form == UnitaryForm::T4;
    const std::size_t pairs = extra_a ? a.size() - 1 : (extra_b ? b.size() - 1 : a.size());
    const std::size_t expected_a = pairs + (extra_a ? 1 : 0);
    const std::size_t expected_b = pairs + (extra_b ? 1 : 0);
    if (a.empty() || b.empty() || pairs == 0 || a.size() != expected_a || b.size() != expected_b) {
        throw Error(ErrorKind::LengthMismatch, "coefficient lists do not match the unitary form");
    }
    SchemeTerm term;
    std::size_t ia = 0, ib = 0;
    for (std::size_t p = 0; p < pairs; ++p) {
        if (starts_with_a) {
            term.word.push_back({0, a[ia++], 0});
            term.word.push_back({1, b[ib++], 1});
        } else {
            term.word.push_back({1, b[ib++], 1});
            term.word.push_back({0, a[ia++], 0});
        }
    }
    if (extra_a) term.word.push_back({0, a[ia++], 0});
    if (extra_b) term.word.push_back({1, b[ib++], 1});
    SchemeSpec spec;
    spec.n_vars = 2;
    spec.label = "unitary_form";
    spec.terms.push_back(std::move(term));
    spec.validate();
    return spec;
}

}  // namespace qjpd
