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


#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qjpd/engine.hpp"
#include "qjpd/random.hpp"

namespace qjpd {
namespace {

using Pair = std::vector<HermitianObservable>;

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

/// Engine weights keyed by (round(scale x), round(scale y)).
std::map<oracle::Key, Complex> keyed(const QuasiDistribution& d, double scale) {
    std::map<oracle::Key, Complex> out;
    for (const auto& a : d.atoms) out[{std::lround(scale * a.point[0]), std::lround(scale * a.point[1])}] = a.weight;
    return out;
}

/// Max deviation between two keyed tables; keys missing on one side count as 0.
double table_gap(const std::map<oracle::Key, Complex>& a, const std::map<oracle::Key, Complex>& b) {
    double gap = 0.0;
    for (const auto& [k, v] : a) gap = std::max(gap, std::abs(v - (b.count(k) ? b.at(k) : Complex{})));
    for (const auto& [k, v] : b) gap = std::max(gap, std::abs(v - (a.count(k) ? a.at(k) : Complex{})));
    return gap;
}

Pair half_pair() {
    const SpinTriple s = spin_operators(1);
    return {s.J1, s.J2};
}

Pair one_pair() {
    const SpinTriple s = spin_operators(2);
    return {s.J1, s.J2};
}

DensityState z_plus() { return bloch_state(0.0, 0.0); }
DensityState z_minus() { return bloch_state(kPi, 0.0); }
DensityState y_plus() { return bloch_state(kPi / 2, kPi / 2); }

QuasiDistribution run(const SchemeSpec& spec, const Pair& obs, const DensityState& rho) {
    return evaluate_distribution(build_atoms(spec, obs), rho);
}

TEST(Schemes, Generators) {
    const SchemeSpec k = scheme_kirkwood(2);
    ASSERT_EQ(k.terms.size(), 1u);
    EXPECT_EQ(k.terms[0].word, (std::vector<Factor>{{0, 1.0, 0}, {1, 1.0, 1}}));
    EXPECT_EQ(scheme_kirkwood(3).terms[0].word.size(), 3u);

    const SchemeSpec s = scheme_s_alpha(0.5);
    EXPECT_EQ(s.terms[0].word, (std::vector<Factor>{{0, 0.5, 0}, {1, 1.0, 1}, {0, 0.5, 0}}));
    EXPECT_EQ(scheme_s_alpha(1.0).terms[0].word, k.terms[0].word);
    EXPECT_EQ(scheme_s_alpha(0.0).terms[0].word, (std::vector<Factor>{{1, 1.0, 1}, {0, 1.0, 0}}));

    const SchemeSpec m = scheme_margenau_hill(0.0);
    ASSERT_EQ(m.terms.size(), 2u);
    EXPECT_EQ(m.terms[0].weight, Complex(0.5, 0.0));
    EXPECT_EQ(scheme_margenau_hill(1.0).terms, k.terms);

    const SchemeSpec bj1 = scheme_born_jordan(1);
    ASSERT_EQ(bj1.terms.size(), 1u);
    EXPECT_EQ(bj1.terms[0].word, s.terms[0].word);
    EXPECT_NEAR(std::abs(bj1.terms[0].weight - 1.0), 0.0, 1e-15);
    EXPECT_TRUE(scheme_born_jordan(201).approximate);
    EXPECT_NO_THROW(scheme_born_jordan(201).validate());
}

TEST(Schemes, ValidationRejectsBadSpecs) {
    SchemeSpec bad = scheme_kirkwood(2);
    bad.terms[0].weight = 0.9;
    EXPECT_THROW(bad.validate(), Error);
    bad = scheme_kirkwood(2);
    bad.terms[0].word[0].coeff = 0.7;
    EXPECT_THROW(bad.validate(), Error);
    bad = scheme_kirkwood(2);
    bad.terms[0].word[1].obs = 5;
    EXPECT_THROW(bad.validate(), Error);
}

TEST(Schemes, GaussLegendreIsExactForPolynomials) {
    for (std::size_t n : {1u, 2u, 5u, 20u, 201u}) {
        const QuadratureRule r = gauss_legendre(n);
        for (std::size_t deg = 0; deg < 2 * n && deg < 12; ++deg) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += r.weights[i] * std::pow(r.nodes[i], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1.0);
            EXPECT_NEAR(sum, exact, 1e-13) << "n=" << n << " deg=" << deg;
        }
    }
}

TEST(Schemes, UnitaryForms) {
    const std::vector<double> a{0.25, 0.75}, b{0.4, 0.6}, a3{0.2, 0.3, 0.5}, b3{0.1, 0.2, 0.7};
    EXPECT_EQ(scheme_unitary_form(UnitaryForm::T1, a, b).terms[0].word,
              (std::vector<Factor>{{0, 0.25, 0}, {1, 0.4, 1}, {0, 0.75, 0}, {1, 0.6, 1}}));
    EXPECT_EQ(scheme_unitary_form(UnitaryForm::T3, a, b).terms[0].word,
              (std::vector<Factor>{{1, 0.4, 1}, {0, 0.25, 0}, {1, 0.6, 1}, {0, 0.75, 0}}));
    EXPECT_EQ(scheme_unitary_form(UnitaryForm::T2, a3, b).terms[0].word.size(), 5u);
    EXPECT_EQ(scheme_unitary_form(UnitaryForm::T4, a, b3).terms[0].word.front(), (Factor{1, 0.1, 1}));
    EXPECT_THROW(scheme_unitary_form(UnitaryForm::T1, a3, b), Error);
    const std::vector<double> off{0.5, 0.6};
    EXPECT_THROW(scheme_unitary_form(UnitaryForm::T1, off, b), Error);
}

TEST(Golden, KirkwoodZStates) {
    const std::map<oracle::Key, Complex> plus{{{1, 1}, (1.0 + kI) / 4.0},
                                              {{-1, -1}, (1.0 + kI) / 4.0},
                                              {{1, -1}, (1.0 - kI) / 4.0},
                                              {{-1, 1}, (1.0 - kI) / 4.0}};
    std::map<oracle::Key, Complex> minus;
    for (const auto& [k, v] : plus) minus[k] = std::conj(v);
    EXPECT_LE(table_gap(keyed(run(scheme_kirkwood(2), half_pair(), z_plus()), 2), plus), 1e-12);
    EXPECT_LE(table_gap(keyed(run(scheme_kirkwood(2), half_pair(), z_minus()), 2), minus), 1e-12);
}

TEST(Golden, SymmetricOrderingZAndYStates) {
    const std::map<oracle::Key, Complex> corners{
        {{1, 1}, 0.25}, {{1, -1}, 0.25}, {{-1, 1}, 0.25}, {{-1, -1}, 0.25}};
    EXPECT_LE(table_gap(keyed(run(scheme_s_alpha(0.5), half_pair(), z_plus()), 2), corners), 1e-12);
    EXPECT_LE(table_gap(keyed(run(scheme_s_alpha(0.5), half_pair(), z_minus()), 2), corners), 1e-12);

    std::map<oracle::Key, Complex> y = corners;
    y[{0, 1}] = 0.5;
    y[{0, -1}] = -0.5;
    const QuasiDistribution d = run(scheme_s_alpha(0.5), half_pair(), y_plus());
    EXPECT_LE(table_gap(keyed(d, 2), y), 1e-12);
    EXPECT_EQ(d.atoms.size(), 6u);
}

TEST(Golden, KirkwoodYPlus) {
    const std::map<oracle::Key, Complex> ref{{{1, 1}, 0.5}, {{-1, 1}, 0.5}};
    EXPECT_LE(table_gap(keyed(run(scheme_kirkwood(2), half_pair(), y_plus()), 2), ref), 1e-12);
}

TEST(Golden, KirkwoodMaximallyMixed) {
    const std::map<oracle::Key, Complex> ref{{{1, 1}, 0.25}, {{1, -1}, 0.25}, {{-1, 1}, 0.25}, {{-1, -1}, 0.25}};
    EXPECT_LE(table_gap(keyed(run(scheme_kirkwood(2), half_pair(), DensityState::maximally_mixed(2)), 2), ref),
              1e-12);
}

TEST(Golden, KirkwoodSpinHalfCoefficientFormulas) {
    Rng rng(21);
    const OperatorAtomSet atoms = build_atoms(scheme_kirkwood(2), half_pair());
    for (int i = 0; i < 100; ++i) {
        const DensityState rho = random_density(2, rng);
        const double a = rho.matrix()(0, 0).real(), b = rho.matrix()(1, 0).real(), c = rho.matrix()(1, 0).imag();
        const auto got = keyed(evaluate_distribution(atoms, rho, 0.0), 2);
        EXPECT_LE(table_gap(got, oracle::kd_half_closed_form(a, b, c)), 1e-12);
        const auto back = oracle::kd_half_inverse(got);
        EXPECT_NEAR(std::abs(back[0] - a), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(back[1] - b), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(back[2] - c), 0.0, 1e-12);
    }
}

TEST(Golden, KirkwoodSpinOneCoefficientFormulas) {
    Rng rng(22);
    const OperatorAtomSet atoms = build_atoms(scheme_kirkwood(2), one_pair());
    for (int i = 0; i < 100; ++i) {
        const DensityState rho = random_density(3, rng);
        const QuasiDistribution d = evaluate_distribution(atoms, rho, 0.0);
        EXPECT_LE(table_gap(keyed(d, 1), oracle::kd_one_closed_form(oracle::qutrit_params(rho.matrix()))), 1e-11);
        EXPECT_LE(std::abs(d.weight_at({0.0, 0.0})), 1e-12);
    }
}

TEST(Golden, KirkwoodRotatedPairCoefficientFormulas) {
    Rng rng(23);
    const SpinTriple s = spin_operators(1);
    for (double phi : {kPi / 6, kPi / 3, 0.8, 2.0}) {
        const HermitianObservable b(std::cos(phi) * s.J3.matrix() + std::sin(phi) * s.J1.matrix(), "B");
        const Pair obs{s.J3, b};
        const OperatorAtomSet atoms = build_atoms(scheme_kirkwood(2), obs);
        for (int i = 0; i < 20; ++i) {
            const DensityState rho = random_density(2, rng);
            const double a = rho.matrix()(0, 0).real(), br = rho.matrix()(1, 0).real();
            const double c = rho.matrix()(1, 0).imag();
            const auto got = keyed(evaluate_distribution(atoms, rho, 0.0), 2);
            EXPECT_LE(table_gap(got, oracle::kd_rotated_closed_form(phi, a, br, c)), 1e-12);
            const auto back = oracle::kd_rotated_inverse(phi, got);
            EXPECT_NEAR(std::abs(back[0] - a), 0.0, 1e-11);
            EXPECT_NEAR(std::abs(back[1] - br), 0.0, 1e-11);
            EXPECT_NEAR(std::abs(back[2] - c), 0.0, 1e-11);
        }
    }
}

TEST(Atoms, SumToIdentityAndKirkwoodMatchesProjectorProducts) {
    Rng rng(31);
    for (std::size_t n = 2; n <= 5; ++n) {
        const Pair obs{random_hermitian(n, rng, "A"), random_hermitian(n, rng, "B")};
        for (const SchemeSpec& spec : {scheme_kirkwood(2), scheme_s_alpha(0.3), scheme_margenau_hill(-0.4),
                                       scheme_born_jordan(9)}) {
            EXPECT_TRUE(approx_equal(build_atoms(spec, obs).total(), identity(n), 1e-10)) << spec.label;
        }
        const OperatorAtomSet kd = build_atoms(scheme_kirkwood(2), obs);
        const auto& ea = obs[0].eigenvalues();
        const auto& eb = obs[1].eigenvalues();
        ASSERT_EQ(kd.atoms.size(), ea.size() * eb.size());
        for (const auto& atom : kd.atoms) {
            // Atom coordinates are snapped, so match them back to the raw spectrum.
            const auto nearest = [](const std::vector<double>& spectrum, double x) {
                return *std::min_element(spectrum.begin(), spectrum.end(), [x](double p, double q) {
                    return std::abs(p - x) < std::abs(q - x);
                });
            };
            const ComplexMatrix ref = oracle::lagrange_projector(obs[0].matrix(), ea, nearest(ea, atom.point[0])) *
                                      oracle::lagrange_projector(obs[1].matrix(), eb, nearest(eb, atom.point[1]));
            EXPECT_LE(max_norm(ComplexMatrix(atom.matrix - ref)), 1e-8);
        }
    }
}

TEST(Atoms, SingleObservableGivesSpectralProjectors) {
    const SpinTriple s = spin_operators(2);
    const Pair one{s.J1};
    const OperatorAtomSet atoms = build_atoms(scheme_kirkwood(1), one);
    ASSERT_EQ(atoms.atoms.size(), 3u);
    const std::vector<double> spectrum{1.0, 0.0, -1.0};
    for (const auto& a : atoms.atoms) {
        EXPECT_TRUE(approx_equal(a.matrix, oracle::lagrange_projector(oracle::one_x(), spectrum, a.point[0]), 1e-12));
    }
}

TEST(Atoms, SymmetricOrderingHasOffGridColumn) {
    const OperatorAtomSet atoms = build_atoms(scheme_s_alpha(0.5), half_pair());
    std::vector<double> xs;
    for (const auto& a : atoms.atoms) xs.push_back(a.point[0]);
    EXPECT_NE(std::find(xs.begin(), xs.end(), 0.0), xs.end());
    EXPECT_EQ(atoms.atoms.size(), 6u);
}

TEST(Atoms, DimensionMismatch) {
    const Pair obs{spin_operators(1).J1, spin_operators(2).J2};
    EXPECT_THROW(build_atoms(scheme_kirkwood(2), obs), Error);
    const Pair one{spin_operators(1).J1};
    EXPECT_THROW(build_atoms(scheme_kirkwood(2), one), Error);
}

TEST(Marginals, Examples) {
    const QuasiDistribution kz = run(scheme_kirkwood(2), half_pair(), z_plus());
    const QuasiDistribution mx = marginal(kz, 0);
    EXPECT_NEAR(std::abs(mx.weight_at({0.5}) - 0.5), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(mx.weight_at({-0.5}) - 0.5), 0.0, 1e-14);
    const QuasiDistribution my = marginal(run(scheme_kirkwood(2), half_pair(), y_plus()), 1);
    EXPECT_NEAR(std::abs(my.weight_at({0.5}) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(my.weight_at({-0.5})), 0.0, 1e-14);
    const QuasiDistribution born = born_distribution(spin_operators(1).J1, z_plus());
    const QuasiDistribution same = marginal(born, 0);
    ASSERT_EQ(same.atoms.size(), born.atoms.size());
    for (std::size_t i = 0; i < born.atoms.size(); ++i) EXPECT_EQ(same.atoms[i].weight, born.atoms[i].weight);
    EXPECT_THROW(marginal(kz, 2), Error);
}

TEST(Marginals, MatchBornRuleAcrossSchemes) {
    Rng rng(41);
    std::uniform_int_distribution<int> dim(2, 5), pick(0, 3);
    std::uniform_real_distribution<double> alpha(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = static_cast<std::size_t>(dim(rng));
        const Pair obs{random_hermitian(n, rng, "A"), random_hermitian(n, rng, "B")};
        const DensityState rho = random_density(n, rng);
        SchemeSpec spec;
        switch (pick(rng)) {
            case 0: spec = scheme_kirkwood(2); break;
            case 1: spec = scheme_s_alpha(alpha(rng)); break;
            case 2: spec = scheme_margenau_hill(alpha(rng)); break;
            default: spec = scheme_born_jordan(201); break;
        }
        const QuasiDistribution d = run(spec, obs, rho);
        EXPECT_NEAR(std::abs(d.total() - 1.0), 0.0, 1e-10);
        for (std::size_t v = 0; v < 2; ++v) {
            const QuasiDistribution m = marginal(d, v);
            for (const auto& b : born_distribution(obs[v], rho).atoms) {
                EXPECT_LE(std::abs(m.weight_at(b.point) - b.weight), 1e-9) << spec.label;
            }
        }
    }
}

TEST(Quantize, Examples) {
    const SpinTriple s = spin_operators(1);
    const OperatorAtomSet atoms = build_atoms(scheme_kirkwood(2), half_pair());
    EXPECT_TRUE(approx_equal(quantize([](const SupportPoint&) { return 1.0; }, atoms), identity(2), 1e-14));
    EXPECT_TRUE(approx_equal(quantize([](const SupportPoint& p) { return p[0]; }, atoms), s.J1.matrix(), 1e-14));
    EXPECT_TRUE(approx_equal(quantize([](const SupportPoint& p) { return p[0] * p[1]; }, atoms),
                             0.5 * kI * s.J3.matrix(), 1e-14));
}

TEST(QuasiExpectation, Examples) {
    const auto one = [](const SupportPoint&) { return 1.0; };
    const auto y = [](const SupportPoint& p) { return p[1]; };
    const auto xy = [](const SupportPoint& p) { return p[0] * p[1]; };
    EXPECT_NEAR(std::abs(quasi_expectation(one, run(scheme_kirkwood(2), half_pair(), z_plus())) - 1.0), 0, 1e-14);
    EXPECT_NEAR(std::abs(quasi_expectation(y, run(scheme_kirkwood(2), half_pair(), y_plus())) - 0.5), 0, 1e-14);
    EXPECT_NEAR(std::abs(quasi_expectation(xy, run(scheme_kirkwood(2), half_pair(), z_plus())) - 0.25 * kI), 0,
                1e-14);
}

TEST(QuasiExpectation, DualityWithQuantization) {
    Rng rng(51);
    std::normal_distribution<double> g;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
        const Pair obs{random_hermitian(n, rng, "A"), random_hermitian(n, rng, "B")};
        const DensityState rho = random_density(n, rng);
        const double c[6] = {g(rng), g(rng), g(rng), g(rng), g(rng), g(rng)};
        const auto f = [&](const SupportPoint& p) {
            return Complex(c[0] + c[1] * p[0] * p[1] * p[1], c[2] * p[0] * p[0] + c[3] * p[1]) + c[4] * p[0] -
                   c[5] * p[1] * p[1] * p[1];
        };
        const OperatorAtomSet atoms = build_atoms(scheme_margenau_hill(0.2), obs);
        const Complex lhs = quasi_expectation(f, evaluate_distribution(atoms, rho, 0.0));
        const Complex rhs = (quantize(f, atoms) * rho.matrix()).trace();
        EXPECT_LE(std::abs(lhs - rhs), 1e-10);
    }
}

TEST(Characteristic, Examples) {
    const Pair obs = half_pair();
    const std::vector<SupportPoint> zero{{0.0, 0.0}};
    for (const HashedSpec& spec : {HashedSpec{scheme_kirkwood(2)}, HashedSpec{WignerSpec{}}}) {
        EXPECT_NEAR(std::abs(characteristic_function(spec, obs, y_plus(), zero)[0] - 1.0), 0.0, 1e-14);
    }
    std::vector<SupportPoint> pts;
    for (double s = -4.0; s <= 4.0; s += 0.8)
        for (double t = -3.0; t <= 3.0; t += 0.75) pts.push_back({s, t});
    const auto chi = characteristic_function(WignerSpec{}, obs, z_plus(), pts);
    const auto chim = characteristic_function(WignerSpec{}, obs, z_minus(), pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_NEAR(std::abs(chi[i] - oracle::wigner_z_characteristic(pts[i][0], pts[i][1])), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(chim[i] - oracle::wigner_z_characteristic(pts[i][0], pts[i][1])), 0.0, 1e-12);
    }
}

TEST(Characteristic, MatchesAtomFourierSum) {
    Rng rng(61);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (std::size_t n = 2; n <= 4; ++n) {
        const Pair obs{random_hermitian(n, rng, "A"), random_hermitian(n, rng, "B")};
        const DensityState rho = random_density(n, rng);
        std::vector<SupportPoint> pts;
        for (int i = 0; i < 50; ++i) pts.push_back({u(rng), u(rng)});
        for (const SchemeSpec& spec : {scheme_kirkwood(2), scheme_s_alpha(0.7), scheme_margenau_hill(0.0),
                                       scheme_born_jordan(31)}) {
            const auto direct = characteristic_function(spec, obs, rho, pts);
            const auto fourier = atom_fourier_sum(evaluate_distribution(build_atoms(spec, obs), rho, 0.0), pts);
            for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_LE(std::abs(direct[i] - fourier[i]), 1e-9);
        }
    }
}

TEST(Realness, HermitianAtomSchemesGiveRealDistributions) {
    Rng rng(71);
    for (const SchemeSpec& spec : {scheme_margenau_hill(0.0), scheme_s_alpha(0.5)}) {
        const OperatorAtomSet atoms = build_atoms(spec, half_pair());
        for (const auto& a : atoms.atoms) EXPECT_LE(hermitian_deviation(a.matrix), 1e-10);
        for (int i = 0; i < 20; ++i) {
            EXPECT_LE(evaluate_distribution(atoms, random_density(2, rng)).max_abs_imag(), 1e-10);
        }
    }
}

TEST(Invariance, ScalingTranslationAndUnitaryConjugation) {
    Rng rng(81);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    for (std::size_t n = 2; n <= 4; ++n) {
        const HermitianObservable a = random_hermitian(n, rng, "A"), b = random_hermitian(n, rng, "B");
        const DensityState rho = random_density(n, rng);
        const QuasiDistribution base = run(scheme_kirkwood(2), {a, b}, rho);

        const double c = u(rng);
        const QuasiDistribution scaled = run(scheme_kirkwood(2), {HermitianObservable(c * a.matrix()), b}, rho);
        ASSERT_EQ(scaled.atoms.size(), base.atoms.size());
        for (const auto& w : base.atoms) {
            EXPECT_LE(std::abs(scaled.weight_at({c * w.point[0], w.point[1]}, 1e-8) - w.weight), 1e-10);
        }

        const QuasiDistribution shifted =
            run(scheme_kirkwood(2), {HermitianObservable(a.matrix() + identity(n)), b}, rho);
        ASSERT_EQ(shifted.atoms.size(), base.atoms.size());
        for (const auto& w : base.atoms) {
            EXPECT_LE(std::abs(shifted.weight_at({w.point[0] + 1.0, w.point[1]}, 1e-8) - w.weight), 1e-10);
        }

        const ComplexMatrix v = random_unitary(n, rng);
        const QuasiDistribution rotated =
            run(scheme_kirkwood(2),
                {HermitianObservable(v * a.matrix() * v.adjoint()), HermitianObservable(v * b.matrix() * v.adjoint())},
                DensityState(v * rho.matrix() * v.adjoint()));
        ASSERT_EQ(rotated.atoms.size(), base.atoms.size());
        for (const auto& w : base.atoms) EXPECT_LE(std::abs(rotated.weight_at(w.point, 1e-8) - w.weight), 1e-10);
    }
}

TEST(Wigner, WindowedDensityIsFlagged) {
    const Pair obs = half_pair();
    const std::vector<AxisGrid> axes{{-8.0, 8.0, 33}, {-8.0, 8.0, 33}};
    const GridDensity g = wigner_windowed_density(obs, z_plus(), axes, {{0.5, 0.5}, {0.0, 0.0}});
    EXPECT_TRUE(g.approximate);
    EXPECT_TRUE(g.possibly_divergent);
    EXPECT_EQ(g.values.size(), 2u);
    EXPECT_EQ(grid_points(axes).size(), 33u * 33u);
}

TEST(BornJordan, HashedOperatorMatchesClosedForm) {
    const Pair obs = half_pair();
    const SchemeSpec spec = scheme_born_jordan(201);
    for (double s : {-5.0, -1.3, 0.0, 0.7, 4.0}) {
        for (double t : {-6.0, -0.4, 0.0, 2.5}) {
            const ComplexMatrix h = hashed_operator(spec, obs, SupportPoint{s, t});
            EXPECT_LE(max_norm(ComplexMatrix(h - oracle::born_jordan_half(s, t))), 1e-12) << s << "," << t;
        }
    }
}

TEST(BornJordan, TOnlyLimitSelectsOffDiagonalSign) {
    const Pair obs = half_pair();
    for (double t : {-2.0, 0.9, 3.0}) {
        const ComplexMatrix direct = matrix_exponential_unitary(obs[1].matrix(), t);
        EXPECT_LE(max_norm(ComplexMatrix(oracle::born_jordan_half(0.0, t) - direct)), 1e-14);
        EXPECT_GT(max_norm(ComplexMatrix(oracle::born_jordan_half_flipped(0.0, t) - direct)), 0.1);
    }
}

TEST(Wigner, CharacteristicFunctionOfZStates) {
    const Pair obs = half_pair();
    const std::vector<SupportPoint> pts = grid_points({{-7.0, 7.0, 8}, {-7.0, 7.0, 8}});
    const auto chi = characteristic_function(WignerSpec{}, obs, z_plus(), pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_NEAR(std::abs(chi[i] - oracle::wigner_z_characteristic(pts[i][0], pts[i][1])), 0.0, 1e-12);
    }
}

}  // namespace
}  // namespace qjpd
