// Copyright 2026 The mgshadows Authors
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

#include <gtest/gtest.h>

#include <vector>

#include "mgshadows/cubature.hpp"
#include "mgshadows/state_sim.hpp"
#include "test_support.hpp"

namespace mgs {
namespace {

Eigen::MatrixXcd simulated_unitary(const GivensSequence& seq) {
    const int n = seq.n_modes();
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXcd u(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        StateVector psi(n);
        psi.mutable_amplitudes()[0] = 0.0;
        psi.mutable_amplitudes()[static_cast<std::size_t>(c)] = 1.0;
        apply_sequence(psi, seq);
        for (Eigen::Index r = 0; r < d; ++r) u(r, c) = psi[static_cast<std::uint64_t>(r)];
    }
    return u;
}

AngleDistribution random_symmetric_density(Rng& rng, int id) {
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    const double a1 = u(rng);
    const double a2 = u(rng);
    const double a3 = u(rng);
    return AngleDistribution::density(
        [=](double t) { return 1 + a1 * std::cos(2 * t) + a2 * std::cos(4 * t) + a3 * std::cos(6 * t); },
        "random_symmetric_" + std::to_string(id));
}

TEST(CliffordTfold, IdentityIsIdentity) {
    EXPECT_EQ(clifford_tfold(SignedPermutation(2), 3), MonomialChannel::identity(2, 3));
}

TEST(CliffordTfold, PhaseGateRotatesXIntoY) {
    GivensSequence s(1);
    s.push_back({2, -kPi / 2});
    const auto ch = clifford_tfold(s, 1);
    const std::uint32_t x = pauli_index(PauliString(1, 1, 0, 0));
    const std::uint32_t z = pauli_index(PauliString(1, 0, 1, 0));
    const std::uint32_t y = pauli_index(PauliString(1, 1, 1, 0));
    ASSERT_TRUE(dense_matrix(pauli_from_index(1, y)).isApprox(dense_matrix(MajoranaMonomial(1, {2}))));
    EXPECT_EQ(ch.target(x), y);
    EXPECT_EQ(ch.sign(x), 1);
    EXPECT_EQ(ch.target(y), x);
    EXPECT_EQ(ch.sign(y), -1);
    EXPECT_EQ(ch.target(z), z);
    EXPECT_EQ(ch.sign(z), 1);
}

TEST(CliffordTfold, SingleCopyMatchesDenseConjugation) {
    Rng rng(70);
    for (int n = 1; n <= 3; ++n) {
        for (int it = 0; it < 5; ++it) {
            auto seq = add_random_reflection(clifford_sequence(n, rng, CliffordMode::four_angle), rng);
            const Eigen::MatrixXcd u = simulated_unitary(seq);
            const auto ch = clifford_tfold(seq, 1);
            for (std::uint32_t p = 0; p < (1u << (2 * n)); ++p) {
                const Eigen::MatrixXcd got = ch.sign(p) * dense_matrix(pauli_from_index(n, ch.target(p)));
                const Eigen::MatrixXcd want = u.adjoint() * dense_matrix(pauli_from_index(n, p)) * u;
                EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-12);
            }
        }
    }
}

TEST(CliffordTfold, ComposesAsHeisenbergPicture) {
    Rng rng(71);
    for (int it = 0; it < 10; ++it) {
        const auto a = clifford_sequence(2, rng, CliffordMode::four_angle);
        const auto b = clifford_sequence(2, rng, CliffordMode::two_angle);
        EXPECT_EQ(clifford_tfold(a.then(b), 3), clifford_tfold(a, 3) * clifford_tfold(b, 3));
    }
}

TEST(CliffordTfold, CapIsResourceError) {
    EXPECT_THROW(clifford_tfold(SignedPermutation(3), 3), ResourceError);
    EXPECT_NO_THROW(tfold_dim(3, 3, 9));
}

TEST(AngleDistribution, ClosedFormProbabilities) {
    EXPECT_DOUBLE_EQ(AngleDistribution::uniform().p(), 0.5);
    EXPECT_NEAR(AngleDistribution::uniform().moment(0, 2), 0.5, 1e-13);
    const auto k4 = AngleDistribution::haar_givens(4);
    EXPECT_DOUBLE_EQ(k4.p(), 0.75);
    EXPECT_NEAR(k4.moment(0, 2), 0.75, 1e-13);
    const auto gate = averaged_gate_3fold(1, 2, AngleDistribution::uniform());
    for (double w : gate.weights) EXPECT_DOUBLE_EQ(w, 0.25);
    EXPECT_THROW(AngleDistribution::haar_givens(1), DomainError);
}

TEST(AngleDistribution, AsymmetricLawsRejected) {
    const auto atom = AngleDistribution::point_masses({{0.0, 1.0}});
    EXPECT_THROW(averaged_gate_3fold(1, 2, atom), DomainError);
    EXPECT_THROW(gamma_4fold(atom), DomainError);
    const auto skew = AngleDistribution::density([](double t) { return 1 + 0.5 * std::sin(t); });
    EXPECT_THROW(averaged_gate_3fold(1, 2, skew), DomainError);
}

TEST(AngleDistribution, NonIntegrableDensityIsNumericError) {
    EXPECT_THROW(AngleDistribution::density([](double t) { return 1 / std::abs(t - 0.3); }), NumericError);
}

TEST(GateAverage, UniformAndSinePowerDensitiesMatchFormula) {
    for (int n = 1; n <= 2; ++n) {
        for (int axis = 2; axis <= 2 * n; ++axis) {
            for (const auto& d : {AngleDistribution::uniform(), AngleDistribution::haar_givens(4)}) {
                const auto brute = brute_3fold_quadrature(n, axis, d);
                EXPECT_LT(sup_difference(brute, averaged_gate_3fold(n, axis, d).to_sparse()), 1e-9) << d.name();
            }
        }
    }
}

TEST(GateAverage, RandomSymmetricDensities) {
    Rng rng(72);
    for (int i = 0; i < 10; ++i) {
        const auto d = random_symmetric_density(rng, i);
        const int n = 1 + i % 2;
        const int axis = n == 1 ? 2 : 3;
        EXPECT_LT(sup_difference(brute_3fold_quadrature(n, axis, d), averaged_gate_3fold(n, axis, d).to_sparse()),
                  1e-8)
            << d.name();
    }
}

TEST(GateAverage, CliffordAtomsReproduceCliffordChannels) {
    for (auto a : {CliffordAngle::zero, CliffordAngle::pi, CliffordAngle::half_pi, CliffordAngle::minus_half_pi}) {
        const auto atom = AngleDistribution::point_masses({{clifford_angle_value(a), 1.0}});
        for (int axis = 2; axis <= 4; ++axis) {
            const auto exact = clifford_tfold(clifford_givens(2, axis, a), 3).to_sparse();
            EXPECT_LT(sup_difference(brute_3fold_quadrature(2, axis, atom), exact), 1e-12);
        }
    }
}

TEST(Design, ThreeDesignAtOneAndTwoModes) {
    for (int n = 1; n <= 2; ++n) {
        const auto r = check_3design(n);
        EXPECT_EQ(r.group_size, n == 1 ? 4u : 192u);
        EXPECT_LT(r.max_deviation, 1e-9);
    }
    EXPECT_THROW(check_3design(3), ResourceError);
}

TEST(Design, AsymmetricGateIsDetected) {
    const auto skew = AngleDistribution::density([](double t) { return std::exp(std::cos(t)); }, "skew");
    std::map<std::size_t, SparseChannel> overrides;
    overrides.emplace(2, brute_3fold_quadrature(2, triangular_template(2)[2], skew));
    EXPECT_GT(check_3design(2, overrides).max_deviation, 1e-3);
}

TEST(Gamma, Examples) {
    const auto u = gamma_4fold(AngleDistribution::uniform());
    EXPECT_NEAR(u.gamma, 1.5, 1e-9);
    EXPECT_NEAR(u.closed_form, 1.5, 1e-9);
    const auto cl = gamma_4fold(AngleDistribution::point_masses({{0, 1}, {kPi, 1}, {kPi / 2, 1}, {-kPi / 2, 1}}));
    EXPECT_EQ(cl.gamma, 1.0);
    EXPECT_EQ(cl.closed_form, 1.0);
    const auto q = gamma_4fold(
        AngleDistribution::point_masses({{kPi / 4, 1}, {-kPi / 4, 1}, {3 * kPi / 4, 1}, {-3 * kPi / 4, 1}}));
    EXPECT_NEAR(q.gamma, 2.0, 1e-12);
    EXPECT_NEAR(q.closed_form, 2.0, 1e-12);
}

}  // namespace
}  // namespace mgs
