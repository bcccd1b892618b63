// Copyright 2026 The cstomo Authors
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

#include <cmath>

#include "cstomo/process.hpp"
#include "oracles.hpp"

using namespace cstomo;

namespace {

/// (E (x) 1)(|psi0><psi0|) built with dense Kronecker products.
Matrix choi_oracle(const QuantumChannel& e) {
    const auto d = static_cast<Eigen::Index>(e.dim());
    CVector psi0 = CVector::Zero(d * d);
    for (Eigen::Index j = 0; j < d; ++j) psi0(j * d + j) = 1.0 / std::sqrt(double(d));
    const Matrix omega = psi0 * psi0.adjoint();
    Matrix out = Matrix::Zero(d * d, d * d);
    const Matrix id = Matrix::Identity(d, d);
    for (const auto& k : e.kraus()) {
        const Matrix kk = oracle::kron(k, id);
        out += kk * omega * kk.adjoint();
    }
    return out;
}

std::vector<std::pair<PauliString, PauliString>> all_pairs(int n) {
    std::vector<std::pair<PauliString, PauliString>> out;
    for (std::uint64_t a = 0; a < pauli_count(n); ++a)
        for (std::uint64_t b = 0; b < pauli_count(n); ++b) out.emplace_back(PauliString(n, a), PauliString(n, b));
    return out;
}

}  // namespace

TEST(Channel, Validation) {
    EXPECT_THROW(QuantumChannel(1, {Matrix::Identity(4, 4)}), DimensionMismatch);
    EXPECT_THROW(QuantumChannel::unitary(Matrix::Ones(2, 2)), InvalidArgument);
    EXPECT_THROW(QuantumChannel::local_depolarizing(1, 1.5), InvalidArgument);
    Rng rng(1);
    EXPECT_THROW(random_channel(1, 5, rng), InvalidArgument);
    EXPECT_THROW(compose(QuantumChannel::identity(1), QuantumChannel::identity(2)), DimensionMismatch);
}

TEST(Channel, StandardChannelsAreTracePreserving) {
    Rng rng(2);
    for (int n = 1; n <= 2; ++n) {
        EXPECT_TRUE(QuantumChannel::identity(n).trace_preserving());
        EXPECT_TRUE(QuantumChannel::fully_depolarizing(n).trace_preserving());
        EXPECT_TRUE(QuantumChannel::local_depolarizing(n, 0.3).trace_preserving());
        EXPECT_TRUE(random_unitary_channel(n, rng).trace_preserving());
        EXPECT_TRUE(random_channel(n, 3, rng).trace_preserving());
    }
    const auto dep = QuantumChannel::fully_depolarizing(2);
    const auto rho = haar_random_pure(2, rng);
    EXPECT_LE((dep.apply(rho.matrix()) - Matrix::Identity(4, 4) / 4.0).norm(), 1e-14);
}

TEST(Jamiolkowski, IdentityAndDepolarizing) {
    for (int n = 1; n <= 2; ++n) {
        const auto d = std::size_t{1} << n;
        const auto id = jamiolkowski_state(QuantumChannel::identity(n));
        EXPECT_NEAR(id.purity(), 1.0, 1e-12);
        EXPECT_NEAR(std::real(id.matrix()(0, 0)), 1.0 / double(d), 1e-14);
        const auto dep = jamiolkowski_state(QuantumChannel::fully_depolarizing(n));
        EXPECT_LE((dep.matrix() - Matrix::Identity(d * d, d * d) / double(d * d)).norm(), 1e-13);
    }
}

TEST(Jamiolkowski, MatchesKroneckerOracle) {
    Rng rng(3);
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto e = random_channel(2, k, rng);
        EXPECT_LE((jamiolkowski_state(e).matrix() - choi_oracle(e)).norm(), 1e-12);
    }
}

TEST(Jamiolkowski, PauliExpectationIdentity) {
    Rng rng(4);
    const auto e = random_channel(2, 3, rng);
    const Matrix choi = choi_oracle(e);
    for (std::uint64_t a = 0; a < 16; ++a) {
        for (std::uint64_t b = 0; b < 16; ++b) {
            const PauliString pa(2, a), pb(2, b);
            const double lhs = channel_pauli_expectation(e, pa, pb);
            const double rhs = jamiolkowski_pauli_expectation(e, pa, pb);
            const double dense = oracle::trace_product(oracle::pauli(pa.tensor(pb).letters()), choi).real();
            EXPECT_NEAR(lhs, rhs, 1e-12);
            EXPECT_NEAR(lhs, dense, 1e-12);
        }
    }
}

TEST(Jamiolkowski, ConjugationSign) {
    for (std::uint64_t i = 0; i < 16; ++i) {
        const PauliString p(2, i);
        const Matrix m = oracle::pauli(p.letters());
        EXPECT_LE((m.conjugate() - double(conjugation_sign(p)) * m).norm(), 1e-15);
    }
}

TEST(Jamiolkowski, RankEqualsKrausRank) {
    Rng rng(5);
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto e = random_channel(2, k, rng);
        EXPECT_EQ(e.kraus_rank(), k);
        const RVector ev = oracle::eigenvalues(jamiolkowski_state(e).matrix());
        std::size_t rank = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) rank += ev(i) > 1e-10;
        EXPECT_EQ(rank, k);
    }
}

TEST(Jamiolkowski, ChannelRoundTrip) {
    Rng rng(6);
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto e = random_channel(2, k, rng);
        const auto back = channel_from_jamiolkowski(jamiolkowski_state(e));
        EXPECT_EQ(back.kraus().size(), k);
        EXPECT_LE(back.tp_deviation(), 1e-10);
        const Matrix x = random_hermitian(4, rng);
        EXPECT_LE((back.apply(x) - e.apply(x)).norm(), 1e-10);
    }
}

TEST(InputBasis, EigenvectorsOfConjugate) {
    for (std::uint64_t i = 0; i < 16; ++i) {
        const PauliString pb(2, i);
        const auto basis = input_basis(pb);
        const Matrix c = oracle::pauli(pb.letters()).conjugate();
        EXPECT_LE((basis.vectors.adjoint() * basis.vectors - Matrix::Identity(4, 4)).norm(), 1e-14);
        for (Eigen::Index j = 0; j < 4; ++j) {
            const CVector v = basis.vectors.col(j);
            EXPECT_LE((c * v - double(basis.eigenvalues[std::size_t(j)]) * v).norm(), 1e-14) << pb.letters();
        }
    }
}

TEST(ProcessPlan, NormalizationAndSplit) {
    const auto plan = process_plan(1, all_pairs(1));
    EXPECT_EQ(plan.num_qubits(), 2);
    EXPECT_EQ(plan.size(), 16u);
    EXPECT_NEAR(plan.normalization(), 0.5, 1e-15);
    const auto small = process_plan(2, {{PauliString::from_letters("XZ"), PauliString::from_letters("YI")}});
    EXPECT_NEAR(small.normalization(), 4.0, 1e-15);
    const auto [a, b] = split_setting(small.paulis()[0]);
    EXPECT_EQ(a.letters(), "XZ");
    EXPECT_EQ(b.letters(), "YI");
    EXPECT_THROW(split_setting(PauliString::from_letters("XYZ")), DimensionMismatch);
}

TEST(ProcessPlan, SettingCount) {
    // Four observables; inputs {I,Z} share a basis, so X, Y and Z bases remain.
    EXPECT_EQ(process_setting_count(process_plan(1, all_pairs(1))), 4u + 3u);
    EXPECT_EQ(process_setting_count(process_plan(2, all_pairs(2))), 16u + 9u);
    const auto one = process_plan(1, {{PauliString::from_letters("X"), PauliString::from_letters("I")},
                                      {PauliString::from_letters("X"), PauliString::from_letters("Z")}});
    EXPECT_EQ(process_setting_count(one), 2u);
}

TEST(ProcessSimulation, ExactMatchesStateTomographyData) {
    Rng rng(7);
    const auto e = random_channel(2, 2, rng);
    const auto plan = process_plan(2, all_pairs(2));
    const auto rec = simulate_process_measurements(e, plan, kExactCopies, rng);
    EXPECT_TRUE(rec.exact);
    const RVector direct = apply_sampling_operator(plan, choi_oracle(e));
    EXPECT_LE((rec.y - direct).norm(), 1e-11);
}

TEST(ProcessSimulation, ShotDataIsUnbiased) {
    Rng rng(8);
    const auto e = compose(QuantumChannel::local_depolarizing(1, 0.2), random_unitary_channel(1, rng));
    const auto plan = process_plan(1, all_pairs(1));
    const RVector truth = apply_sampling_operator(plan, choi_oracle(e));
    const std::uint64_t per = 40000;
    const auto rec = simulate_process_measurements(e, plan, per * 16, rng);
    for (Eigen::Index i = 0; i < 16; ++i) {
        EXPECT_EQ(rec.shots[std::size_t(i)], std::int64_t(per));
        // y_i has standard deviation at most sqrt(d^2/m)/sqrt(shots) = 1/200.
        EXPECT_NEAR(rec.y(i), truth(i), 5.0 / 200.0);
    }
    EXPECT_THROW(simulate_process_measurements(e, plan, 8, rng), InfeasiblePlan);
    EXPECT_THROW(simulate_process_measurements(QuantumChannel::identity(2), plan, 160, rng), DimensionMismatch);
}

TEST(ProcessReconstruction, ExactCompletePlanRecoversUnitary) {
    Rng rng(9);
    const auto e = random_unitary_channel(2, rng);
    const auto plan = process_plan(2, all_pairs(2));
    const auto rec = simulate_process_measurements(e, plan, kExactCopies, rng);
    SolverConfig c;
    c.tolerance = 1e-10;
    c.max_iterations = 20000;
    const auto out = reconstruct_channel(plan, rec, Estimator::lasso, 1e-6, c);
    EXPECT_FALSE(out.trivial);
    EXPECT_GE(jamiolkowski_fidelity(out.channel, e), 1 - 1e-6);
    EXPECT_LE(out.tp_deviation, 1e-4);
}

TEST(ProcessReconstruction, ZeroDataIsTrivial) {
    const auto plan = process_plan(1, all_pairs(1));
    MeasurementRecord rec;
    rec.y = RVector::Zero(16);
    rec.exact = true;
    rec.shots.assign(16, 0);
    rec.plus_counts.assign(16, 0);
    const auto out = reconstruct_channel(plan, rec, Estimator::lasso, 0.1);
    EXPECT_TRUE(out.trivial);
    EXPECT_TRUE(out.channel.kraus().empty());
    EXPECT_THROW(reconstruct_channel(MeasurementPlan::complete(1), rec, Estimator::lasso, 0.1), DimensionMismatch);
}
