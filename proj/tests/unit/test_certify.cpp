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

#include "cstomo/certify.hpp"
#include "oracles.hpp"

using namespace cstomo;

namespace {

CVector basis(std::size_t d, std::size_t i) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
    v(static_cast<Eigen::Index>(i)) = 1;
    return v;
}

complex sandwich(const CVector& a, const Matrix& m, const CVector& b) { return a.dot(m * b); }

}  // namespace

TEST(DfeDistribution, ComputationalBasisExample) {
    const auto dist = dfe_distribution(basis(2, 0), basis(2, 0));
    // I and Z each carry 1/2; X and Y vanish.
    EXPECT_NEAR(dist.probabilities(0), 0.5, 1e-15);
    EXPECT_NEAR(dist.probabilities(1), 0.0, 1e-15);
    EXPECT_NEAR(dist.probabilities(2), 0.0, 1e-15);
    EXPECT_NEAR(dist.probabilities(3), 0.5, 1e-15);

    const auto off = dfe_distribution(basis(2, 0), basis(2, 1));
    EXPECT_NEAR(off.probabilities(1), 0.5, 1e-15);
    EXPECT_NEAR(off.probabilities(2), 0.5, 1e-15);
}

TEST(DfeDistribution, SumsToOneAndMatchesDenseWeights) {
    Rng rng(1);
    for (int n = 1; n <= 3; ++n) {
        const std::size_t d = std::size_t{1} << n;
        const CVector a = haar_random_vector(d, rng);
        const CVector b = haar_random_vector(d, rng);
        const auto dist = dfe_distribution(a, b);
        EXPECT_NEAR(dist.probabilities.sum(), 1.0, 1e-12);
        for (std::uint64_t i = 0; i < pauli_count(n); ++i) {
            const complex w = sandwich(a, oracle::pauli(PauliString(n, i).letters()), b);
            EXPECT_LE(std::abs(dist.weights[i] - w), 1e-12);
            EXPECT_NEAR(dist.probabilities(static_cast<Eigen::Index>(i)), std::norm(w) / double(d), 1e-12);
        }
    }
}

TEST(DfeDistribution, Errors) {
    EXPECT_THROW(dfe_distribution(basis(2, 0), basis(4, 0)), DimensionMismatch);
    EXPECT_THROW(dfe_distribution(basis(3, 0), basis(3, 0)), DimensionMismatch);
    EXPECT_THROW(dfe_mode_from_string("approx"), InvalidArgument);
}

TEST(DfeMoments, UnbiasedWithBoundedVariance) {
    Rng rng(2);
    for (int n = 1; n <= 3; ++n) {
        const std::size_t d = std::size_t{1} << n;
        for (int rep = 0; rep < 10; ++rep) {
            const auto rho = random_mixed_state(n, 1 + rep % d, rng);
            const CVector a = haar_random_vector(d, rng);
            const CVector b = haar_random_vector(d, rng);
            const auto m = dfe_moments(rho.matrix(), a, b);
            EXPECT_LE(std::abs(m.mean - sandwich(a, rho.matrix(), b)), 1e-12);
            EXPECT_LE(m.variance, 1.0 + 1e-12);
            // E|X|^2 = Tr(rho^2) for any pair of unit vectors.
            EXPECT_NEAR(m.variance + std::norm(m.mean), (rho.matrix() * rho.matrix()).trace().real(), 1e-12);
        }
    }
}

TEST(DfeCounts, Examples) {
    EXPECT_EQ(dfe_sample_count(0.1, 0.1), 1000u);
    EXPECT_EQ(dfe_sample_count(0.5, 0.5), 8u);
    // 2 ln(20) / (4 * 0.25 * 1000 * 0.01) = 0.599 -> 1
    EXPECT_EQ(dfe_copies_for_pauli(0.25, 4, 1000, 0.1, 0.1), 1u);
    // 2 ln(20) / (2 * 0.5 * 10 * 0.01) = 59.9 -> 60
    EXPECT_EQ(dfe_copies_for_pauli(0.5, 2, 10, 0.1, 0.1), 60u);
    EXPECT_THROW(dfe_sample_count(0, 0.1), InvalidArgument);
    EXPECT_THROW(dfe_sample_count(0.1, 1.0), InvalidArgument);
}

TEST(DfeParameters, PerElementSplit) {
    EXPECT_NEAR(per_element_error(0.1, 1), 0.00125, 1e-15);
    EXPECT_NEAR(per_element_error(0.2, 16), 0.2 * 0.2 / (4 * 64) / 2, 1e-15);
    EXPECT_NEAR(per_element_failure(0.1, 1), 0.1, 1e-15);
    EXPECT_NEAR(per_element_failure(0.1, 4), 0.01, 1e-15);
    // Union bound over the r(r+1)/2 upper-triangular elements.
    for (std::size_t r = 1; r <= 8; ++r) EXPECT_NEAR(per_element_failure(0.3, r) * double(r * (r + 1)) / 2, 0.3, 1e-14);
    EXPECT_THROW(per_element_error(-1, 2), InvalidArgument);
    EXPECT_THROW(per_element_failure(0, 2), InvalidArgument);
}

TEST(DfeParameters, CopyBudgetFormula) {
    const double eps = 0.05, delta = 0.1;
    const std::size_t d = 8, r = 2;
    const double e0 = std::pow(eps / (2 * std::pow(2.0, 0.75)), 2) / 2;
    const double djk = 2 * delta / 6;
    const double want = 3 * (std::ceil(1 / (e0 * e0 * djk)) + 1 + 2 * 8 * std::log(2 / djk) / (e0 * e0));
    EXPECT_NEAR(dfe_copy_budget(d, r, eps, delta) / want, 1.0, 1e-12);
}

TEST(FidelityFromElements, ExactElementsReproduceFidelity) {
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const auto rho = random_mixed_state(3, 1 + rep % 8, rng);
        const auto est = random_mixed_state(3, 1 + rep % 3, rng);
        const auto spec = low_rank_spectrum(est);
        const Matrix g = spec.vectors.adjoint() * rho.matrix() * spec.vectors;
        EXPECT_NEAR(fidelity_from_elements(spec.values, g), oracle::fidelity(rho.matrix(), est.matrix()), 1e-7);
    }
}

TEST(FidelityFromElements, ElementErrorsStayWithinEpsilon) {
    Rng rng(4);
    std::uniform_real_distribution<double> phase(0, 2 * M_PI);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t r = 1 + rep % 4;
        const double eps = 0.02 + 0.1 * (rep % 5);
        const double e0 = per_element_error(eps, r);
        const auto rho = random_mixed_state(3, 1 + rep % 8, rng);
        const auto est = random_mixed_state(3, r, rng);
        const auto spec = low_rank_spectrum(est);
        Matrix g = spec.vectors.adjoint() * rho.matrix() * spec.vectors;
        for (Eigen::Index j = 0; j < g.rows(); ++j) {
            for (Eigen::Index k = j; k < g.cols(); ++k) {
                const complex shift = j == k ? complex(e0 * (rng() % 2 ? 1 : -1), 0) : std::polar(e0, phase(rng));
                g(j, k) += shift;
                if (j != k) g(k, j) = std::conj(g(j, k));
            }
        }
        const double f = oracle::fidelity(rho.matrix(), est.matrix());
        const double f_hat = std::min(1.0, fidelity_from_elements(spec.values, g));
        EXPECT_LE(std::abs(f_hat - f), eps) << "rep " << rep;
    }
}

TEST(FidelityFromElements, MaximallyMixedPerturbation) {
    for (std::size_t r : {2u, 4u, 8u}) {
        Matrix m = Matrix::Zero(8, 8);
        for (std::size_t i = 0; i < r; ++i) m(Eigen::Index(i), Eigen::Index(i)) = 1.0 / double(r);
        const DensityMatrix rho(m);
        const auto spec = low_rank_spectrum(rho);
        ASSERT_EQ(std::size_t(spec.values.size()), r);
        const Matrix g = spec.vectors.adjoint() * m * spec.vectors;
        for (double e0 : {0.01, 0.1}) {
            // E = e0 1/r on G corresponds to e0 on every diagonal element g_jj.
            const Matrix g_hat = g + e0 * Matrix::Identity(Eigen::Index(r), Eigen::Index(r));
            const double delta = trace_sqrt_positive_part(assemble_g(spec.values, g_hat)) -
                                 trace_sqrt_positive_part(assemble_g(spec.values, g));
            EXPECT_NEAR(delta, std::sqrt(1 + double(r) * e0) - 1, 1e-12) << r << " " << e0;
        }
    }
}

TEST(FidelityFromElements, PerturbationOfGStaysWithinBound) {
    Rng rng(14);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t r = 1 + rep % 4;
        const double e0 = 1e-4 * (1 + rep % 7);
        const auto rho = random_mixed_state(3, 1 + rep % 8, rng);
        const auto est = random_mixed_state(3, r, rng);
        const auto spec = low_rank_spectrum(est);
        const Matrix g = spec.vectors.adjoint() * rho.matrix() * spec.vectors;
        const Matrix big_g = assemble_g(spec.values, g);
        Matrix e = random_hermitian(r, rng);
        e *= e0 / e.norm();
        const double s = trace_sqrt_positive_part(big_g + e);
        const double f_hat = std::min(1.0, s * s);
        const double f = oracle::fidelity(rho.matrix(), est.matrix());
        EXPECT_LE(std::abs(f - f_hat), 2 * std::pow(double(r), 0.75) * std::sqrt(2 * e0)) << rep;
    }
}

TEST(Certify, PureStateAgainstItself) {
    Rng rng(5);
    const auto rho = haar_random_pure(3, rng);
    const SimulatedStateOracle orc(rho);
    const auto f = certify_fidelity(orc, rho, 0.05, 0.1, rng, DfeMode::exact_expectation);
    EXPECT_NEAR(f.value, 1.0, 1e-10);
    EXPECT_EQ(f.rank, 1u);
}

TEST(Certify, SampledEstimatesWithinEpsilon) {
    int within = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(100 + seed);
        const auto rho = depolarize_local(haar_random_pure(2, rng), 0.05);
        const auto est = random_mixed_state(2, 2, rng);
        const SimulatedStateOracle orc(rho);
        const auto f = certify_fidelity(orc, est, 0.1, 0.2, rng);
        within += std::abs(f.value - oracle::fidelity(rho.matrix(), est.matrix())) <= 0.1;
        EXPECT_LE(double(f.copies_used), dfe_copy_budget(4, 2, 0.1, 0.2));
        EXPECT_EQ(f.elements.size(), 3u);
    }
    EXPECT_GE(within, 8);
}

TEST(Certify, ModesAgreeOnExpectation) {
    Rng rng(6);
    const auto rho = random_mixed_state(2, 2, rng);
    const auto est = random_mixed_state(2, 1, rng);
    const SimulatedStateOracle orc(rho);
    const double f = oracle::fidelity(rho.matrix(), est.matrix());
    for (DfeMode m : {DfeMode::sampled, DfeMode::exact_outcomes, DfeMode::exact_expectation})
        EXPECT_NEAR(certify_fidelity(orc, est, 0.05, 0.1, rng, m).value, f, 0.05) << to_string(m);
}

TEST(Certify, Errors) {
    Rng rng(7);
    const SimulatedStateOracle orc(haar_random_pure(2, rng));
    EXPECT_THROW(certify_fidelity(orc, haar_random_pure(3, rng), 0.1, 0.1, rng), DimensionMismatch);
    EXPECT_THROW(certify_fidelity(orc, DensityMatrix::zero(2), 0.1, 0.1, rng), InvalidArgument);
    EXPECT_THROW(certify_fidelity(orc, haar_random_pure(2, rng).scaled(1.5), 0.1, 0.1, rng), NotPhysical);
    EXPECT_THROW(certify_fidelity(orc, haar_random_pure(2, rng), 0.0, 0.1, rng), InvalidArgument);
    EXPECT_THROW(certify_fidelity(orc, haar_random_pure(2, rng), 0.1, 1.0, rng), InvalidArgument);
}
