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


#pragma once

#include <cstdint>
#include <vector>

#include "cstomo/pauli.hpp"
#include "cstomo/random.hpp"
#include "cstomo/states.hpp"

namespace cstomo {

/// Source of single-copy Pauli measurements on an unknown state.
class StateOracle {
public:
    virtual ~StateOracle() = default;

    virtual std::size_t dim() const = 0;
    /// Number of +1 outcomes when P is measured on `shots` fresh copies.
    virtual std::int64_t measure(const PauliString& p, std::int64_t shots, Rng& rng) const = 0;
    /// Tr(P rho); used only by the exact modes.
    virtual double expectation(const PauliString& p) const = 0;
    /// <phi_j| rho |phi_k>; used only by exact-expectation mode.
    virtual complex matrix_element(const CVector& phi_j, const CVector& phi_k) const = 0;
};

/// Oracle backed by a simulated density matrix.
class SimulatedStateOracle final : public StateOracle {
public:
    explicit SimulatedStateOracle(DensityMatrix rho);

    std::size_t dim() const override { return rho_.dim(); }
    std::int64_t measure(const PauliString& p, std::int64_t shots, Rng& rng) const override;
    double expectation(const PauliString& p) const override;
    complex matrix_element(const CVector& phi_j, const CVector& phi_k) const override;

    const DensityMatrix& state() const { return rho_; }

private:
    DensityMatrix rho_;
};

/// How matrix elements are obtained.
///  - sampled: importance-sample Paulis, measure each on single copies.
///  - exact_outcomes: importance-sample Paulis, but use exact Tr(P rho).
///  - exact_expectation: no sampling at all; returns <phi_j|rho|phi_k>.
enum class DfeMode { sampled, exact_outcomes, exact_expectation };

const char* to_string(DfeMode m);
DfeMode dfe_mode_from_string(const std::string& s);

/// Importance distribution Pr(i) = |<phi_j|P_i|phi_k>|^2 / d over all d^2
/// Paulis, with the weights <phi_j|P_i|phi_k> it was built from.
struct DfeDistribution {
    RVector probabilities;
    std::vector<complex> weights;
};

DfeDistribution dfe_distribution(const CVector& phi_j, const CVector& phi_k);

/// Mean and variance of X = Tr(P_i rho) / <phi_k|P_i|phi_j> under the
/// importance distribution, by exhaustive enumeration.
struct DfeMoments {
    complex mean;
    double variance;  // E|X - EX|^2
};

DfeMoments dfe_moments(const Matrix& rho, const CVector& phi_j, const CVector& phi_k);

/// Sample and copy counts for one matrix element at error eps0 and failure
/// probability delta (leading constants set to one):
///   samples = ceil(1 / (eps0^2 delta)),
///   copies for Pauli i = ceil(2 ln(2/delta) / (d Pr(i) samples eps0^2)).
std::uint64_t dfe_sample_count(double eps0, double delta);
std::uint64_t dfe_copies_for_pauli(double probability, std::size_t d, std::uint64_t samples,
                                   double eps0, double delta);

struct MatrixElementEstimate {
    complex value;
    std::uint64_t samples = 0;
    std::uint64_t copies = 0;
    double eps0 = 0;
    double delta = 0;
};

/// Estimate of <phi_j| rho |phi_k>.
MatrixElementEstimate dfe_matrix_element(const StateOracle& oracle, const CVector& phi_j,
                                         const CVector& phi_k, double eps0, double delta_jk,
                                         Rng& rng, DfeMode mode = DfeMode::sampled);

struct ElementRecord {
    std::size_t j = 0;
    std::size_t k = 0;
    MatrixElementEstimate estimate;
};

struct FidelityEstimate {
    double value = 0;          // truncated to <= 1
    double untruncated = 0;
    double epsilon = 0;
    double delta = 0;
    std::uint64_t copies_used = 0;
    double matrix_element_error = 0;  // eps0
    double element_failure_probability = 0;
    std::size_t rank = 0;
    std::vector<ElementRecord> elements;
};

/// eps0 = (eps / (2 r^{3/4}))^2 / 2.
double per_element_error(double eps, std::size_t r);
/// 2 delta / (r^2 + r).
double per_element_failure(double delta, std::size_t r);

/// Upper bound on expected copies for the whole protocol:
///   r(r+1)/2 * (samples + 1 + 2 d ln(2/delta_jk) / eps0^2).
double dfe_copy_budget(std::size_t d, std::size_t r, double eps, double delta);

/// Fidelity estimate from estimated matrix elements g_hat (r x r, Hermitian
/// completion already applied) in the eigenbasis of rho_hat with eigenvalues
/// `lambdas`: builds G_hat = sqrt(l_j l_k) g_jk, takes the positive part, and
/// returns [Tr sqrt(G_hat^+)]^2 (not truncated).
double fidelity_from_elements(const RVector& lambdas, const Matrix& g_hat);

/// G = sum sqrt(l_j l_k) g_jk |j><k| in the r-dimensional eigenbasis.
Matrix assemble_g(const RVector& lambdas, const Matrix& g);

/// Tr sqrt([H]_+).
double trace_sqrt_positive_part(const Matrix& h);

/// Spectral data of rho_hat restricted to eigenvalues above `cutoff`
/// (descending order).
struct LowRankSpectrum {
    RVector values;
    Matrix vectors;  // d x r
};
LowRankSpectrum low_rank_spectrum(const DensityMatrix& rho_hat, double cutoff = 1e-10);

/// Direct fidelity estimation between the oracle's state and a rank-r estimate.
FidelityEstimate certify_fidelity(const StateOracle& oracle, const DensityMatrix& rho_hat,
                                  double eps, double delta, Rng& rng,
                                  DfeMode mode = DfeMode::sampled);

}  // namespace cstomo
