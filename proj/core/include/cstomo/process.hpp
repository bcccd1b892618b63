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
#include <utility>
#include <vector>

#include "cstomo/measurement.hpp"
#include "cstomo/solvers.hpp"
#include "cstomo/states.hpp"

namespace cstomo {

/// Channel on n qubits given by Kraus operators, E(X) = sum_k K_k X K_k^dagger.
class QuantumChannel {
public:
    /// An empty Kraus list is allowed and describes the zero map.
    QuantumChannel(int n, std::vector<Matrix> kraus);

    static QuantumChannel identity(int n);
    /// X -> Tr(X) 1/d, with the d^2 Kraus operators P_i / d.
    static QuantumChannel fully_depolarizing(int n);
    static QuantumChannel unitary(const Matrix& u);
    /// gamma * 1/2 + (1 - gamma) X on every qubit.
    static QuantumChannel local_depolarizing(int n, double gamma);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }

    Matrix apply(const Matrix& x) const;

    /// ||sum K^dagger K - 1||, operator norm.
    double tp_deviation() const;
    bool trace_preserving(double tol = 1e-9) const { return tp_deviation() <= tol; }
    /// Number of linearly independent Kraus operators (rank of their Gram
    /// matrix, relative tolerance 1e-9).
    std::size_t kraus_rank() const;

private:
    int n_;
    std::vector<Matrix> kraus_;
};

/// second o first.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);

QuantumChannel random_unitary_channel(int n, Rng& rng);
/// Random trace-preserving channel with `kraus_count` Kraus operators taken
/// from a Haar-random Stinespring isometry.
QuantumChannel random_channel(int n, std::size_t kraus_count, Rng& rng);

/// (E (x) 1)(|psi0><psi0|) with |psi0> = d^{-1/2} sum_j |j>|j>, on 2n qubits
/// with the channel's output on the leading n qubits. Kraus operator K
/// contributes the vector vec(K)/sqrt(d), vec being row-major flattening.
DensityMatrix jamiolkowski_state(const QuantumChannel& channel);

/// Channel with Kraus operators sqrt(d mu_k) unvec(v_k) for the eigenpairs of
/// a Jamiolkowski-space matrix with mu_k > cutoff.
QuantumChannel channel_from_jamiolkowski(const DensityMatrix& rho, double cutoff = 1e-8);

/// Elementwise complex conjugate of P in the computational basis:
/// (-1)^{#Y} P.
int conjugation_sign(const PauliString& p);

/// (1/d) Tr(P_A E(conj(P_B))), evaluated through the Kraus operators.
double channel_pauli_expectation(const QuantumChannel& channel, const PauliString& p_a,
                                 const PauliString& p_b);

/// Same quantity read off the Jamiolkowski state, Tr((P_A (x) P_B) rho_E).
double jamiolkowski_pauli_expectation(const QuantumChannel& channel, const PauliString& p_a,
                                      const PauliString& p_b);

/// Splits a 2n-qubit setting into (P_A, P_B).
std::pair<PauliString, PauliString> split_setting(const PauliString& p);

/// Plan over P_A (x) P_B on 2n qubits; normalization sqrt(d^2/m).
MeasurementPlan process_plan(int n, const std::vector<std::pair<PauliString, PauliString>>& pairs);

/// Eigenbasis of conj(P_B) used to prepare inputs: per qubit
///   I, Z: |0>, |1>;  X: |+>, |->;  Y: |-i>, |+i>  (for conj(Y) = -Y),
/// so that conj(P_B)|phi_j> = lambda_j |phi_j>. Columns are the phi_j; basis
/// index bit q selects the second vector on qubit q.
struct InputBasis {
    Matrix vectors;
    std::vector<int> eigenvalues;
};
InputBasis input_basis(const PauliString& p_b);

/// Ancilla-free simulation: each shot draws j uniformly, prepares |phi_j>,
/// applies E, measures P_A and records lambda_j * outcome. plus_counts counts
/// records equal to +1. copies are split evenly across settings as in
/// simulate_measurements; kExactCopies gives the noiseless record.
MeasurementRecord simulate_process_measurements(const QuantumChannel& channel,
                                                const MeasurementPlan& plan, std::uint64_t copies,
                                                Rng& rng);

struct ChannelReconstruction {
    ReconstructionResult state;
    QuantumChannel channel;
    double tp_deviation = 0;
    /// True when the estimate of rho_E is zero (no Kraus operators).
    bool trivial = false;
};

/// State tomography on rho_E followed by Kraus extraction (cutoff 1e-8).
/// Trace preservation is reported, not enforced.
ChannelReconstruction reconstruct_channel(const MeasurementPlan& plan,
                                          const MeasurementRecord& record, Estimator estimator,
                                          double weight, const SolverConfig& config = {});

/// Fidelity between the Jamiolkowski states of two channels.
double jamiolkowski_fidelity(const QuantumChannel& a, const QuantumChannel& b);

/// Distinct measured observables P_A plus distinct input bases (one per
/// product eigenbasis of conj(P_B); I and Z share the computational basis).
std::size_t process_setting_count(const MeasurementPlan& plan);

}  // namespace cstomo
