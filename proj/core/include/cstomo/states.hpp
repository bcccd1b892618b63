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

#include <optional>

#include "cstomo/pauli.hpp"
#include "cstomo/random.hpp"
#include "cstomo/types.hpp"

namespace cstomo {

/// Dense d x d Hermitian matrix on n qubits (d = 2^n) with physicality flags.
///
/// Construction always verifies Hermiticity (||A - A^dagger||_F <= 1e-10 d) and
/// stores the exactly-Hermitian part. Positivity is checked on request and
/// remembered. The trace is not forced to one: estimators may produce
/// subnormalized matrices that are renormalized later.
class DensityMatrix {
public:
    enum class Check { hermitian, psd };

    explicit DensityMatrix(Matrix entries, Check check = Check::hermitian);

    static DensityMatrix zero(int n);
    static DensityMatrix maximally_mixed(int n);
    /// |psi><psi| / <psi|psi>.
    static DensityMatrix pure(const CVector& psi);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& matrix() const { return entries_; }

    bool hermitian_checked() const { return true; }
    bool psd_checked() const { return psd_checked_; }
    double trace() const { return trace_; }

    /// Runs the PSD check (min eigenvalue >= -1e-9); throws NotPhysical on failure.
    const DensityMatrix& require_psd() const;
    bool is_psd(double tol = 1e-9) const;

    /// Eigenvalues, ascending.
    RVector eigenvalues() const;
    double purity() const;

    DensityMatrix scaled(double factor) const;

private:
    int n_;
    Matrix entries_;
    double trace_;
    mutable bool psd_checked_ = false;
};

double pauli_expectation(const PauliString& p, const DensityMatrix& rho);

/// Which compact group conjugates the reference projector.
enum class RotationGroup { special_orthogonal, unitary };

const char* to_string(RotationGroup g);
RotationGroup rotation_group_from_string(const std::string& s);

/// Haar-random unitary via QR of a complex Ginibre matrix with the phases of
/// diag(R) divided out.
Matrix haar_unitary(std::size_t d, Rng& rng);
/// Haar-random element of SO(d) (real QR with sign correction, det forced to +1).
Matrix haar_special_orthogonal(std::size_t d, Rng& rng);

/// Normalized complex Gaussian vector.
CVector haar_random_vector(std::size_t d, Rng& rng);

DensityMatrix haar_random_pure(int n, Rng& rng);

/// Random rank-k mixed state from the induced (Ginibre) measure.
DensityMatrix random_mixed_state(int n, std::size_t rank, Rng& rng);

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE-like), unnormalized.
Matrix random_hermitian(std::size_t d, Rng& rng);

/// Applies gamma * 1/2 + (1 - gamma) rho to every qubit in turn.
DensityMatrix depolarize_local(const DensityMatrix& rho, double gamma);

/// Squared fidelity [Tr sqrt(sqrt(sigma) rho sqrt(sigma))]^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// (1/2) ||rho - sigma||_tr.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct RankTruncation {
    DensityMatrix truncated;
    double residual_trace_norm;
};

/// Best rank-r approximation by the r largest eigenvalues. Among equal
/// eigenvalues the ones later in the solver's ascending order are kept.
RankTruncation truncate_rank(const DensityMatrix& rho, std::size_t r);

/// (1/r) O P_r O^dagger for a Haar-random O from `group`, P_r the projector
/// onto the first r basis vectors.
DensityMatrix random_rank_r_projection(int n, std::size_t r, Rng& rng,
                                       RotationGroup group = RotationGroup::special_orthogonal);

}  // namespace cstomo
