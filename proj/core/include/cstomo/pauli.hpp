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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cstomo/random.hpp"
#include "cstomo/types.hpp"

namespace cstomo {

/// Single-qubit Pauli letter. The numeric value is the base-4 digit used in
/// the canonical index: I=0, X=1, Y=2, Z=3.
enum class PauliCode : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliCode c);

/// An n-qubit Pauli word sigma_1 (x) ... (x) sigma_n.
///
/// The canonical index is base-4 big-endian over qubits: the leftmost letter
/// is the most significant digit, and acts on the most significant bit of the
/// computational-basis index (standard Kronecker ordering). So "XZ" has index
/// 1*4 + 3 = 7 and the identity string is always index 0.
class PauliString {
public:
    PauliString(int n, std::uint64_t index);

    static PauliString identity(int n) { return {n, 0}; }
    /// Parses letters from {I, X, Y, Z}; '_' is accepted as I.
    static PauliString from_letters(std::string_view letters);
    static PauliString from_codes(std::span<const PauliCode> codes);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    std::uint64_t index() const { return index_; }
    bool is_identity() const { return index_ == 0; }

    PauliCode code(int qubit) const;
    std::vector<PauliCode> codes() const;
    std::string letters() const;

    /// Bitmask (over basis-index bits) of qubits carrying X or Y.
    std::uint64_t flip_mask() const;
    std::uint64_t y_mask() const;
    std::uint64_t z_mask() const;  // Z or Y
    int y_count() const;

    /// Tensor product this (x) other, with `this` on the leading qubits.
    PauliString tensor(const PauliString& other) const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    int n_;
    std::uint64_t index_;
};

/// Number of n-qubit Pauli strings, 4^n.
std::uint64_t pauli_count(int n);

/// Sparse form of a Pauli matrix: row k has a single nonzero entry, at column
/// k ^ flip_mask, with value i^phase_power[k].
struct PauliAction {
    std::uint64_t flip_mask = 0;
    std::vector<std::uint8_t> phase_power;

    std::size_t dim() const { return phase_power.size(); }
    std::size_t column(std::size_t row) const { return row ^ flip_mask; }
    complex phase(std::size_t row) const;
    std::vector<std::size_t> permutation() const;
    std::vector<complex> phases() const;
    Matrix to_dense() const;
};

/// O(d) permutation-plus-phase representation of p.
PauliAction pauli_action(const PauliString& p);

/// Tr(P X) using the sparse action; returns the full complex value.
complex pauli_trace(const PauliAction& action, const Matrix& x);

/// Tr(P rho) for Hermitian rho. Throws DimensionMismatch on a shape mismatch
/// and NotPhysical if the imaginary part exceeds 1e-9.
double pauli_expectation(const PauliString& p, const Matrix& rho);
double pauli_expectation(const PauliAction& action, const Matrix& rho);

/// out += coeff * P, touching only the d nonzeros of P.
void add_scaled_pauli(const PauliAction& action, complex coeff, Matrix& out);

/// P |v>.
CVector apply_pauli(const PauliAction& action, const CVector& v);

/// <a| P |b>.
complex pauli_matrix_element(const PauliAction& action, const CVector& a, const CVector& b);

/// Uniform sample of m Pauli strings over all 4^n (identity included unless
/// exclude_identity). Without replacement the strings are distinct and
/// m <= 4^n (or 4^n - 1 when the identity is excluded) is required.
std::vector<PauliString> sample_paulis(int n, std::size_t m, bool with_replacement, Rng& rng,
                                       bool exclude_identity = false);

/// All 4^n strings in canonical index order.
std::vector<PauliString> all_paulis(int n);

}  // namespace cstomo
