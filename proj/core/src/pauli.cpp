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


#include "cstomo/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace cstomo {

namespace {

constexpr int kMaxPauliQubits = 30;

// i^k for k in 0..3.
constexpr complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

char to_char(PauliCode c) { return "IXYZ"[static_cast<int>(c)]; }

std::uint64_t pauli_count(int n) {
    if (n < 1 || n > kMaxPauliQubits)
        throw InvalidArgument("qubit count out of range: " + std::to_string(n));
    return std::uint64_t{1} << (2 * n);
}

PauliString::PauliString(int n, std::uint64_t index) : n_(n), index_(index) {
    if (index >= pauli_count(n))
        throw InvalidArgument("Pauli index " + std::to_string(index) + " out of range for " +
                              std::to_string(n) + " qubits");
}

PauliString PauliString::from_letters(std::string_view letters) {
    if (letters.empty()) throw InvalidArgument("empty Pauli string");
    std::uint64_t index = 0;
    for (char ch : letters) {
        std::uint64_t digit;
        switch (ch) {
            case 'I': case 'i': case '_': digit = 0; break;
            case 'X': case 'x': digit = 1; break;
            case 'Y': case 'y': digit = 2; break;
            case 'Z': case 'z': digit = 3; break;
            default: throw InvalidArgument(std::string("bad Pauli letter '") + ch + "'");
        }
        index = index * 4 + digit;
    }
    return {static_cast<int>(letters.size()), index};
}

PauliString PauliString::from_codes(std::span<const PauliCode> codes) {
    if (codes.empty()) throw InvalidArgument("empty Pauli string");
    std::uint64_t index = 0;
    for (PauliCode c : codes) index = index * 4 + static_cast<std::uint64_t>(c);
    return {static_cast<int>(codes.size()), index};
}

PauliCode PauliString::code(int qubit) const {
    if (qubit < 0 || qubit >= n_) throw InvalidArgument("qubit out of range");
    int shift = 2 * (n_ - 1 - qubit);
    return static_cast<PauliCode>((index_ >> shift) & 3U);
}

std::vector<PauliCode> PauliString::codes() const {
    std::vector<PauliCode> out(n_);
    for (int q = 0; q < n_; ++q) out[q] = code(q);
    return out;
}

std::string PauliString::letters() const {
    std::string s(n_, 'I');
    for (int q = 0; q < n_; ++q) s[q] = to_char(code(q));
    return s;
}

std::uint64_t PauliString::flip_mask() const {
    std::uint64_t mask = 0;
    for (int q = 0; q < n_; ++q) {
        PauliCode c = code(q);
        if (c == PauliCode::X || c == PauliCode::Y) mask |= std::uint64_t{1} << (n_ - 1 - q);
    }
    return mask;
}

std::uint64_t PauliString::y_mask() const {
    std::uint64_t mask = 0;
    for (int q = 0; q < n_; ++q)
        if (code(q) == PauliCode::Y) mask |= std::uint64_t{1} << (n_ - 1 - q);
    return mask;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t mask = 0;
    for (int q = 0; q < n_; ++q)
        if (code(q) == PauliCode::Z) mask |= std::uint64_t{1} << (n_ - 1 - q);
    return mask;
}

int PauliString::y_count() const { return std::popcount(y_mask()); }

PauliString PauliString::tensor(const PauliString& other) const {
    int n = n_ + other.n_;
    return {n, (index_ << (2 * other.n_)) | other.index_};
}

complex PauliAction::phase(std::size_t row) const { return kIPow[phase_power[row] & 3U]; }

std::vector<std::size_t> PauliAction::permutation() const {
    std::vector<std::size_t> perm(dim());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = column(k);
    return perm;
}

std::vector<complex> PauliAction::phases() const {
    std::vector<complex> out(dim());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = phase(k);
    return out;
}

Matrix PauliAction::to_dense() const {
    const auto d = static_cast<Eigen::Index>(dim());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k)
        m(k, static_cast<Eigen::Index>(column(k))) = phase(k);
    return m;
}

PauliAction pauli_action(const PauliString& p) {
    // sigma^y = [[0, -i], [i, 0]]: row bit 0 gives -i, row bit 1 gives +i.
    // sigma^z = diag(1, -1): row bit 1 gives -1.
    const std::size_t d = p.dim();
    const std::uint64_t y = p.y_mask();
    const std::uint64_t z = p.z_mask();
    PauliAction a;
    a.flip_mask = p.flip_mask();
    a.phase_power.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        const int y1 = std::popcount(y & k);
        const int y0 = std::popcount(y & ~k);
        const int z1 = std::popcount(z & k);
        a.phase_power[k] = static_cast<std::uint8_t>((3 * y0 + y1 + 2 * z1) & 3);
    }
    return a;
}

complex pauli_trace(const PauliAction& action, const Matrix& x) {
    const std::size_t d = action.dim();
    if (static_cast<std::size_t>(x.rows()) != d || static_cast<std::size_t>(x.cols()) != d)
        throw DimensionMismatch("Pauli of dimension " + std::to_string(d) +
                                " applied to a " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + " matrix");
    // Tr(P X) = sum_k P[k, s(k)] X[s(k), k]
    complex acc{0, 0};
    for (std::size_t k = 0; k < d; ++k) {
        const auto col = static_cast<Eigen::Index>(action.column(k));
        acc += action.phase(k) * x(col, static_cast<Eigen::Index>(k));
    }
    return acc;
}

double pauli_expectation(const PauliAction& action, const Matrix& rho) {
    complex v = pauli_trace(action, rho);
    if (std::abs(v.imag()) > 1e-9)
        throw NotPhysical("Tr(P rho) has imaginary part " + std::to_string(v.imag()) +
                          "; input is not Hermitian");
    return v.real();
}

double pauli_expectation(const PauliString& p, const Matrix& rho) {
    return pauli_expectation(pauli_action(p), rho);
}

void add_scaled_pauli(const PauliAction& action, complex coeff, Matrix& out) {
    const std::size_t d = action.dim();
    if (static_cast<std::size_t>(out.rows()) != d || static_cast<std::size_t>(out.cols()) != d)
        throw DimensionMismatch("add_scaled_pauli: shape mismatch");
    for (std::size_t k = 0; k < d; ++k)
        out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(action.column(k))) +=
            coeff * action.phase(k);
}

CVector apply_pauli(const PauliAction& action, const CVector& v) {
    const std::size_t d = action.dim();
    if (static_cast<std::size_t>(v.size()) != d) throw DimensionMismatch("apply_pauli: size mismatch");
    CVector out(v.size());
    for (std::size_t k = 0; k < d; ++k)
        out(static_cast<Eigen::Index>(k)) =
            action.phase(k) * v(static_cast<Eigen::Index>(action.column(k)));
    return out;
}

complex pauli_matrix_element(const PauliAction& action, const CVector& a, const CVector& b) {
    return a.dot(apply_pauli(action, b));  // Eigen's dot conjugates the left operand
}

std::vector<PauliString> sample_paulis(int n, std::size_t m, bool with_replacement, Rng& rng,
                                       bool exclude_identity) {
    if (m < 1) throw InvalidArgument("sample_paulis: m must be >= 1");
    const std::uint64_t total = pauli_count(n);
    const std::uint64_t lo = exclude_identity ? 1 : 0;
    const std::uint64_t available = total - lo;
    if (available == 0) throw InvalidArgument("sample_paulis: no Pauli strings to sample");
    std::uniform_int_distribution<std::uint64_t> uniform(lo, total - 1);

    std::vector<PauliString> out;
    out.reserve(m);
    if (with_replacement) {
        for (std::size_t i = 0; i < m; ++i) out.emplace_back(n, uniform(rng));
        return out;
    }
    if (m > available)
        throw InvalidArgument("sample_paulis: cannot draw " + std::to_string(m) +
                              " distinct strings from " + std::to_string(available));
    if (available <= (std::uint64_t{1} << 22)) {
        // Partial Fisher-Yates over the candidate indices.
        std::vector<std::uint64_t> pool(available);
        std::iota(pool.begin(), pool.end(), lo);
        for (std::size_t i = 0; i < m; ++i) {
            std::uniform_int_distribution<std::uint64_t> pick(i, available - 1);
            std::swap(pool[i], pool[pick(rng)]);
            out.emplace_back(n, pool[i]);
        }
        return out;
    }
    std::unordered_set<std::uint64_t> seen;
    while (out.size() < m) {
        std::uint64_t idx = uniform(rng);
        if (seen.insert(idx).second) out.emplace_back(n, idx);
    }
    return out;
}

std::vector<PauliString> all_paulis(int n) {
    const std::uint64_t total = pauli_count(n);
    std::vector<PauliString> out;
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) out.emplace_back(n, i);
    return out;
}

}  // namespace cstomo
