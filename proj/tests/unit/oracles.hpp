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

// Slow, independent reference computations used to check the library.

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <string>

#include "cstomo/types.hpp"

namespace oracle {

using cstomo::complex;
using cstomo::Matrix;
using cstomo::RVector;

inline Matrix sigma(char c) {
    const complex i1{0, 1};
    Matrix s(2, 2);
    switch (c) {
        case 'X': s << 0, 1, 1, 0; break;
        case 'Y': s << 0, -i1, i1, 0; break;
        case 'Z': s << 1, 0, 0, -1; break;
        default: s << 1, 0, 0, 1; break;
    }
    return s;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Dense tensor product of the letters, leftmost letter first.
inline Matrix pauli(const std::string& letters) {
    Matrix out = Matrix::Ones(1, 1);
    for (char c : letters) out = kron(out, sigma(c));
    return out;
}

inline std::string letters_of(int n, std::uint64_t index) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (int q = n - 1; q >= 0; --q) {
        s[static_cast<std::size_t>(q)] = "IXYZ"[index % 4];
        index /= 4;
    }
    return s;
}

inline complex trace_product(const Matrix& a, const Matrix& b) { return (a * b).trace(); }

inline RVector eigenvalues(const Matrix& h) {
    Eigen::ComplexEigenSolver<Matrix> es(h);
    RVector v = es.eigenvalues().real();
    std::sort(v.data(), v.data() + v.size());
    return v;
}

inline double trace_norm(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

inline double trace_distance(const Matrix& a, const Matrix& b) { return 0.5 * trace_norm(a - b); }

/// Matrix square root of a PSD matrix through the general eigensolver.
inline Matrix sqrtm(const Matrix& a) {
    Eigen::ComplexEigenSolver<Matrix> es(a);
    Matrix v = es.eigenvectors();
    Eigen::VectorXcd l = es.eigenvalues();
    for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = std::sqrt(std::max(0.0, l(i).real()));
    return v * l.asDiagonal() * v.inverse();
}

/// [Tr |sqrt(rho) sqrt(sigma)|]^2 via singular values.
inline double fidelity(const Matrix& rho, const Matrix& sigma) {
    const double f = trace_norm(sqrtm(rho) * sqrtm(sigma));
    return f * f;
}

}  // namespace oracle
