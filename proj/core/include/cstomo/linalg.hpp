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

#include <functional>

#include "cstomo/types.hpp"

namespace cstomo::linalg {

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascending.
struct HermitianEigen {
    RVector values;
    Matrix vectors;
};

HermitianEigen eigh(const Matrix& a);
RVector eigvalsh(const Matrix& a);

Matrix hermitian_part(const Matrix& a);

/// V f(Lambda) V^dagger for Hermitian a.
Matrix apply_spectral(const Matrix& a, const std::function<double(double)>& f);
Matrix apply_spectral(const HermitianEigen& eig, const std::function<double(double)>& f);

/// Positive part [a]_+.
Matrix psd_part(const Matrix& a);

/// Spectral norm of a Hermitian matrix (largest |eigenvalue|).
double operator_norm(const Matrix& a);

/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const Matrix& a);

/// Principal square root of a PSD matrix. Eigenvalues below `clamp` are set to 0.
Matrix sqrt_psd(const Matrix& a, double clamp = 1e-12);

double frobenius(const Matrix& a);

/// Real Hilbert-Schmidt inner product Re Tr(a^dagger b).
double hs_inner(const Matrix& a, const Matrix& b);

}  // namespace cstomo::linalg
