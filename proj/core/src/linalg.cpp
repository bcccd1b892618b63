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


#include "cstomo/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace cstomo::linalg {

namespace {

void require_square(const Matrix& a, const char* what) {
    if (a.rows() != a.cols())
        throw DimensionMismatch(std::string(what) + ": matrix is not square");
}

}  // namespace

HermitianEigen eigh(const Matrix& a) {
    require_square(a, "eigh");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: decomposition failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector eigvalsh(const Matrix& a) {
    require_square(a, "eigvalsh");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigvalsh: decomposition failed");
    return solver.eigenvalues();
}

Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) * 0.5; }

Matrix apply_spectral(const HermitianEigen& eig, const std::function<double(double)>& f) {
    RVector mapped = eig.values.unaryExpr(f);
    return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

Matrix apply_spectral(const Matrix& a, const std::function<double(double)>& f) {
    return apply_spectral(eigh(a), f);
}

Matrix psd_part(const Matrix& a) {
    return apply_spectral(a, [](double x) { return std::max(x, 0.0); });
}

double operator_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    RVector ev = eigvalsh(a);
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double trace_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return eigvalsh(a).cwiseAbs().sum();
}

Matrix sqrt_psd(const Matrix& a, double clamp) {
    return apply_spectral(a, [clamp](double x) { return x < clamp ? 0.0 : std::sqrt(x); });
}

double frobenius(const Matrix& a) { return a.norm(); }

double hs_inner(const Matrix& a, const Matrix& b) {
    return (a.conjugate().cwiseProduct(b)).sum().real();
}

}  // namespace cstomo::linalg
