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


#include "cstomo/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Dense>

#include "cstomo/linalg.hpp"

namespace cstomo {

namespace {

int qubits_for_dim(Eigen::Index d) {
    if (d < 2 || !std::has_single_bit(static_cast<std::uint64_t>(d)))
        throw DimensionMismatch("density matrix dimension must be a power of two >= 2, got " +
                                std::to_string(d));
    return std::countr_zero(static_cast<std::uint64_t>(d));
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
    if (a.dim() != b.dim())
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()) + " differ");
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries, Check check) {
    if (entries.rows() != entries.cols()) throw DimensionMismatch("density matrix must be square");
    n_ = qubits_for_dim(entries.rows());
    const double d = static_cast<double>(entries.rows());
    const double asym = (entries - entries.adjoint()).norm();
    if (asym > 1e-10 * d)
        throw NotPhysical("matrix is not Hermitian: ||A - A^dagger||_F = " + std::to_string(asym));
    entries_ = linalg::hermitian_part(entries);
    trace_ = entries_.trace().real();
    if (check == Check::psd) require_psd();
}

DensityMatrix DensityMatrix::zero(int n) {
    const auto d = static_cast<Eigen::Index>(dimension_of(n));
    return DensityMatrix(Matrix::Zero(d, d));
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    const auto d = static_cast<Eigen::Index>(dimension_of(n));
    DensityMatrix out(Matrix::Identity(d, d) / static_cast<double>(d));
    out.psd_checked_ = true;
    return out;
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw InvalidArgument("pure: zero vector");
    CVector v = psi / norm;
    DensityMatrix out(v * v.adjoint());
    out.psd_checked_ = true;
    return out;
}

const DensityMatrix& DensityMatrix::require_psd() const {
    if (!psd_checked_) {
        RVector ev = eigenvalues();
        if (ev(0) < -1e-9)
            throw NotPhysical("matrix is not positive semidefinite: min eigenvalue " +
                              std::to_string(ev(0)));
        psd_checked_ = true;
    }
    return *this;
}

bool DensityMatrix::is_psd(double tol) const { return eigenvalues()(0) >= -tol; }

RVector DensityMatrix::eigenvalues() const { return linalg::eigvalsh(entries_); }

double DensityMatrix::purity() const { return entries_.squaredNorm(); }

DensityMatrix DensityMatrix::scaled(double factor) const {
    DensityMatrix out(entries_ * factor);
    out.psd_checked_ = psd_checked_ && factor >= 0;
    return out;
}

double pauli_expectation(const PauliString& p, const DensityMatrix& rho) {
    return pauli_expectation(p, rho.matrix());
}

const char* to_string(RotationGroup g) {
    return g == RotationGroup::unitary ? "unitary" : "special_orthogonal";
}

RotationGroup rotation_group_from_string(const std::string& s) {
    if (s == "unitary" || s == "U") return RotationGroup::unitary;
    if (s == "special_orthogonal" || s == "SO") return RotationGroup::special_orthogonal;
    throw InvalidArgument("unknown rotation group '" + s + "'");
}

Matrix haar_unitary(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const complex rjj = r(j, j);
        const double a = std::abs(rjj);
        q.col(j) *= (a > 0 ? rjj / a : complex(1, 0));
    }
    return q;
}

Matrix haar_special_orthogonal(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd& packed = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j)
        if (packed(j, j) < 0) q.col(j) *= -1.0;
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q.cast<complex>();
}

CVector haar_random_vector(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex(normal(rng), normal(rng));
    return v / v.norm();
}

DensityMatrix haar_random_pure(int n, Rng& rng) {
    return DensityMatrix::pure(haar_random_vector(dimension_of(n), rng));
}

DensityMatrix random_mixed_state(int n, std::size_t rank, Rng& rng) {
    const std::size_t d = dimension_of(n);
    if (rank < 1 || rank > d) throw InvalidArgument("random_mixed_state: rank out of range");
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rank));
    for (Eigen::Index j = 0; j < g.cols(); ++j)
        for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = complex(normal(rng), normal(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    DensityMatrix out(rho, DensityMatrix::Check::psd);
    return out;
}

Matrix random_hermitian(std::size_t d, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = complex(normal(rng), normal(rng));
    return linalg::hermitian_part(g);
}

DensityMatrix depolarize_local(const DensityMatrix& rho, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw InvalidArgument("depolarizing strength must lie in [0, 1], got " + std::to_string(gamma));
    Matrix cur = rho.matrix();
    const auto d = static_cast<Eigen::Index>(rho.dim());
    for (int q = 0; q < rho.num_qubits(); ++q) {
        const Eigen::Index bit = Eigen::Index{1} << q;
        Matrix next(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) {
                complex v = (1.0 - gamma) * cur(i, j);
                if ((i & bit) == (j & bit)) v += 0.5 * gamma * (cur(i, j) + cur(i ^ bit, j ^ bit));
                next(i, j) = v;
            }
        }
        cur = std::move(next);
    }
    DensityMatrix out(cur);
    return out;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma, "fidelity");
    rho.require_psd();
    sigma.require_psd();
    const Matrix root_sigma = linalg::sqrt_psd(sigma.matrix());
    const Matrix g = linalg::hermitian_part(root_sigma * rho.matrix() * root_sigma);
    const RVector ev = linalg::eigvalsh(g);
    double tr_sqrt = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 1e-12) tr_sqrt += std::sqrt(ev(i));
    return tr_sqrt * tr_sqrt;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma, "trace_distance");
    return 0.5 * linalg::trace_norm(rho.matrix() - sigma.matrix());
}

RankTruncation truncate_rank(const DensityMatrix& rho, std::size_t r) {
    const std::size_t d = rho.dim();
    if (r < 1 || r > d)
        throw InvalidArgument("truncate_rank: r must be in [1, " + std::to_string(d) + "]");
    const auto eig = linalg::eigh(rho.matrix());
    const auto n = static_cast<Eigen::Index>(d);
    const auto keep = static_cast<Eigen::Index>(r);
    const Matrix v = eig.vectors.rightCols(keep);
    const RVector lam = eig.values.tail(keep);
    Matrix kept = v * lam.asDiagonal() * v.adjoint();
    const double residual = eig.values.head(n - keep).cwiseAbs().sum();
    return {DensityMatrix(kept), residual};
}

DensityMatrix random_rank_r_projection(int n, std::size_t r, Rng& rng, RotationGroup group) {
    const std::size_t d = dimension_of(n);
    if (r < 1 || r > d)
        throw InvalidArgument("random_rank_r_projection: r must be in [1, " + std::to_string(d) + "]");
    const Matrix o = group == RotationGroup::unitary ? haar_unitary(d, rng)
                                                     : haar_special_orthogonal(d, rng);
    const Matrix cols = o.leftCols(static_cast<Eigen::Index>(r));
    Matrix rho = cols * cols.adjoint() / static_cast<double>(r);
    DensityMatrix out(rho);
    return out;
}

}  // namespace cstomo
