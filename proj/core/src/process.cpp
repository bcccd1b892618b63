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


#include "cstomo/process.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "cstomo/linalg.hpp"

namespace cstomo {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

void require_square(const Matrix& k, std::size_t d) {
    if (static_cast<std::size_t>(k.rows()) != d || static_cast<std::size_t>(k.cols()) != d)
        throw DimensionMismatch("Kraus operator has shape " + std::to_string(k.rows()) + "x" +
                                std::to_string(k.cols()) + ", expected " + std::to_string(d));
}

}  // namespace

QuantumChannel::QuantumChannel(int n, std::vector<Matrix> kraus) : n_(n), kraus_(std::move(kraus)) {
    dimension_of(n);
    for (const auto& k : kraus_) require_square(k, dim());
}

QuantumChannel QuantumChannel::identity(int n) {
    const auto d = static_cast<Eigen::Index>(dimension_of(n));
    return {n, {Matrix::Identity(d, d)}};
}

QuantumChannel QuantumChannel::fully_depolarizing(int n) {
    const double d = static_cast<double>(dimension_of(n));
    std::vector<Matrix> kraus;
    for (const auto& p : all_paulis(n)) kraus.push_back(pauli_action(p).to_dense() / d);
    return {n, std::move(kraus)};
}

QuantumChannel QuantumChannel::unitary(const Matrix& u) {
    const auto d = static_cast<std::size_t>(u.rows());
    if (d < 2 || (d & (d - 1)) != 0 || u.cols() != u.rows())
        throw DimensionMismatch("unitary channel needs a square 2^n matrix");
    const Matrix check = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    if (check.norm() > 1e-9) throw InvalidArgument("unitary channel: matrix is not unitary");
    return {std::countr_zero(d), {u}};
}

QuantumChannel QuantumChannel::local_depolarizing(int n, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("depolarizing gamma must lie in [0, 1]");
    const double keep = std::sqrt(1.0 - 0.75 * gamma);
    const double flip = std::sqrt(0.25 * gamma);
    std::vector<Matrix> kraus;
    for (const auto& p : all_paulis(n)) {
        double c = 1.0;
        for (int q = 0; q < n; ++q) c *= p.code(q) == PauliCode::I ? keep : flip;
        if (c != 0.0) kraus.push_back(c * pauli_action(p).to_dense());
    }
    return {n, std::move(kraus)};
}

Matrix QuantumChannel::apply(const Matrix& x) const {
    require_square(x, dim());
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
    return out;
}

double QuantumChannel::tp_deviation() const {
    const auto d = static_cast<Eigen::Index>(dim());
    Matrix s = -Matrix::Identity(d, d);
    for (const auto& k : kraus_) s.noalias() += k.adjoint() * k;
    return linalg::operator_norm(linalg::hermitian_part(s));
}

std::size_t QuantumChannel::kraus_rank() const {
    if (kraus_.empty()) return 0;
    const auto r = static_cast<Eigen::Index>(kraus_.size());
    Matrix gram(r, r);
    for (Eigen::Index a = 0; a < r; ++a)
        for (Eigen::Index b = 0; b < r; ++b)
            gram(a, b) = (kraus_[a].adjoint() * kraus_[b]).trace();
    const RVector ev = linalg::eigvalsh(gram);
    const double top = ev.maxCoeff();
    if (top <= 0) return 0;
    return static_cast<std::size_t>((ev.array() > 1e-9 * top).count());
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
    if (second.num_qubits() != first.num_qubits())
        throw DimensionMismatch("compose: channels act on different qubit counts");
    std::vector<Matrix> kraus;
    kraus.reserve(second.kraus().size() * first.kraus().size());
    for (const auto& a : second.kraus())
        for (const auto& b : first.kraus()) kraus.push_back(a * b);
    return {first.num_qubits(), std::move(kraus)};
}

QuantumChannel random_unitary_channel(int n, Rng& rng) {
    return QuantumChannel::unitary(haar_unitary(dimension_of(n), rng));
}

QuantumChannel random_channel(int n, std::size_t kraus_count, Rng& rng) {
    const std::size_t d = dimension_of(n);
    if (kraus_count < 1 || kraus_count > d * d)
        throw InvalidArgument("random_channel: Kraus count must lie in [1, d^2]");
    const auto di = static_cast<Eigen::Index>(d);
    const Matrix v = haar_unitary(d * kraus_count, rng).leftCols(di);
    std::vector<Matrix> kraus;
    for (std::size_t a = 0; a < kraus_count; ++a)
        kraus.push_back(v.block(static_cast<Eigen::Index>(a) * di, 0, di, di));
    return {n, std::move(kraus)};
}

DensityMatrix jamiolkowski_state(const QuantumChannel& channel) {
    const auto d = static_cast<Eigen::Index>(channel.dim());
    Matrix rho = Matrix::Zero(d * d, d * d);
    for (const auto& k : channel.kraus()) {
        CVector v(d * d);
        for (Eigen::Index a = 0; a < d; ++a)
            for (Eigen::Index b = 0; b < d; ++b) v(a * d + b) = k(a, b);
        rho.noalias() += v * v.adjoint();
    }
    rho /= static_cast<double>(d);
    return DensityMatrix(linalg::hermitian_part(rho));
}

QuantumChannel channel_from_jamiolkowski(const DensityMatrix& rho, double cutoff) {
    const int nn = rho.num_qubits();
    if (nn % 2 != 0) throw DimensionMismatch("Jamiolkowski state must live on an even qubit count");
    const int n = nn / 2;
    const auto d = static_cast<Eigen::Index>(dimension_of(n));
    const auto eig = linalg::eigh(rho.matrix());
    std::vector<Matrix> kraus;
    for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
        const double mu = eig.values(i);
        if (mu <= cutoff) continue;
        Matrix k(d, d);
        for (Eigen::Index a = 0; a < d; ++a)
            for (Eigen::Index b = 0; b < d; ++b) k(a, b) = eig.vectors(a * d + b, i);
        kraus.push_back(std::sqrt(static_cast<double>(d) * mu) * k);
    }
    return {n, std::move(kraus)};
}

int conjugation_sign(const PauliString& p) { return p.y_count() % 2 == 0 ? 1 : -1; }

double channel_pauli_expectation(const QuantumChannel& channel, const PauliString& p_a,
                                 const PauliString& p_b) {
    if (p_a.num_qubits() != channel.num_qubits() || p_b.num_qubits() != channel.num_qubits())
        throw DimensionMismatch("channel_pauli_expectation: qubit count mismatch");
    const Matrix conj_b =
        static_cast<double>(conjugation_sign(p_b)) * pauli_action(p_b).to_dense();
    const complex t = pauli_trace(pauli_action(p_a), channel.apply(conj_b));
    return t.real() / static_cast<double>(channel.dim());
}

double jamiolkowski_pauli_expectation(const QuantumChannel& channel, const PauliString& p_a,
                                      const PauliString& p_b) {
    if (p_a.num_qubits() != channel.num_qubits() || p_b.num_qubits() != channel.num_qubits())
        throw DimensionMismatch("jamiolkowski_pauli_expectation: qubit count mismatch");
    return pauli_expectation(p_a.tensor(p_b), jamiolkowski_state(channel));
}

std::pair<PauliString, PauliString> split_setting(const PauliString& p) {
    const int nn = p.num_qubits();
    if (nn % 2 != 0) throw DimensionMismatch("process setting must have an even qubit count");
    const int n = nn / 2;
    const std::uint64_t base = pauli_count(n);
    return {PauliString(n, p.index() / base), PauliString(n, p.index() % base)};
}

MeasurementPlan process_plan(int n, const std::vector<std::pair<PauliString, PauliString>>& pairs) {
    std::vector<PauliString> paulis;
    paulis.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        if (a.num_qubits() != n || b.num_qubits() != n)
            throw DimensionMismatch("process_plan: Pauli on the wrong qubit count");
        paulis.push_back(a.tensor(b));
    }
    return {2 * n, std::move(paulis)};
}

InputBasis input_basis(const PauliString& p_b) {
    const double h = 1.0 / std::sqrt(2.0);
    const complex i1{0, 1};
    Matrix basis = Matrix::Ones(1, 1);
    std::vector<int> lambdas{1};
    for (int q = 0; q < p_b.num_qubits(); ++q) {
        Matrix local(2, 2);
        int l0 = 1, l1 = -1;
        switch (p_b.code(q)) {
            case PauliCode::I:
                local << 1, 0, 0, 1;
                l1 = 1;
                break;
            case PauliCode::Z: local << 1, 0, 0, 1; break;
            case PauliCode::X: local << h, h, h, -h; break;
            case PauliCode::Y: local << h, h, -i1 * h, i1 * h; break;
        }
        basis = kron(basis, local);
        std::vector<int> next;
        next.reserve(lambdas.size() * 2);
        for (int l : lambdas) {
            next.push_back(l * l0);
            next.push_back(l * l1);
        }
        lambdas = std::move(next);
    }
    return {basis, lambdas};
}

MeasurementRecord simulate_process_measurements(const QuantumChannel& channel,
                                                const MeasurementPlan& plan, std::uint64_t copies,
                                                Rng& rng) {
    if (plan.num_qubits() != 2 * channel.num_qubits())
        throw DimensionMismatch("process plan does not match the channel");
    const std::size_t m = plan.size();
    MeasurementRecord rec;
    if (copies == kExactCopies) {
        rec.y.resize(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            const auto [a, b] = split_setting(plan.paulis()[i]);
            rec.y(static_cast<Eigen::Index>(i)) =
                plan.normalization() * channel_pauli_expectation(channel, a, b);
        }
        rec.shots.assign(m, 0);
        rec.plus_counts.assign(m, 0);
        rec.exact = true;
        return rec;
    }
    if (copies < m)
        throw InfeasiblePlan("simulate_process_measurements: " + std::to_string(copies) +
                             " copies cannot cover " + std::to_string(m) + " settings");
    const auto per_setting = static_cast<std::int64_t>(copies / m);
    const std::uint64_t base = rng();
    const std::size_t d = channel.dim();

    rec.shots.assign(m, per_setting);
    rec.plus_counts.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto [a, b] = split_setting(plan.paulis()[i]);
        const PauliAction act_a = pauli_action(a);
        const InputBasis in = input_basis(b);
        Rng stream = make_rng(derive_seed(base, {static_cast<std::uint64_t>(i)}));
        std::int64_t remaining = per_setting;
        std::int64_t plus = 0;
        for (std::size_t j = 0; j < d && remaining > 0; ++j) {
            std::int64_t count = remaining;
            if (j + 1 < d) {
                std::binomial_distribution<std::int64_t> pick(
                    remaining, 1.0 / static_cast<double>(d - j));
                count = pick(stream);
            }
            remaining -= count;
            if (count == 0) continue;
            const CVector phi = in.vectors.col(static_cast<Eigen::Index>(j));
            const Matrix out = channel.apply(phi * phi.adjoint());
            const double e = pauli_trace(act_a, out).real();
            std::binomial_distribution<std::int64_t> outcome(count,
                                                             std::clamp(0.5 * (1.0 + e), 0.0, 1.0));
            const std::int64_t up = outcome(stream);
            plus += in.eigenvalues[j] > 0 ? up : count - up;
        }
        rec.plus_counts[i] = plus;
    }
    rec.y = record_values(rec.shots, rec.plus_counts, plan.normalization());
    return rec;
}

ChannelReconstruction reconstruct_channel(const MeasurementPlan& plan,
                                          const MeasurementRecord& record, Estimator estimator,
                                          double weight, const SolverConfig& config) {
    if (plan.num_qubits() % 2 != 0)
        throw DimensionMismatch("process reconstruction needs a plan on 2n qubits");
    ReconstructionResult state = reconstruct(estimator, plan, record, weight, config);
    bool trivial = !(state.rho_hat.trace() > 1e-12);
    if (!trivial) state = renormalize(std::move(state));
    QuantumChannel channel = channel_from_jamiolkowski(state.rho_hat);
    trivial = trivial || channel.kraus().empty();
    const double tp = channel.tp_deviation();
    return {std::move(state), std::move(channel), tp, trivial};
}

double jamiolkowski_fidelity(const QuantumChannel& a, const QuantumChannel& b) {
    return fidelity(jamiolkowski_state(a), jamiolkowski_state(b));
}

std::size_t process_setting_count(const MeasurementPlan& plan) {
    std::set<std::uint64_t> observables;
    std::set<std::uint64_t> bases;
    for (const auto& p : plan.paulis()) {
        const auto [a, b] = split_setting(p);
        observables.insert(a.index());
        std::vector<PauliCode> codes = b.codes();
        for (auto& c : codes)
            if (c == PauliCode::I) c = PauliCode::Z;
        bases.insert(PauliString::from_codes(codes).index());
    }
    return observables.size() + bases.size();
}

}  // namespace cstomo
