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


#include "cstomo/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "cstomo/linalg.hpp"

namespace cstomo {

MeasurementPlan::MeasurementPlan(int n, std::vector<PauliString> paulis)
    : n_(n), paulis_(std::move(paulis)) {
    dimension_of(n);
    if (paulis_.empty()) throw InvalidArgument("measurement plan needs at least one setting");
    actions_.reserve(paulis_.size());
    for (const auto& p : paulis_) {
        if (p.num_qubits() != n)
            throw DimensionMismatch("plan on " + std::to_string(n) + " qubits contains " +
                                    p.letters());
        actions_.push_back(pauli_action(p));
    }
    normalization_ = std::sqrt(static_cast<double>(dim()) / static_cast<double>(paulis_.size()));
}

MeasurementPlan MeasurementPlan::complete(int n) { return {n, all_paulis(n)}; }

MeasurementPlan MeasurementPlan::random(int n, std::size_t m, bool with_replacement, Rng& rng,
                                        bool exclude_identity) {
    MeasurementPlan plan(n, sample_paulis(n, m, with_replacement, rng, exclude_identity));
    plan.with_replacement = with_replacement;
    plan.identity_excluded = exclude_identity;
    return plan;
}

bool MeasurementPlan::all_identity() const {
    return std::all_of(paulis_.begin(), paulis_.end(),
                       [](const PauliString& p) { return p.is_identity(); });
}

double MeasurementRecord::plus_frequency(std::size_t i, double normalization) const {
    const auto idx = static_cast<Eigen::Index>(i);
    if (!exact && shots.at(i) > 0)
        return static_cast<double>(plus_counts[i]) / static_cast<double>(shots[i]);
    return std::clamp(0.5 * (1.0 + y(idx) / normalization), 0.0, 1.0);
}

std::int64_t MeasurementRecord::total_shots() const {
    std::int64_t total = 0;
    for (auto s : shots) total += s;
    return total;
}

RVector apply_sampling_operator(const MeasurementPlan& plan, const Matrix& x) {
    if (static_cast<std::size_t>(x.rows()) != plan.dim() ||
        static_cast<std::size_t>(x.cols()) != plan.dim())
        throw DimensionMismatch("sampling operator: expected " + std::to_string(plan.dim()) +
                                "x" + std::to_string(plan.dim()) + " input");
    const auto& actions = plan.actions();
    RVector out(static_cast<Eigen::Index>(actions.size()));
    for (std::size_t i = 0; i < actions.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = plan.normalization() * pauli_trace(actions[i], x).real();
    return out;
}

Matrix adjoint_sampling_operator(const MeasurementPlan& plan, const RVector& v) {
    if (static_cast<std::size_t>(v.size()) != plan.size())
        throw DimensionMismatch("adjoint sampling operator: vector has length " +
                                std::to_string(v.size()) + ", plan has " +
                                std::to_string(plan.size()) + " settings");
    const auto d = static_cast<Eigen::Index>(plan.dim());
    Matrix out = Matrix::Zero(d, d);
    const auto& actions = plan.actions();
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const double c = plan.normalization() * v(static_cast<Eigen::Index>(i));
        if (c != 0.0) add_scaled_pauli(actions[i], c, out);
    }
    return out;
}

RVector record_values(const std::vector<std::int64_t>& shots,
                      const std::vector<std::int64_t>& plus_counts, double normalization) {
    if (shots.size() != plus_counts.size()) throw DimensionMismatch("record_values: length mismatch");
    RVector y(static_cast<Eigen::Index>(shots.size()));
    for (std::size_t i = 0; i < shots.size(); ++i) {
        if (plus_counts[i] < 0 || plus_counts[i] > shots[i])
            throw InvalidArgument("record_values: plus count outside [0, shots]");
        y(static_cast<Eigen::Index>(i)) =
            shots[i] > 0 ? normalization * (2.0 * static_cast<double>(plus_counts[i]) /
                                                static_cast<double>(shots[i]) - 1.0)
                         : 0.0;
    }
    return y;
}

MeasurementRecord exact_measurements(const MeasurementPlan& plan, const DensityMatrix& rho) {
    MeasurementRecord rec;
    rec.y = apply_sampling_operator(plan, rho.matrix());
    rec.shots.assign(plan.size(), 0);
    rec.plus_counts.assign(plan.size(), 0);
    rec.exact = true;
    return rec;
}

MeasurementRecord simulate_measurements(const MeasurementPlan& plan, const DensityMatrix& rho,
                                        std::uint64_t copies, Rng& rng) {
    if (rho.dim() != plan.dim()) throw DimensionMismatch("simulate_measurements: dimension mismatch");
    if (copies == kExactCopies) return exact_measurements(plan, rho);
    const std::size_t m = plan.size();
    if (copies < m)
        throw InfeasiblePlan("simulate_measurements: " + std::to_string(copies) +
                             " copies cannot cover " + std::to_string(m) + " settings");
    const auto per_setting = static_cast<std::int64_t>(copies / m);
    const std::uint64_t base = rng();

    MeasurementRecord rec;
    rec.shots.assign(m, per_setting);
    rec.plus_counts.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (plan.paulis()[i].is_identity()) {
            rec.plus_counts[i] = per_setting;
            continue;
        }
        const double e = pauli_expectation(plan.actions()[i], rho.matrix());
        const double p_plus = std::clamp(0.5 * (1.0 + e), 0.0, 1.0);
        Rng stream = make_rng(derive_seed(base, {static_cast<std::uint64_t>(i)}));
        std::binomial_distribution<std::int64_t> binom(per_setting, p_plus);
        rec.plus_counts[i] = binom(stream);
    }
    rec.y = record_values(rec.shots, rec.plus_counts, plan.normalization());
    return rec;
}

std::uint64_t budget_split(const TimeBudget& budget) {
    const double t = budget.total_time - budget.switching_cost * static_cast<double>(budget.settings);
    if (!(t >= 1.0))
        throw InfeasiblePlan("time budget T=" + std::to_string(budget.total_time) +
                             " cannot pay switching cost c=" + std::to_string(budget.switching_cost) +
                             " for m=" + std::to_string(budget.settings) + " settings");
    return static_cast<std::uint64_t>(std::floor(t));
}

double sampling_gram_norm(const MeasurementPlan& plan, int iterations) {
    // Deterministic start: a fixed-seed random Hermitian matrix.
    Rng rng = make_rng(0x5eedULL);
    Matrix x = random_hermitian(plan.dim(), rng);
    x /= x.norm();
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Matrix next = adjoint_sampling_operator(plan, apply_sampling_operator(plan, x));
        const double norm = next.norm();
        if (norm == 0.0) return 0.0;
        const double prev = estimate;
        estimate = norm;
        x = next / norm;
        if (it > 2 && std::abs(estimate - prev) <= 1e-12 * estimate) break;
    }
    return estimate;
}

double noise_operator_norm(const MeasurementPlan& plan, const MeasurementRecord& record,
                           const DensityMatrix& rho) {
    const RVector diff = record.y - apply_sampling_operator(plan, rho.matrix());
    return linalg::operator_norm(adjoint_sampling_operator(plan, diff));
}

double RipStatistics::fraction_within(double delta) const {
    if (ratios.empty()) return 0.0;
    const auto inside = std::count_if(ratios.begin(), ratios.end(), [delta](double r) {
        return r > 1.0 - delta && r < 1.0 + delta;
    });
    return static_cast<double>(inside) / static_cast<double>(ratios.size());
}

Matrix random_low_rank_hermitian(std::size_t d, std::size_t r, Rng& rng) {
    if (r < 1 || r > d) throw InvalidArgument("random_low_rank_hermitian: rank out of range");
    const Matrix u = haar_unitary(d, rng);
    std::normal_distribution<double> normal(0.0, 1.0);
    RVector s(static_cast<Eigen::Index>(r));
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = normal(rng);
    const Matrix v = u.leftCols(static_cast<Eigen::Index>(r));
    Matrix x = v * s.asDiagonal() * v.adjoint();
    return x / x.norm();
}

RipStatistics empirical_rip_constant(const MeasurementPlan& plan, std::size_t r,
                                     std::size_t trials, Rng& rng) {
    if (trials < 1) throw InvalidArgument("empirical_rip_constant: trials must be >= 1");
    RipStatistics stats;
    stats.ratios.reserve(trials);
    for (std::size_t k = 0; k < trials; ++k) {
        const Matrix x = random_low_rank_hermitian(plan.dim(), r, rng);
        stats.ratios.push_back(apply_sampling_operator(plan, x).norm() / x.norm());
    }
    stats.min_ratio = *std::min_element(stats.ratios.begin(), stats.ratios.end());
    stats.max_ratio = *std::max_element(stats.ratios.begin(), stats.ratios.end());
    double sum = 0;
    for (double v : stats.ratios) sum += v;
    stats.mean_ratio = sum / static_cast<double>(trials);
    return stats;
}

}  // namespace cstomo
