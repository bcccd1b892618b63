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


#include "cstomo/lowerbound.hpp"

#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace cstomo {

namespace {

void require_rank(std::size_t d, std::size_t r) {
    if (d < 2) throw InvalidArgument("dimension must be at least 2");
    if (r < 1 || r > d) throw InvalidArgument("rank must lie in [1, d]");
}

int qubits_of(std::size_t d) {
    if (d < 2 || (d & (d - 1)) != 0) throw InvalidArgument("packing dimension must be a power of two");
    return std::countr_zero(d);
}

Matrix dense_pauli(const PauliString& p) {
    const complex i1{0, 1};
    Matrix out = Matrix::Ones(1, 1);
    for (int q = 0; q < p.num_qubits(); ++q) {
        Matrix s(2, 2);
        switch (p.code(q)) {
            case PauliCode::I: s << 1, 0, 0, 1; break;
            case PauliCode::X: s << 0, 1, 1, 0; break;
            case PauliCode::Y: s << 0, -i1, i1, 0; break;
            case PauliCode::Z: s << 1, 0, 0, -1; break;
        }
        Matrix next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index a = 0; a < out.rows(); ++a)
            for (Eigen::Index b = 0; b < out.cols(); ++b) next.block(2 * a, 2 * b, 2, 2) = out(a, b) * s;
        out = std::move(next);
    }
    return out;
}

double half_trace_norm_svd(const Matrix& x) {
    Eigen::JacobiSVD<Matrix> svd(x);
    return 0.5 * svd.singularValues().sum();
}

}  // namespace

double alpha_bound(std::size_t d, std::size_t r) {
    require_rank(d, r);
    const double dd = static_cast<double>(d);
    return std::sqrt(4.0 * std::log(std::pow(dd, 4) * std::numbers::pi / 8.0) /
                     (static_cast<double>(r) * dd));
}

double packing_rate(std::size_t d, std::size_t r, double epsilon) {
    require_rank(d, r);
    const double rd = static_cast<double>(r) * static_cast<double>(d);
    const double gap = 1.0 - static_cast<double>(r) / static_cast<double>(d);
    if (!(epsilon > 0 && epsilon < gap)) throw InvalidArgument("packing epsilon must lie in (0, 1 - r/d)");
    return std::log(8.0 / std::numbers::pi) / (2.0 * rd) + (gap - epsilon) * (gap - epsilon) / 32.0;
}

double packing_log_size(std::size_t d, std::size_t r, double epsilon) {
    return packing_rate(d, r, epsilon) * static_cast<double>(r) * static_cast<double>(d);
}

PackingSet generate_packing(std::size_t d, std::size_t r, double epsilon, std::size_t target_size,
                            std::uint64_t max_attempts, Rng& rng, RotationGroup group) {
    require_rank(d, r);
    const int n = qubits_of(d);
    const double gap = 1.0 - static_cast<double>(r) / static_cast<double>(d);
    if (!(epsilon > 0 && epsilon < gap)) throw InvalidArgument("packing epsilon must lie in (0, 1 - r/d)");
    if (target_size < 1) throw InvalidArgument("packing size must be >= 1");

    PackingSet set;
    set.rank = r;
    set.epsilon = epsilon;
    set.alpha = alpha_bound(d, r);
    set.target_size = target_size;
    set.group = group;

    const double bias_limit = 2.0 * set.alpha;
    std::vector<PauliAction> actions;
    if (bias_limit < 1.0) {
        actions.reserve(pauli_count(n) - 1);
        for (std::uint64_t i = 1; i < pauli_count(n); ++i) actions.push_back(pauli_action(PauliString(n, i)));
    }

    const std::uint64_t base = rng();
    while (set.states.size() < target_size && set.attempts < max_attempts) {
        Rng stream = make_rng(derive_seed(base, {set.attempts}));
        ++set.attempts;
        DensityMatrix candidate = random_rank_r_projection(n, r, stream, group);

        bool biased = false;
        for (const auto& a : actions) {
            if (std::abs(pauli_expectation(a, candidate.matrix())) > bias_limit) {
                biased = true;
                break;
            }
        }
        if (biased) {
            ++set.rejections;
            ++set.bias_rejections;
            continue;
        }
        bool close = false;
        for (const auto& member : set.states) {
            if (trace_distance(candidate, member) < epsilon) {
                close = true;
                break;
            }
        }
        if (close) {
            ++set.rejections;
            ++set.separation_rejections;
            continue;
        }
        set.states.push_back(std::move(candidate));
    }
    set.complete = set.states.size() == target_size;
    return set;
}

PackingCheck verify_packing(const PackingSet& set, double tolerance) {
    PackingCheck check;
    check.min_distance = std::numeric_limits<double>::infinity();
    if (set.states.empty()) {
        check.separated = check.unbiased = check.projections = true;
        return check;
    }
    const std::size_t d = set.states.front().dim();
    const int n = qubits_of(d);
    const double r = static_cast<double>(set.rank);

    for (const auto& rho : set.states) {
        Eigen::JacobiSVD<Matrix> svd(rho.matrix());
        const RVector sv = svd.singularValues();  // descending, = eigenvalues for PSD input
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            const double want = i < static_cast<Eigen::Index>(set.rank) ? 1.0 / r : 0.0;
            check.spectrum_error = std::max(check.spectrum_error, std::abs(sv(i) - want));
        }
        check.spectrum_error = std::max(check.spectrum_error, std::abs(rho.matrix().trace().real() - 1.0));
    }
    for (std::uint64_t i = 1; i < pauli_count(n); ++i) {
        const Matrix p = dense_pauli(PauliString(n, i));
        for (const auto& rho : set.states)
            check.max_bias = std::max(check.max_bias, std::abs((p * rho.matrix()).trace().real()));
    }
    for (std::size_t a = 0; a < set.states.size(); ++a)
        for (std::size_t b = a + 1; b < set.states.size(); ++b)
            check.min_distance = std::min(
                check.min_distance,
                half_trace_norm_svd(set.states[a].matrix() - set.states[b].matrix()));

    check.separated = check.min_distance >= set.epsilon - tolerance;
    check.unbiased = check.max_bias <= 2.0 * set.alpha + tolerance;
    check.projections = check.spectrum_error <= tolerance;
    return check;
}

double minimax_copies_bound_log(double log_s, double alpha, double delta) {
    if (!(alpha > 0)) throw InvalidArgument("alpha must be positive");
    if (!(delta >= 0 && delta < 1)) throw InvalidArgument("delta must lie in [0, 1)");
    const double lead = (1.0 - delta) * log_s;
    if (std::abs(lead - 1.0) <= 1e-12) return 0.0;
    if (lead < 1.0)
        throw InvalidArgument("minimax bound is vacuous: (1 - delta) ln s = " + std::to_string(lead) +
                              " <= 1");
    return (lead - 1.0) / (4.0 * alpha * alpha);
}

double minimax_copies_bound(double s, double alpha, double delta) {
    if (!(s >= 2)) throw InvalidArgument("packing size must be >= 2");
    return minimax_copies_bound_log(std::log(s), alpha, delta);
}

}  // namespace cstomo
