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


#include "cstomo/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "cstomo/linalg.hpp"

namespace cstomo {

namespace {

constexpr double kBudgetCeiling = 4.0e18;  // keeps counts well inside int64

void require_unit(const CVector& v, const char* name) {
    if (std::abs(v.norm() - 1.0) > 1e-9)
        throw InvalidArgument(std::string("DFE: ") + name + " is not normalized (norm " +
                              std::to_string(v.norm()) + ")");
}

std::uint64_t checked_ceil(double x, const char* what) {
    if (!(x < kBudgetCeiling))
        throw InvalidArgument(std::string("DFE budget overflow computing ") + what);
    return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

SimulatedStateOracle::SimulatedStateOracle(DensityMatrix rho) : rho_(std::move(rho)) {
    rho_.require_psd();
}

std::int64_t SimulatedStateOracle::measure(const PauliString& p, std::int64_t shots, Rng& rng) const {
    if (shots <= 0) return 0;
    const double e = pauli_expectation(p, rho_.matrix()) / rho_.trace();
    std::binomial_distribution<std::int64_t> binom(shots, std::clamp(0.5 * (1.0 + e), 0.0, 1.0));
    return binom(rng);
}

double SimulatedStateOracle::expectation(const PauliString& p) const {
    return pauli_expectation(p, rho_.matrix()) / rho_.trace();
}

complex SimulatedStateOracle::matrix_element(const CVector& phi_j, const CVector& phi_k) const {
    return phi_j.dot(rho_.matrix() * phi_k) / rho_.trace();
}

const char* to_string(DfeMode m) {
    switch (m) {
        case DfeMode::sampled: return "sampled";
        case DfeMode::exact_outcomes: return "exact_outcomes";
        case DfeMode::exact_expectation: return "exact_expectation";
    }
    return "?";
}

DfeMode dfe_mode_from_string(const std::string& s) {
    if (s == "sampled") return DfeMode::sampled;
    if (s == "exact_outcomes") return DfeMode::exact_outcomes;
    if (s == "exact_expectation" || s == "exact") return DfeMode::exact_expectation;
    throw InvalidArgument("unknown DFE mode '" + s + "'");
}

DfeDistribution dfe_distribution(const CVector& phi_j, const CVector& phi_k) {
    require_unit(phi_j, "phi_j");
    require_unit(phi_k, "phi_k");
    if (phi_j.size() != phi_k.size()) throw DimensionMismatch("DFE: vector sizes differ");
    const auto d = static_cast<std::size_t>(phi_j.size());
    if (d < 2 || (d & (d - 1)) != 0) throw DimensionMismatch("DFE: dimension must be 2^n");
    const int n = std::countr_zero(d);
    const std::uint64_t count = pauli_count(n);

    DfeDistribution dist;
    dist.probabilities.resize(static_cast<Eigen::Index>(count));
    dist.weights.resize(count);
    double total = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const complex w = pauli_matrix_element(pauli_action(PauliString(n, i)), phi_j, phi_k);
        dist.weights[i] = w;
        const double p = std::norm(w) / static_cast<double>(d);
        dist.probabilities(static_cast<Eigen::Index>(i)) = p;
        total += p;
    }
    // sum_i |<j|P_i|k>|^2 = d <j|j><k|k> by Pauli completeness.
    if (std::abs(total - 1.0) > 1e-10)
        throw std::logic_error("DFE distribution does not sum to one: " + std::to_string(total));
    return dist;
}

DfeMoments dfe_moments(const Matrix& rho, const CVector& phi_j, const CVector& phi_k) {
    const DfeDistribution dist = dfe_distribution(phi_j, phi_k);
    const int n = std::countr_zero(static_cast<std::uint64_t>(phi_j.size()));
    complex mean{0, 0};
    double second = 0;
    for (std::size_t i = 0; i < dist.weights.size(); ++i) {
        const double p = dist.probabilities(static_cast<Eigen::Index>(i));
        if (p == 0.0) continue;
        const double e = pauli_trace(pauli_action(PauliString(n, i)), rho).real();
        const complex x = e / std::conj(dist.weights[i]);
        mean += p * x;
        second += p * std::norm(x);
    }
    return {mean, second - std::norm(mean)};
}

std::uint64_t dfe_sample_count(double eps0, double delta) {
    if (!(eps0 > 0)) throw InvalidArgument("DFE: eps0 must be positive");
    if (!(delta > 0 && delta < 1)) throw InvalidArgument("DFE: delta must lie in (0, 1)");
    return checked_ceil(1.0 / (eps0 * eps0 * delta), "sample count");
}

std::uint64_t dfe_copies_for_pauli(double probability, std::size_t d, std::uint64_t samples,
                                   double eps0, double delta) {
    const double x = 2.0 * std::log(2.0 / delta) /
                     (static_cast<double>(d) * probability * static_cast<double>(samples) * eps0 * eps0);
    return std::max<std::uint64_t>(1, checked_ceil(x, "copies per Pauli"));
}

MatrixElementEstimate dfe_matrix_element(const StateOracle& oracle, const CVector& phi_j,
                                         const CVector& phi_k, double eps0, double delta_jk,
                                         Rng& rng, DfeMode mode) {
    if (static_cast<std::size_t>(phi_j.size()) != oracle.dim())
        throw DimensionMismatch("DFE: vector and oracle dimensions differ");
    MatrixElementEstimate est;
    est.eps0 = eps0;
    est.delta = delta_jk;
    est.samples = dfe_sample_count(eps0, delta_jk);
    if (mode == DfeMode::exact_expectation) {
        require_unit(phi_j, "phi_j");
        require_unit(phi_k, "phi_k");
        est.value = oracle.matrix_element(phi_j, phi_k);
        est.samples = 0;
        return est;
    }

    const DfeDistribution dist = dfe_distribution(phi_j, phi_k);
    const std::size_t d = oracle.dim();
    const int n = std::countr_zero(d);

    // Multinomial counts of the sampled Pauli indices, by conditional binomials.
    std::uint64_t remaining = est.samples;
    double remaining_mass = 1.0;
    complex sum{0, 0};
    std::uint64_t copies = 0;
    const std::size_t count = dist.weights.size();
    for (std::size_t i = 0; i < count && remaining > 0; ++i) {
        const double p = dist.probabilities(static_cast<Eigen::Index>(i));
        if (p <= 0.0) continue;
        std::uint64_t c;
        if (p >= remaining_mass) {
            c = remaining;
        } else {
            std::binomial_distribution<std::int64_t> binom(static_cast<std::int64_t>(remaining),
                                                          std::min(1.0, p / remaining_mass));
            c = static_cast<std::uint64_t>(binom(rng));
        }
        remaining -= c;
        remaining_mass -= p;
        if (c == 0) continue;

        const PauliString pauli(n, i);
        const complex denom = std::conj(dist.weights[i]);
        if (mode == DfeMode::exact_outcomes) {
            sum += static_cast<double>(c) * oracle.expectation(pauli) / denom;
            continue;
        }
        const std::uint64_t per = dfe_copies_for_pauli(p, d, est.samples, eps0, delta_jk);
        const double shots_d = static_cast<double>(per) * static_cast<double>(c);
        if (!(shots_d < kBudgetCeiling)) throw InvalidArgument("DFE budget overflow in shot count");
        const auto shots = static_cast<std::int64_t>(per * c);
        const std::int64_t plus = oracle.measure(pauli, shots, rng);
        copies += static_cast<std::uint64_t>(shots);
        // Each sample contributes (1/per) sum_j A_j / denom.
        sum += (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
               (static_cast<double>(per) * denom);
    }
    est.value = sum / static_cast<double>(est.samples);
    est.copies = copies;
    return est;
}

double per_element_error(double eps, std::size_t r) {
    if (!(eps > 0)) throw InvalidArgument("certify: eps must be positive");
    const double root = eps / (2.0 * std::pow(static_cast<double>(r), 0.75));
    return root * root / 2.0;
}

double per_element_failure(double delta, std::size_t r) {
    if (!(delta > 0 && delta < 1)) throw InvalidArgument("certify: delta must lie in (0, 1)");
    const double rr = static_cast<double>(r);
    return 2.0 * delta / (rr * rr + rr);
}

double dfe_copy_budget(std::size_t d, std::size_t r, double eps, double delta) {
    const double eps0 = per_element_error(eps, r);
    const double djk = per_element_failure(delta, r);
    const double elements = static_cast<double>(r * (r + 1)) / 2.0;
    const double samples = std::ceil(1.0 / (eps0 * eps0 * djk));
    return elements *
           (samples + 1.0 + 2.0 * static_cast<double>(d) * std::log(2.0 / djk) / (eps0 * eps0));
}

Matrix assemble_g(const RVector& lambdas, const Matrix& g) {
    const Eigen::Index r = lambdas.size();
    if (g.rows() != r || g.cols() != r) throw DimensionMismatch("assemble_g: shape mismatch");
    Matrix out(r, r);
    for (Eigen::Index k = 0; k < r; ++k)
        for (Eigen::Index j = 0; j < r; ++j)
            out(j, k) = std::sqrt(lambdas(j) * lambdas(k)) * g(j, k);
    return out;
}

double trace_sqrt_positive_part(const Matrix& h) {
    const RVector ev = linalg::eigvalsh(linalg::hermitian_part(h));
    double s = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 0) s += std::sqrt(ev(i));
    return s;
}

double fidelity_from_elements(const RVector& lambdas, const Matrix& g_hat) {
    const double s = trace_sqrt_positive_part(assemble_g(lambdas, g_hat));
    return s * s;
}

LowRankSpectrum low_rank_spectrum(const DensityMatrix& rho_hat, double cutoff) {
    const auto eig = linalg::eigh(rho_hat.matrix());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i)
        if (eig.values(i) > cutoff) keep.push_back(i);
    LowRankSpectrum out;
    out.values.resize(static_cast<Eigen::Index>(keep.size()));
    out.vectors.resize(eig.vectors.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        out.values(static_cast<Eigen::Index>(c)) = eig.values(keep[c]);
        out.vectors.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(keep[c]);
    }
    return out;
}

FidelityEstimate certify_fidelity(const StateOracle& oracle, const DensityMatrix& rho_hat,
                                  double eps, double delta, Rng& rng, DfeMode mode) {
    if (rho_hat.dim() != oracle.dim()) throw DimensionMismatch("certify: dimension mismatch");
    rho_hat.require_psd();
    if (rho_hat.trace() > 1.0 + 1e-9)
        throw NotPhysical("certify: estimate has trace " + std::to_string(rho_hat.trace()) + " > 1");
    const LowRankSpectrum spec = low_rank_spectrum(rho_hat);
    const auto r = static_cast<std::size_t>(spec.values.size());
    if (r == 0) throw InvalidArgument("certify: estimate has rank 0");

    FidelityEstimate out;
    out.epsilon = eps;
    out.delta = delta;
    out.rank = r;
    out.matrix_element_error = per_element_error(eps, r);
    out.element_failure_probability = per_element_failure(delta, r);

    const std::uint64_t base = rng();
    const auto ri = static_cast<Eigen::Index>(r);
    Matrix g_hat(ri, ri);
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = j; k < r; ++k) {
            Rng stream = make_rng(derive_seed(base, {j, k}));
            const CVector phi_j = spec.vectors.col(static_cast<Eigen::Index>(j));
            const CVector phi_k = spec.vectors.col(static_cast<Eigen::Index>(k));
            MatrixElementEstimate e =
                dfe_matrix_element(oracle, phi_j, phi_k, out.matrix_element_error,
                                   out.element_failure_probability, stream, mode);
            const auto jj = static_cast<Eigen::Index>(j);
            const auto kk = static_cast<Eigen::Index>(k);
            g_hat(jj, kk) = e.value;
            g_hat(kk, jj) = std::conj(e.value);
            if (j == k) g_hat(jj, jj) = e.value.real();
            out.copies_used += e.copies;
            out.elements.push_back({j, k, e});
        }
    }
    out.untruncated = fidelity_from_elements(spec.values, g_hat);
    out.value = std::min(out.untruncated, 1.0);
    return out;
}

}  // namespace cstomo
