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


#include "cstomo/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cstomo/linalg.hpp"

namespace cstomo {

namespace {

constexpr double kProbabilityFloor = 1e-12;

Matrix gram(const MeasurementPlan& plan, const Matrix& x) {
    return adjoint_sampling_operator(plan, apply_sampling_operator(plan, x));
}

void check_inputs(const MeasurementPlan& plan, std::size_t data_length, const char* who) {
    if (data_length != plan.size())
        throw DimensionMismatch(std::string(who) + ": data has " + std::to_string(data_length) +
                                " entries, plan has " + std::to_string(plan.size()));
    if (plan.all_identity())
        throw InvalidArgument(std::string(who) + ": plan contains only identity settings");
}

double relative_change(const Matrix& next, const Matrix& prev) {
    return (next - prev).norm() / std::max(1.0, prev.norm());
}

// Eigenvalue soft-thresholding. With positivity the eigenvalues are shifted
// down by `threshold` and clamped at zero; otherwise they shrink toward zero.
// Returns the prox point and its penalty value (Tr X or ||X||_tr).
std::pair<Matrix, double> shrink_spectrum(const Matrix& v, double threshold, bool positivity) {
    const auto eig = linalg::eigh(v);
    RVector mapped = eig.values;
    double penalty = 0;
    for (Eigen::Index i = 0; i < mapped.size(); ++i) {
        const double x = mapped(i);
        const double s = positivity ? std::max(x - threshold, 0.0)
                                    : std::copysign(std::max(std::abs(x) - threshold, 0.0), x);
        mapped(i) = s;
        penalty += std::abs(s);
    }
    Matrix out = eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
    return {linalg::hermitian_part(out), penalty};
}

// Projection of u onto {W : ||W - center|| <= radius}.
Matrix project_operator_ball(const Matrix& u, const Matrix& center, double radius) {
    const auto eig = linalg::eigh(u - center);
    RVector clamped = eig.values.cwiseMax(-radius).cwiseMin(radius);
    return center + eig.vectors * clamped.asDiagonal() * eig.vectors.adjoint();
}

double penalty_of(const Matrix& x, bool positivity) {
    return positivity ? x.trace().real() : linalg::trace_norm(x);
}

ReconstructionResult zero_result(const MeasurementPlan& plan, const RVector& y, Estimator est) {
    const auto d = static_cast<Eigen::Index>(plan.dim());
    ReconstructionResult res{DensityMatrix(Matrix::Zero(d, d))};
    res.estimator = est;
    res.converged = true;
    res.iterations_used = 0;
    res.feasibility_residual = linalg::operator_norm(adjoint_sampling_operator(plan, y));
    return res;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(tolerance > 0)) throw InvalidArgument("solver tolerance must be positive");
    if (max_iterations < 1) throw InvalidArgument("solver max_iterations must be >= 1");
}

const char* to_string(Estimator e) {
    switch (e) {
        case Estimator::dantzig: return "dantzig";
        case Estimator::lasso: return "lasso";
        case Estimator::mle: return "mle";
    }
    return "?";
}

Estimator estimator_from_string(const std::string& s) {
    if (s == "dantzig" || s == "ds") return Estimator::dantzig;
    if (s == "lasso") return Estimator::lasso;
    if (s == "mle") return Estimator::mle;
    throw InvalidArgument("unknown estimator '" + s + "' (expected dantzig, lasso or mle)");
}

double default_lambda(std::size_t d, double copies) {
    if (!(copies >= 1)) throw InvalidArgument("default_lambda: copies must be >= 1");
    if (std::isinf(copies)) return 0.0;
    return 3.0 * static_cast<double>(d) / std::sqrt(copies);
}

double default_mu(std::size_t m, double copies) {
    if (!(copies >= 1)) throw InvalidArgument("default_mu: copies must be >= 1");
    if (std::isinf(copies)) return 0.0;
    return 4.0 * static_cast<double>(m) / std::sqrt(copies);
}

double lasso_objective(const MeasurementPlan& plan, const RVector& y, double mu, const Matrix& x,
                       bool positivity) {
    const RVector r = apply_sampling_operator(plan, x) - y;
    return 0.5 * r.squaredNorm() + mu * penalty_of(x, positivity);
}

double correlated_residual(const MeasurementPlan& plan, const RVector& y, const Matrix& x) {
    return linalg::operator_norm(
        adjoint_sampling_operator(plan, apply_sampling_operator(plan, x) - y));
}

ReconstructionResult matrix_lasso(const MeasurementPlan& plan, const RVector& y, double mu,
                                  const SolverConfig& config) {
    config.validate();
    check_inputs(plan, static_cast<std::size_t>(y.size()), "matrix_lasso");
    if (!(mu >= 0)) throw InvalidArgument("matrix_lasso: mu must be >= 0");

    const Matrix b = adjoint_sampling_operator(plan, y);
    {
        // Zero is optimal when the gradient at zero lies in the penalty's subdifferential.
        const RVector ev = linalg::eigvalsh(b);
        const double top = config.positivity ? ev(ev.size() - 1)
                                              : std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        if (top <= mu) return zero_result(plan, y, Estimator::lasso);
    }

    const double lipschitz = sampling_gram_norm(plan);
    double step = config.step_policy == StepPolicy::fixed ? 1.0 / lipschitz : 1.0;

    const auto d = static_cast<Eigen::Index>(plan.dim());
    Matrix x = Matrix::Zero(d, d);
    Matrix x_prev = x;
    double momentum = 1.0;
    double objective = 0.5 * y.squaredNorm();

    ReconstructionResult res{DensityMatrix(x)};
    res.estimator = Estimator::lasso;

    int it = 0;
    bool restarted = false;
    while (it < config.max_iterations) {
        ++it;
        const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        const double beta = (momentum - 1.0) / next_momentum;
        const Matrix search = x + beta * (x - x_prev);

        const RVector resid_search = apply_sampling_operator(plan, search) - y;
        const Matrix grad = adjoint_sampling_operator(plan, resid_search);
        const double f_search = 0.5 * resid_search.squaredNorm();

        Matrix candidate;
        double penalty = 0;
        double f_candidate = 0;
        for (;;) {
            auto [point, pen] = shrink_spectrum(search - step * grad, step * mu, config.positivity);
            candidate = std::move(point);
            penalty = pen;
            f_candidate = 0.5 * (apply_sampling_operator(plan, candidate) - y).squaredNorm();
            if (config.step_policy == StepPolicy::fixed) break;
            const Matrix diff = candidate - search;
            const double bound = f_search + linalg::hs_inner(grad, diff) +
                                 diff.squaredNorm() / (2.0 * step);
            if (f_candidate <= bound * (1 + 1e-14) + 1e-300) break;
            step *= 0.5;
        }
        const double cand_objective = f_candidate + mu * penalty;

        // Adaptive restart: drop momentum whenever the objective goes up.
        if (cand_objective > objective && beta > 0 && !restarted) {
            momentum = 1.0;
            x_prev = x;
            restarted = true;
            continue;
        }
        restarted = false;

        const double change = relative_change(candidate, x);
        x_prev = std::move(x);
        x = std::move(candidate);
        objective = cand_objective;
        momentum = next_momentum;
        if (config.record_history) {
            res.objective_history.push_back(objective);
            res.residual_history.push_back(change);
        }
        if (change < config.tolerance) {
            res.converged = true;
            break;
        }
    }
    res.iterations_used = it;
    res.rho_hat = DensityMatrix(x);
    res.feasibility_residual = correlated_residual(plan, y, x);
    return res;
}

ReconstructionResult dantzig_selector(const MeasurementPlan& plan, const RVector& y, double lambda,
                                      const SolverConfig& config) {
    config.validate();
    check_inputs(plan, static_cast<std::size_t>(y.size()), "dantzig_selector");
    if (!(lambda >= 0)) throw InvalidArgument("dantzig_selector: lambda must be >= 0");

    const Matrix b = adjoint_sampling_operator(plan, y);
    if (linalg::operator_norm(b) <= lambda) return zero_result(plan, y, Estimator::dantzig);

    const double lipschitz = sampling_gram_norm(plan);
    // tau * sigma * ||K||^2 stays at 0.9 while residual balancing trades them.
    double tau = 0.95 / lipschitz;
    double sigma = 0.95 / lipschitz;
    double alpha = 0.5;
    constexpr double kEta = 0.95;
    constexpr double kBalance = 1.5;

    const auto d = static_cast<Eigen::Index>(plan.dim());
    const Matrix identity = Matrix::Identity(d, d);
    Matrix x = Matrix::Zero(d, d);
    Matrix z = Matrix::Zero(d, d);
    Matrix kx = Matrix::Zero(d, d);
    Matrix kz = Matrix::Zero(d, d);

    ReconstructionResult res{DensityMatrix(x)};
    res.estimator = Estimator::dantzig;

    int it = 0;
    for (; it < config.max_iterations;) {
        ++it;
        // Primal: prox of tau (Tr X + indicator of X >= 0), or tau ||X||_tr.
        Matrix x_next = config.positivity
                            ? shrink_spectrum(x - tau * kz - tau * identity, 0.0, true).first
                            : shrink_spectrum(x - tau * kz, tau, false).first;
        const Matrix kx_next = gram(plan, x_next);
        const Matrix kx_bar = 2.0 * kx_next - kx;

        // Dual: prox of sigma g^*, g the indicator of ||W - b|| <= lambda (Moreau).
        const Matrix v = z + sigma * kx_bar;
        Matrix z_next = v - sigma * project_operator_ball(v / sigma, b, lambda);
        z_next = linalg::hermitian_part(z_next);
        const Matrix kz_next = gram(plan, z_next);

        const double primal_res = ((x - x_next) / tau - (kz - kz_next)).norm();
        const double dual_res = ((z - z_next) / sigma - (kx - kx_next)).norm();
        const double change_x = relative_change(x_next, x);
        const double change_z = relative_change(z_next, z);

        x = std::move(x_next);
        z = std::move(z_next);
        kx = kx_next;
        kz = kz_next;

        if (primal_res > kBalance * dual_res) {
            tau /= (1.0 - alpha);
            sigma *= (1.0 - alpha);
            alpha *= kEta;
        } else if (dual_res > kBalance * primal_res) {
            tau *= (1.0 - alpha);
            sigma /= (1.0 - alpha);
            alpha *= kEta;
        }

        if (config.record_history) {
            res.objective_history.push_back(penalty_of(x, config.positivity));
            res.residual_history.push_back(change_x);
        }
        if (change_x < config.tolerance && change_z < config.tolerance) {
            const double feas = linalg::operator_norm(kx - b);
            if (feas <= lambda * (1.0 + config.tolerance)) {
                res.converged = true;
                break;
            }
        }
    }
    res.iterations_used = it;
    res.rho_hat = DensityMatrix(x);
    res.feasibility_residual = linalg::operator_norm(kx - b);
    return res;
}

double log_likelihood(const MeasurementPlan& plan, const MeasurementRecord& record,
                      const Matrix& rho) {
    check_inputs(plan, record.size(), "log_likelihood");
    const std::size_t m = plan.size();
    const double total = record.exact ? static_cast<double>(m)
                                      : static_cast<double>(record.total_shots());
    double ll = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double w = record.exact ? 1.0 : static_cast<double>(record.shots[i]);
        const double f_plus = record.plus_frequency(i, plan.normalization());
        const double f_minus = 1.0 - f_plus;
        const double e = pauli_trace(plan.actions()[i], rho).real() / rho.trace().real();
        const double p_plus = std::max(0.5 * (1.0 + e), kProbabilityFloor);
        const double p_minus = std::max(0.5 * (1.0 - e), kProbabilityFloor);
        double term = 0;
        if (f_plus > 0) term += f_plus * std::log(p_plus);
        if (f_minus > 0) term += f_minus * std::log(p_minus);
        ll += w * term;
    }
    return ll / total;
}

ReconstructionResult mle(const MeasurementPlan& plan, const MeasurementRecord& record,
                         const SolverConfig& config) {
    config.validate();
    check_inputs(plan, record.size(), "mle");
    const std::size_t m = plan.size();
    if (!record.exact)
        for (std::size_t i = 0; i < m; ++i)
            if (record.shots[i] <= 0)
                throw InvalidArgument("mle: setting " + std::to_string(i) + " has no shots");

    std::vector<double> weight(m), f_plus(m);
    const double total = record.exact ? static_cast<double>(m)
                                      : static_cast<double>(record.total_shots());
    for (std::size_t i = 0; i < m; ++i) {
        weight[i] = (record.exact ? 1.0 : static_cast<double>(record.shots[i])) / total;
        f_plus[i] = record.plus_frequency(i, plan.normalization());
    }

    const auto d = static_cast<Eigen::Index>(plan.dim());
    Matrix rho = Matrix::Identity(d, d) / static_cast<double>(d);

    std::vector<double> expectation(m);
    auto evaluate = [&](const Matrix& r) {
        double ll = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double e = pauli_trace(plan.actions()[i], r).real();
            expectation[i] = e;
            const double pp = std::max(0.5 * (1.0 + e), kProbabilityFloor);
            const double pm = std::max(0.5 * (1.0 - e), kProbabilityFloor);
            double term = 0;
            if (f_plus[i] > 0) term += f_plus[i] * std::log(pp);
            if (f_plus[i] < 1) term += (1.0 - f_plus[i]) * std::log(pm);
            ll += weight[i] * term;
        }
        return ll;
    };

    ReconstructionResult res{DensityMatrix(rho)};
    res.estimator = Estimator::mle;
    double ll = evaluate(rho);

    int it = 0;
    while (it < config.max_iterations) {
        ++it;
        // R = sum_i w_i [ (f+/p+) (1 + P_i)/2 + (f-/p-) (1 - P_i)/2 ]
        Matrix r = Matrix::Zero(d, d);
        double identity_coeff = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double pp = std::max(0.5 * (1.0 + expectation[i]), kProbabilityFloor);
            const double pm = std::max(0.5 * (1.0 - expectation[i]), kProbabilityFloor);
            const double a = f_plus[i] / pp;
            const double bm = (1.0 - f_plus[i]) / pm;
            identity_coeff += weight[i] * 0.5 * (a + bm);
            const double pc = weight[i] * 0.5 * (a - bm);
            if (pc != 0.0) add_scaled_pauli(plan.actions()[i], pc, r);
        }
        r.diagonal().array() += identity_coeff;
        Matrix next = linalg::hermitian_part(r * rho * r);
        next /= next.trace().real();

        const double ll_next = evaluate(next);
        const double gain = ll_next - ll;
        const double change = relative_change(next, rho);
        rho = std::move(next);
        ll = ll_next;
        if (config.record_history) {
            res.objective_history.push_back(ll);
            res.residual_history.push_back(change);
        }
        if (gain < config.tolerance) {
            res.converged = true;
            break;
        }
    }
    res.iterations_used = it;
    res.rho_hat = DensityMatrix(rho);
    res.feasibility_residual = correlated_residual(plan, record.y, rho);
    return res;
}

ReconstructionResult renormalize(ReconstructionResult result) {
    const double tr = result.rho_hat.trace();
    if (!(tr > 0)) throw InvalidArgument("renormalize: estimate has nonpositive trace");
    if (tr < 1.0) {
        result.rho_hat = result.rho_hat.scaled(1.0 / tr);
        result.renormalized = true;
    } else if (tr > 1.0 + 1e-12) {
        result.trace_above_one = true;
    }
    return result;
}

ReconstructionResult reconstruct(Estimator estimator, const MeasurementPlan& plan,
                                 const MeasurementRecord& record, double weight,
                                 const SolverConfig& config) {
    switch (estimator) {
        case Estimator::dantzig: return dantzig_selector(plan, record.y, weight, config);
        case Estimator::lasso: return matrix_lasso(plan, record.y, weight, config);
        case Estimator::mle: return mle(plan, record, config);
    }
    throw InvalidArgument("reconstruct: unknown estimator");
}

}  // namespace cstomo
