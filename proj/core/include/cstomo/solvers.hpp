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

#include <string>
#include <vector>

#include "cstomo/measurement.hpp"
#include "cstomo/states.hpp"

namespace cstomo {

enum class StepPolicy { fixed, backtracking };

struct SolverConfig {
    /// Convergence threshold on the relative iterate change (Frobenius) and,
    /// for the Dantzig selector, on the relative constraint violation.
    double tolerance = 1e-8;
    int max_iterations = 5000;
    StepPolicy step_policy = StepPolicy::fixed;
    /// Constrain X >= 0; the trace-norm penalty then reduces to Tr X.
    bool positivity = true;
    bool record_history = true;

    void validate() const;
};

enum class Estimator { dantzig, lasso, mle };

const char* to_string(Estimator e);
Estimator estimator_from_string(const std::string& s);

struct ReconstructionResult {
    explicit ReconstructionResult(DensityMatrix estimate) : rho_hat(std::move(estimate)) {}

    DensityMatrix rho_hat;
    Estimator estimator = Estimator::lasso;
    std::vector<double> objective_history;
    /// Per-iteration relative iterate change.
    std::vector<double> residual_history;
    /// ||A^*(A(rho_hat) - y)||, operator norm.
    double feasibility_residual = 0;
    int iterations_used = 0;
    bool converged = false;
    bool renormalized = false;
    /// Set by renormalize() when the trace exceeded one; such estimates are
    /// passed through unscaled.
    bool trace_above_one = false;
};

/// 3 d / sqrt(t).
double default_lambda(std::size_t d, double copies);
/// 4 m / sqrt(t).
double default_mu(std::size_t m, double copies);

/// argmin 1/2 ||A(X) - y||^2 + mu Tr X over X >= 0 (positivity on), or with
/// mu ||X||_tr over Hermitian X (positivity off). Accelerated proximal gradient
/// with adaptive restart; the prox is eigenvalue soft-thresholding.
ReconstructionResult matrix_lasso(const MeasurementPlan& plan, const RVector& y, double mu,
                                  const SolverConfig& config = {});

/// argmin Tr X s.t. ||A^*(A(X) - y)|| <= lambda, X >= 0 (positivity on), or
/// ||X||_tr over Hermitian X. Primal-dual splitting whose dual step projects
/// onto the operator-norm ball of radius lambda; step sizes adapt by residual
/// balancing.
ReconstructionResult dantzig_selector(const MeasurementPlan& plan, const RVector& y, double lambda,
                                      const SolverConfig& config = {});

/// Maximum-likelihood estimate for two-outcome Pauli data by the R rho R
/// fixed-point iteration, started at the maximally mixed state.
ReconstructionResult mle(const MeasurementPlan& plan, const MeasurementRecord& record,
                         const SolverConfig& config = {});

/// Mean per-shot binomial log-likelihood of rho (settings weighted by their
/// shot counts; equal weights for exact records).
double log_likelihood(const MeasurementPlan& plan, const MeasurementRecord& record,
                      const Matrix& rho);

/// Divides by the trace when 0 < Tr < 1; flags (but leaves) traces above one.
ReconstructionResult renormalize(ReconstructionResult result);

double lasso_objective(const MeasurementPlan& plan, const RVector& y, double mu, const Matrix& x,
                       bool positivity = true);

/// ||A^*(A(X) - y)||.
double correlated_residual(const MeasurementPlan& plan, const RVector& y, const Matrix& x);

/// Dispatches to one of the three estimators. `weight` is lambda or mu and is
/// ignored by the MLE.
ReconstructionResult reconstruct(Estimator estimator, const MeasurementPlan& plan,
                                 const MeasurementRecord& record, double weight,
                                 const SolverConfig& config = {});

}  // namespace cstomo
