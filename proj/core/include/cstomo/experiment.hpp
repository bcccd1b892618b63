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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cstomo/solvers.hpp"

namespace cstomo {

/// Fixed-time-budget tomography sweep: per trial a Haar-random pure state is
/// locally depolarized, and for each m the budget T is split into m settings
/// (sampled without replacement) and t = T - c m copies.
struct ExperimentConfig {
    int n = 4;
    double total_time = 10000;
    double switching_cost = 20;
    std::vector<std::size_t> m_grid{32, 48, 64, 96, 128, 160, 192, 256};
    std::vector<Estimator> estimators{Estimator::dantzig, Estimator::lasso, Estimator::mle};
    std::size_t trials = 40;
    double gamma = 0.01;
    std::uint64_t seed = 1;

    /// Noiseless data (y = A(rho)); t is then only reported.
    bool exact_data = false;
    bool exclude_identity = false;
    /// Weight overrides; by default lambda = 3d/sqrt(t) and mu = 4d/sqrt(t)
    /// (the 4m/sqrt(t) heuristic rescaled by d/m for the normalized operator),
    /// or 1e-6 for exact data.
    std::optional<double> lambda;
    std::optional<double> mu;

    SolverConfig convex_solver{1e-7, 3000, StepPolicy::fixed, true, false};
    SolverConfig mle_solver{1e-10, 5000, StepPolicy::fixed, true, false};

    /// Solver wall time is nondeterministic; it is reported only when asked.
    bool record_timing = false;
    /// 0 selects CSTOMO_WORKERS or the hardware concurrency.
    unsigned workers = 0;

    /// Throws InvalidArgument / InfeasiblePlan naming the offending field or m.
    void validate() const;
};

struct BudgetRow {
    std::size_t m = 0;
    std::uint64_t copies = 0;
    std::uint64_t shots_per_setting = 0;
};

/// (m, t) allocation for every grid point, without simulating.
std::vector<BudgetRow> budget_table(const ExperimentConfig& config);

struct TrialRecord {
    std::size_t trial = 0;
    std::size_t m = 0;
    Estimator estimator = Estimator::lasso;
    std::uint64_t master_seed = 0;
    std::uint64_t sub_seed = 0;
    double weight = 0;
    double fidelity = 0;
    double trace_distance = 0;
    double solver_seconds = 0;
    int iterations = 0;
    bool converged = false;
};

struct BenchmarkRow {
    std::size_t m = 0;
    Estimator estimator = Estimator::lasso;
    double mean_fidelity = 0;
    double std_fidelity = 0;
    double mean_trace_distance = 0;
    double std_trace_distance = 0;
    double mean_solver_seconds = 0;  // NaN unless timing is recorded
};

struct BenchmarkResult {
    std::vector<BenchmarkRow> rows;      // sorted by (m, estimator)
    std::vector<TrialRecord> trials;     // sorted by (trial, m, estimator)
};

/// Per-trial seed, derive_seed(master, {trial}).
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

/// Worker count: explicit value, else CSTOMO_WORKERS, else hardware threads.
unsigned resolve_workers(unsigned requested);

BenchmarkResult run_benchmark(const ExperimentConfig& config);

/// Sample standard deviation (n - 1 denominator; 0 for a single value).
double sample_std(const std::vector<double>& values);

}  // namespace cstomo
