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


#include "cstomo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace cstomo {

void ExperimentConfig::validate() const {
    if (n < 1 || n > 10) throw InvalidArgument("n must lie in [1, 10]");
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (!(gamma >= 0 && gamma <= 1)) throw InvalidArgument("gamma must lie in [0, 1]");
    if (!(switching_cost >= 0)) throw InvalidArgument("switching cost must be >= 0");
    if (m_grid.empty()) throw InvalidArgument("m_grid is empty");
    if (estimators.empty()) throw InvalidArgument("no estimators selected");
    if (lambda && !(*lambda >= 0)) throw InvalidArgument("lambda must be >= 0");
    if (mu && !(*mu >= 0)) throw InvalidArgument("mu must be >= 0");
    convex_solver.validate();
    mle_solver.validate();
    {
        std::vector<std::size_t> sorted = m_grid;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("m_grid contains duplicates");
    }
    const std::uint64_t pool = pauli_count(n) - (exclude_identity ? 1 : 0);
    for (std::size_t m : m_grid) {
        if (m < 1) throw InvalidArgument("m_grid entries must be >= 1");
        if (m > pool)
            throw InfeasiblePlan("m = " + std::to_string(m) + " exceeds the " + std::to_string(pool) +
                                 " available Pauli settings");
        const double t = total_time - switching_cost * static_cast<double>(m);
        if (!(t > static_cast<double>(m)))
            throw InfeasiblePlan("m = " + std::to_string(m) + " leaves t = " + std::to_string(t) +
                                 " copies, fewer than one shot per setting (T = " +
                                 std::to_string(total_time) + ", c = " + std::to_string(switching_cost) +
                                 ")");
    }
}

std::vector<BudgetRow> budget_table(const ExperimentConfig& config) {
    config.validate();
    std::vector<BudgetRow> rows;
    for (std::size_t m : config.m_grid) {
        const std::uint64_t t = budget_split({config.total_time, config.switching_cost, m});
        rows.push_back({m, t, t / m});
    }
    return rows;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
    return derive_seed(master, {static_cast<std::uint64_t>(trial)});
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CSTOMO_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        throw InvalidArgument(std::string("CSTOMO_WORKERS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

namespace {

enum Stage : std::uint64_t { kTruth = 0, kPlan = 1, kShots = 2 };

std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, std::size_t trial) {
    const std::uint64_t seed = trial_seed(cfg.seed, trial);
    const std::size_t d = dimension_of(cfg.n);
    Rng truth_rng = make_rng(derive_seed(seed, {kTruth}));
    const DensityMatrix truth = depolarize_local(haar_random_pure(cfg.n, truth_rng), cfg.gamma);

    std::vector<TrialRecord> out;
    for (std::size_t m : cfg.m_grid) {
        const std::uint64_t t = budget_split({cfg.total_time, cfg.switching_cost, m});
        Rng plan_rng = make_rng(derive_seed(seed, {kPlan, m}));
        Rng shot_rng = make_rng(derive_seed(seed, {kShots, m}));
        const MeasurementPlan plan = MeasurementPlan::random(cfg.n, m, false, plan_rng, cfg.exclude_identity);
        const MeasurementRecord record =
            cfg.exact_data ? exact_measurements(plan, truth) : simulate_measurements(plan, truth, t, shot_rng);
        const double tt = static_cast<double>(t);

        for (Estimator est : cfg.estimators) {
            double weight = 0;
            if (est == Estimator::dantzig)
                weight = cfg.lambda.value_or(cfg.exact_data ? 1e-6 : default_lambda(d, tt));
            else if (est == Estimator::lasso)
                weight = cfg.mu.value_or(cfg.exact_data ? 1e-6
                                                        : default_mu(m, tt) * static_cast<double>(d) /
                                                              static_cast<double>(m));
            const SolverConfig& sc = est == Estimator::mle ? cfg.mle_solver : cfg.convex_solver;

            const auto start = std::chrono::steady_clock::now();
            ReconstructionResult res = reconstruct(est, plan, record, weight, sc);
            const auto stop = std::chrono::steady_clock::now();

            TrialRecord rec;
            rec.trial = trial;
            rec.m = m;
            rec.estimator = est;
            rec.master_seed = cfg.seed;
            rec.sub_seed = seed;
            rec.weight = weight;
            rec.iterations = res.iterations_used;
            rec.converged = res.converged;
            rec.solver_seconds = cfg.record_timing ? std::chrono::duration<double>(stop - start).count()
                                                   : std::numeric_limits<double>::quiet_NaN();
            if (res.rho_hat.trace() > 0) {
                res = renormalize(std::move(res));
                rec.fidelity = fidelity(res.rho_hat, truth);
            } else {
                rec.fidelity = 0;
            }
            rec.trace_distance = trace_distance(res.rho_hat, truth);
            out.push_back(rec);
        }
    }
    return out;
}

}  // namespace

BenchmarkResult run_benchmark(const ExperimentConfig& config) {
    config.validate();
    const unsigned workers =
        std::min<unsigned>(resolve_workers(config.workers), static_cast<unsigned>(config.trials));

    std::vector<std::vector<TrialRecord>> per_trial(config.trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < config.trials; i = next++) {
            try {
                per_trial[i] = run_trial(config, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = config.trials;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    BenchmarkResult result;
    for (auto& v : per_trial)
        for (auto& r : v) result.trials.push_back(r);

    std::vector<std::size_t> ms = config.m_grid;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<Estimator> ests = config.estimators;
    std::sort(ests.begin(), ests.end(),
              [](Estimator a, Estimator b) { return std::string(to_string(a)) < to_string(b); });
    ests.erase(std::unique(ests.begin(), ests.end()), ests.end());

    for (std::size_t m : ms) {
        for (Estimator e : ests) {
            std::vector<double> f, td;
            double secs = 0;
            for (const auto& r : result.trials) {
                if (r.m != m || r.estimator != e) continue;
                f.push_back(r.fidelity);
                td.push_back(r.trace_distance);
                secs += r.solver_seconds;
            }
            if (f.empty()) continue;
            BenchmarkRow row;
            row.m = m;
            row.estimator = e;
            const double k = static_cast<double>(f.size());
            for (double v : f) row.mean_fidelity += v / k;
            for (double v : td) row.mean_trace_distance += v / k;
            row.std_fidelity = sample_std(f);
            row.std_trace_distance = sample_std(td);
            row.mean_solver_seconds = secs / k;
            result.rows.push_back(row);
        }
    }
    return result;
}

}  // namespace cstomo
