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


#include <benchmark/benchmark.h>

#include "cstomo/measurement.hpp"
#include "cstomo/pauli.hpp"
#include "cstomo/solvers.hpp"
#include "cstomo/states.hpp"

using namespace cstomo;

static void BM_PauliExpectation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const auto rho = haar_random_pure(n, rng);
    const auto action = pauli_action(PauliString(n, pauli_count(n) - 1));
    for (auto _ : state) benchmark::DoNotOptimize(pauli_expectation(action, rho.matrix()));
}
BENCHMARK(BM_PauliExpectation)->DenseRange(2, 8, 2);

static void BM_SamplingOperator(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    const auto plan = MeasurementPlan::random(n, 4 * (std::size_t{1} << n), false, rng);
    const auto rho = haar_random_pure(n, rng);
    for (auto _ : state) {
        const RVector y = apply_sampling_operator(plan, rho.matrix());
        benchmark::DoNotOptimize(adjoint_sampling_operator(plan, y));
    }
}
BENCHMARK(BM_SamplingOperator)->DenseRange(2, 6, 1);

static SolverConfig fixed_iterations(int iters) {
    SolverConfig c;
    c.tolerance = 1e-300;
    c.max_iterations = iters;
    c.record_history = false;
    return c;
}

static void BM_LassoIterations(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(3);
    const std::size_t m = 4 * (std::size_t{1} << n);
    const auto plan = MeasurementPlan::random(n, m, false, rng);
    const auto rec = simulate_measurements(plan, haar_random_pure(n, rng), 10000, rng);
    const double mu = default_mu(m, 10000) * double(plan.dim()) / double(m);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_lasso(plan, rec.y, mu, fixed_iterations(50)));
    state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_LassoIterations)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

static void BM_MleIterations(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(4);
    const auto plan = MeasurementPlan::random(n, 4 * (std::size_t{1} << n), false, rng);
    const auto rec = simulate_measurements(plan, haar_random_pure(n, rng), 10000, rng);
    for (auto _ : state) benchmark::DoNotOptimize(mle(plan, rec, fixed_iterations(50)));
    state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_MleIterations)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
