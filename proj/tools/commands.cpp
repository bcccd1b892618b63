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


#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include "cstomo/io.hpp"
#include "json.hpp"

namespace cstomo::cli {

namespace {

using nlohmann::json;

void add_seed(CLI::App* sub, std::uint64_t& seed) {
    sub->add_option("--seed", seed, "Master seed")->capture_default_str();
    sub->add_option("--config", "JSON file of option values (command-line flags win)");
}

void print(const json& j) { std::cout << j.dump(1) << "\n"; }

std::string sibling(const std::string& output, const std::string& suffix) {
    std::filesystem::path p(output);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

SolverConfig solver_config(double tolerance, int max_iterations, bool no_positivity) {
    SolverConfig c;
    c.tolerance = tolerance;
    c.max_iterations = max_iterations;
    c.positivity = !no_positivity;
    c.validate();
    return c;
}

/// Default weight for a record on a plan of dimension d: 1e-6 for exact data,
/// otherwise 3d/sqrt(t) (Dantzig) or 4d/sqrt(t) (Lasso).
double default_weight(Estimator e, std::size_t d, const MeasurementRecord& record) {
    if (e == Estimator::mle) return 0;
    if (record.exact) return 1e-6;
    const double t = static_cast<double>(record.total_shots());
    const double m = static_cast<double>(record.size());
    return e == Estimator::dantzig ? default_lambda(d, t)
                                   : default_mu(record.size(), t) * static_cast<double>(d) / m;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    std::uint64_t seed = 1;
    std::string state, plan, output, plan_output, state_output;
    bool random_state = false, complete = false, with_replacement = false, exclude_identity = false,
         exact = false;
    int n = 2;
    std::size_t rank = 1, m = 0;
    double gamma = 0;
    std::uint64_t copies = 0;
};

void run_simulate(const SimulateOptions& o) {
    if (o.state.empty() == !o.random_state)
        throw InvalidArgument("give exactly one of --state and --random-state");
    if (!o.exact && o.copies == 0) throw InvalidArgument("give --copies N or --exact");

    DensityMatrix rho = DensityMatrix::zero(1);
    if (o.random_state) {
        Rng rng = make_rng(derive_seed(o.seed, {0}));
        DensityMatrix base = o.rank == 1 ? haar_random_pure(o.n, rng) : random_mixed_state(o.n, o.rank, rng);
        rho = depolarize_local(base, o.gamma);
        io::write_file(o.state_output.empty() ? sibling(o.output, ".state.json") : o.state_output,
                       io::density_to_json(rho));
    } else {
        rho = io::density_from_json(io::read_file(o.state));
    }
    rho.require_psd();

    const bool generate = o.plan.empty();
    if (!generate && (o.complete || o.m > 0)) throw InvalidArgument("--plan excludes --m and --complete");
    std::optional<MeasurementPlan> plan;
    if (generate) {
        if (o.complete == (o.m > 0)) throw InvalidArgument("give --plan, --complete or --m");
        if (o.complete) {
            plan = MeasurementPlan::complete(rho.num_qubits());
        } else {
            Rng rng = make_rng(derive_seed(o.seed, {1}));
            plan = MeasurementPlan::random(rho.num_qubits(), o.m, o.with_replacement, rng, o.exclude_identity);
            plan->seed = o.seed;
        }
        io::write_file(o.plan_output.empty() ? sibling(o.output, ".plan.json") : o.plan_output,
                       io::plan_to_json(*plan));
    } else {
        plan = io::plan_from_json(io::read_file(o.plan));
    }

    Rng rng = make_rng(derive_seed(o.seed, {2}));
    const MeasurementRecord rec = simulate_measurements(*plan, rho, o.exact ? kExactCopies : o.copies, rng);
    io::write_file(o.output, io::record_to_csv(*plan, rec));
    print({{"settings", plan->size()}, {"copies_used", rec.total_shots()}, {"exact", rec.exact}});
}

// ------------------------------------------------------------- reconstruct

struct ReconstructOptions {
    std::uint64_t seed = 1;
    std::string plan, record, truth, output, diagnostics, spectrum, estimator = "lasso";
    std::optional<double> weight;
    double tolerance = 1e-10;
    int max_iterations = 20000;
    bool no_positivity = false;
};

void run_reconstruct(const ReconstructOptions& o) {
    const MeasurementPlan plan = io::plan_from_json(io::read_file(o.plan));
    const MeasurementRecord rec = io::record_from_csv(io::read_file(o.record), plan);
    const Estimator est = estimator_from_string(o.estimator);
    const double w = o.weight.value_or(default_weight(est, plan.dim(), rec));
    ReconstructionResult res =
        reconstruct(est, plan, rec, w, solver_config(o.tolerance, o.max_iterations, o.no_positivity));
    if (res.rho_hat.trace() > 0) res = renormalize(std::move(res));

    io::write_file(o.output, io::density_to_json(res.rho_hat));
    if (!o.diagnostics.empty()) io::write_file(o.diagnostics, io::diagnostics_csv(res));
    if (!o.spectrum.empty()) io::write_file(o.spectrum, io::spectrum_csv(res.rho_hat));

    json summary = json::parse(io::reconstruction_summary_json(res, w));
    if (!o.truth.empty()) {
        const DensityMatrix truth = io::density_from_json(io::read_file(o.truth));
        summary["fidelity"] = res.rho_hat.trace() > 0 ? fidelity(res.rho_hat, truth) : 0.0;
        summary["trace_distance"] = trace_distance(res.rho_hat, truth);
    }
    print(summary);
}

// ----------------------------------------------------------------- certify

struct CertifyOptions {
    std::uint64_t seed = 1;
    std::string estimate, state, output, mode = "sampled";
    double eps = 0.05, delta = 0.1;
};

void run_certify(const CertifyOptions& o) {
    DensityMatrix rho_hat = io::density_from_json(io::read_file(o.estimate));
    const DensityMatrix truth = io::density_from_json(io::read_file(o.state));
    const SimulatedStateOracle oracle(truth);
    Rng rng = make_rng(derive_seed(o.seed, {0}));
    const FidelityEstimate fe =
        certify_fidelity(oracle, rho_hat, o.eps, o.delta, rng, dfe_mode_from_string(o.mode));
    json report = json::parse(io::certification_to_json(fe));
    report["mode"] = o.mode;
    report["seed"] = o.seed;
    report["F_oracle"] = fidelity(truth, rho_hat);
    io::write_file(o.output, report.dump(1) + "\n");
    print({{"F_hat", fe.value},
           {"F_oracle", report["F_oracle"]},
           {"abs_error", std::abs(fe.value - report["F_oracle"].get<double>())},
           {"copies_used", fe.copies_used}});
}

// ----------------------------------------------------------------- process

struct ProcessOptions {
    std::uint64_t seed = 1;
    std::string channel, output, channel_output, estimator = "lasso";
    bool random_unitary = false, exact = false;
    std::size_t kraus_count = 0, m = 0;
    int n = 1;
    double gamma = 0;
    std::uint64_t copies = 0;
    std::optional<double> weight;
    double tolerance = 1e-10;
    int max_iterations = 20000;
};

void run_process(const ProcessOptions& o) {
    const int sources = (o.channel.empty() ? 0 : 1) + (o.random_unitary ? 1 : 0) + (o.kraus_count > 0 ? 1 : 0);
    if (sources != 1) throw InvalidArgument("give exactly one of --channel, --random-unitary, --kraus-count");
    if (!o.exact && o.copies == 0) throw InvalidArgument("give --copies N or --exact");

    Rng truth_rng = make_rng(derive_seed(o.seed, {0}));
    QuantumChannel channel = !o.channel.empty() ? io::channel_from_json(io::read_file(o.channel))
                             : o.random_unitary ? random_unitary_channel(o.n, truth_rng)
                                                : random_channel(o.n, o.kraus_count, truth_rng);
    if (o.gamma > 0) channel = compose(QuantumChannel::local_depolarizing(channel.num_qubits(), o.gamma), channel);
    const int n = channel.num_qubits();

    MeasurementPlan plan = MeasurementPlan::complete(2 * n);
    if (o.m > 0) {
        Rng plan_rng = make_rng(derive_seed(o.seed, {1}));
        plan = MeasurementPlan::random(2 * n, o.m, false, plan_rng);
        plan.seed = o.seed;
    }
    Rng shot_rng = make_rng(derive_seed(o.seed, {2}));
    const MeasurementRecord rec =
        simulate_process_measurements(channel, plan, o.exact ? kExactCopies : o.copies, shot_rng);

    const Estimator est = estimator_from_string(o.estimator);
    const double w = o.weight.value_or(default_weight(est, plan.dim(), rec));
    const ChannelReconstruction r =
        reconstruct_channel(plan, rec, est, w, solver_config(o.tolerance, o.max_iterations, false));
    if (!o.channel_output.empty()) io::write_file(o.channel_output, io::channel_to_json(r.channel));

    json report;
    report["n"] = n;
    report["m"] = plan.size();
    report["settings"] = process_setting_count(plan);
    report["copies_used"] = rec.total_shots();
    report["exact"] = rec.exact;
    report["estimator"] = to_string(est);
    report["weight"] = w;
    report["jamiolkowski_fidelity"] = r.trivial ? 0.0 : jamiolkowski_fidelity(channel, r.channel);
    report["tp_deviation"] = r.tp_deviation;
    report["kraus_count"] = r.channel.kraus().size();
    report["true_kraus_rank"] = channel.kraus_rank();
    report["iterations"] = r.state.iterations_used;
    report["converged"] = r.state.converged;
    report["trivial"] = r.trivial;
    report["seed"] = o.seed;
    io::write_file(o.output, report.dump(1) + "\n");
    print(report);
}

// ----------------------------------------------------------------- packing

struct PackingOptions {
    std::uint64_t seed = 1;
    std::size_t d = 8, r = 1, size = 20;
    double eps = 0.4, delta = 0;
    std::uint64_t max_attempts = 100000;
    std::string group = "special_orthogonal", output;
};

void run_packing(const PackingOptions& o) {
    Rng rng = make_rng(derive_seed(o.seed, {0}));
    const RotationGroup group = rotation_group_from_string(o.group);
    const PackingSet set = generate_packing(o.d, o.r, o.eps, o.size, o.max_attempts, rng, group);
    const PackingCheck check = verify_packing(set);

    std::filesystem::create_directories(o.output);
    std::vector<std::string> files;
    for (std::size_t k = 0; k < set.states.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "state_%04zu.json", k);
        files.emplace_back(name);
        io::write_file((std::filesystem::path(o.output) / name).string(), io::density_to_json(set.states[k]));
    }
    json manifest = json::parse(io::packing_manifest_json(set, o.seed, files));
    manifest["d"] = o.d;
    manifest["verified"] = check.ok();
    manifest["min_pairwise_distance"] = check.min_distance;
    manifest["max_pauli_bias"] = check.max_bias;
    manifest["delta"] = o.delta;
    if (set.states.size() >= 2) {
        try {
            manifest["minimax_copies_bound"] =
                minimax_copies_bound(static_cast<double>(set.states.size()), set.alpha, o.delta);
        } catch (const InvalidArgument& e) {
            manifest["minimax_copies_bound"] = nullptr;
            manifest["minimax_note"] = e.what();
        }
    }
    io::write_file((std::filesystem::path(o.output) / "manifest.json").string(), manifest.dump(1) + "\n");
    print({{"size", set.states.size()}, {"complete", set.complete}, {"verified", check.ok()},
           {"attempts", set.attempts}});
}

// --------------------------------------------------------------- benchmark

struct BenchmarkOptions {
    ExperimentConfig config;
    std::vector<std::string> estimators{"dantzig", "lasso", "mle"};
    std::string output;
    bool dry_run = false;
    std::optional<double> lambda, mu;
};

void run_benchmark_cmd(BenchmarkOptions o) {
    o.config.estimators.clear();
    for (const auto& s : o.estimators) o.config.estimators.push_back(estimator_from_string(s));
    o.config.lambda = o.lambda;
    o.config.mu = o.mu;
    if (o.dry_run) {
        std::cout << io::budget_csv(budget_table(o.config));
        return;
    }
    if (o.output.empty()) throw InvalidArgument("benchmark needs --output (or --dry-run)");
    const BenchmarkResult result = run_benchmark(o.config);
    io::write_file(o.output, io::benchmark_csv(result.rows));
    io::write_file(sibling(o.output, ".trials.csv"), io::trials_csv(result.trials));
    std::cout << io::benchmark_csv(result.rows);
}

}  // namespace

Action add_simulate(CLI::App& app) {
    auto o = std::make_shared<SimulateOptions>();
    auto* s = app.add_subcommand("simulate", "Simulate Pauli measurement data for a state");
    add_seed(s, o->seed);
    s->add_option("--state", o->state, "State JSON");
    s->add_flag("--random-state", o->random_state, "Draw a random state (see --n, --rank, --gamma)");
    s->add_option("--n", o->n, "Qubits for --random-state")->capture_default_str();
    s->add_option("--rank", o->rank, "Rank for --random-state")->capture_default_str();
    s->add_option("--gamma", o->gamma, "Local depolarizing strength for --random-state")->capture_default_str();
    s->add_option("--plan", o->plan, "Plan JSON");
    s->add_flag("--complete", o->complete, "Use all 4^n Paulis");
    s->add_option("--m", o->m, "Sample m Paulis");
    s->add_flag("--with-replacement", o->with_replacement);
    s->add_flag("--exclude-identity", o->exclude_identity);
    s->add_option("--copies", o->copies, "Total copies t");
    s->add_flag("--exact", o->exact, "Noiseless data");
    s->add_option("--output", o->output, "Record CSV")->required();
    s->add_option("--plan-output", o->plan_output, "Where to write a generated plan");
    s->add_option("--state-output", o->state_output, "Where to write a generated state");
    return [o] { run_simulate(*o); };
}

Action add_reconstruct(CLI::App& app) {
    auto o = std::make_shared<ReconstructOptions>();
    auto* s = app.add_subcommand("reconstruct", "Estimate a state from a measurement record");
    add_seed(s, o->seed);
    s->add_option("--plan", o->plan, "Plan JSON")->required();
    s->add_option("--record", o->record, "Record CSV")->required();
    s->add_option("--estimator", o->estimator, "lasso, dantzig or mle")
        ->check(CLI::IsMember({"lasso", "dantzig", "mle"}))
        ->capture_default_str();
    s->add_option("--weight", o->weight, "mu (Lasso) or lambda (Dantzig)");
    s->add_option("--truth", o->truth, "True state JSON, for fidelity reporting");
    s->add_option("--tolerance", o->tolerance)->capture_default_str();
    s->add_option("--max-iterations", o->max_iterations)->capture_default_str();
    s->add_flag("--no-positivity", o->no_positivity, "Trace-norm variant over Hermitian matrices");
    s->add_option("--output", o->output, "Estimate JSON")->required();
    s->add_option("--diagnostics", o->diagnostics, "Per-iteration CSV");
    s->add_option("--spectrum", o->spectrum, "Eigenvalue CSV");
    return [o] { run_reconstruct(*o); };
}

Action add_certify(CLI::App& app) {
    auto o = std::make_shared<CertifyOptions>();
    auto* s = app.add_subcommand("certify", "Direct fidelity estimation of an estimate against a state");
    add_seed(s, o->seed);
    s->add_option("--estimate", o->estimate, "Estimate JSON")->required();
    s->add_option("--state", o->state, "State JSON acting as the measured source")->required();
    s->add_option("--eps", o->eps)->capture_default_str();
    s->add_option("--delta", o->delta)->capture_default_str();
    s->add_option("--mode", o->mode, "sampled, exact_outcomes or exact_expectation")
        ->check(CLI::IsMember({"sampled", "exact_outcomes", "exact_expectation"}))
        ->capture_default_str();
    s->add_option("--output", o->output, "Report JSON")->required();
    return [o] { run_certify(*o); };
}

Action add_process(CLI::App& app) {
    auto o = std::make_shared<ProcessOptions>();
    auto* s = app.add_subcommand("process", "Compressed process tomography of a channel");
    add_seed(s, o->seed);
    s->add_option("--channel", o->channel, "Channel JSON");
    s->add_flag("--random-unitary", o->random_unitary, "Haar-random unitary channel on --n qubits");
    s->add_option("--kraus-count", o->kraus_count, "Random channel with this many Kraus operators");
    s->add_option("--n", o->n)->capture_default_str();
    s->add_option("--gamma", o->gamma, "Local depolarizing applied after the channel")->capture_default_str();
    s->add_option("--m", o->m, "Random Pauli pairs (default: all)");
    s->add_option("--copies", o->copies);
    s->add_flag("--exact", o->exact);
    s->add_option("--estimator", o->estimator)
        ->check(CLI::IsMember({"lasso", "dantzig", "mle"}))
        ->capture_default_str();
    s->add_option("--weight", o->weight);
    s->add_option("--tolerance", o->tolerance)->capture_default_str();
    s->add_option("--max-iterations", o->max_iterations)->capture_default_str();
    s->add_option("--output", o->output, "Report JSON")->required();
    s->add_option("--channel-output", o->channel_output, "Estimated channel JSON");
    return [o] { run_process(*o); };
}

Action add_packing(CLI::App& app) {
    auto o = std::make_shared<PackingOptions>();
    auto* s = app.add_subcommand("packing", "Generate a packing set of rank-r projections");
    add_seed(s, o->seed);
    s->add_option("--d", o->d)->capture_default_str();
    s->add_option("--r", o->r)->capture_default_str();
    s->add_option("--eps", o->eps)->capture_default_str();
    s->add_option("--size", o->size)->capture_default_str();
    s->add_option("--max-attempts", o->max_attempts)->capture_default_str();
    s->add_option("--group", o->group, "special_orthogonal or unitary")
        ->check(CLI::IsMember({"special_orthogonal", "unitary"}))
        ->capture_default_str();
    s->add_option("--delta", o->delta, "Target risk for the reported copy bound")->capture_default_str();
    s->add_option("--output", o->output, "Output directory")->required();
    return [o] { run_packing(*o); };
}

Action add_benchmark(CLI::App& app) {
    auto o = std::make_shared<BenchmarkOptions>();
    auto& c = o->config;
    auto* s = app.add_subcommand("benchmark", "Fixed-time-budget estimator sweep");
    add_seed(s, c.seed);
    s->add_option("--n", c.n)->capture_default_str();
    s->add_option("--total-time", c.total_time, "Time budget T")->capture_default_str();
    s->add_option("--switching-cost", c.switching_cost, "Cost c per setting")->capture_default_str();
    s->add_option("--m-grid", c.m_grid)->capture_default_str();
    s->add_option("--estimators", o->estimators)->capture_default_str();
    s->add_option("--trials", c.trials)->capture_default_str();
    s->add_option("--gamma", c.gamma)->capture_default_str();
    s->add_flag("--exact-data", c.exact_data, "Noiseless data");
    s->add_flag("--exclude-identity", c.exclude_identity);
    s->add_option("--lambda", o->lambda, "Dantzig weight override");
    s->add_option("--mu", o->mu, "Lasso weight override");
    s->add_option("--workers", c.workers, "Worker threads (also CSTOMO_WORKERS)");
    s->add_flag("--record-timing", c.record_timing, "Report solver wall time (not reproducible)");
    s->add_flag("--dry-run", o->dry_run, "Print the (m, t) allocation and exit");
    s->add_option("--output", o->output, "CSV path; per-trial rows go to <stem>.trials.csv");
    return [o] { run_benchmark_cmd(*o); };
}

}  // namespace cstomo::cli
