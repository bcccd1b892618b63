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


// Acceptance suite. Run with no arguments for every criterion, or pass the
// criterion numbers to run a subset. Prints one PASS/FAIL line per criterion
// and exits non-zero if any selected criterion fails.

#include <unistd.h>

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cstomo/certify.hpp"
#include "cstomo/experiment.hpp"
#include "cstomo/lowerbound.hpp"
#include "cstomo/process.hpp"
#include "cstomo/solvers.hpp"

using namespace cstomo;
namespace fs = std::filesystem;

namespace {

// Tolerances and thresholds.
constexpr double kParsevalTol = 1e-10;
constexpr double kExactRecoveryTd = 1e-3;
constexpr double kCompressedTd = 1e-2;
constexpr int kCompressedMinSuccess = 95;
constexpr double kSlopeTarget = -0.5;
constexpr double kSlopeTol = 0.1;
constexpr double kPlateauSpread = 0.03;
constexpr double kDeltaTol = 1e-12;
constexpr double kMomentTol = 1e-12;
constexpr double kDfeSuccessFraction = 0.9;
constexpr double kChoiIdentityTol = 1e-10;
constexpr double kProcessExactFidelity = 0.95;
constexpr double kProcessNoisyFidelity = 0.90;
constexpr double kMinimaxSlope = 2.0;
constexpr double kMinimaxSlopeTol = 0.15;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SolverConfig solver(double tol, int iters) {
    SolverConfig c;
    c.tolerance = tol;
    c.max_iterations = iters;
    c.record_history = false;
    return c;
}

Outcome parseval() {
    double worst = 0;
    for (int n = 2; n <= 4; ++n) {
        const auto plan = MeasurementPlan::complete(n);
        Rng rng(derive_seed(1, {std::uint64_t(n)}));
        for (int k = 0; k < 100; ++k) {
            const Matrix x = random_hermitian(plan.dim(), rng);
            worst = std::max(worst, std::abs(apply_sampling_operator(plan, x).norm() - x.norm()));
        }
    }
    return {worst <= kParsevalTol, fmt("max | ||A(X)||_2 - ||X||_F | = %.2e (tol %.0e)", worst, kParsevalTol)};
}

Outcome exact_recovery() {
    double worst = 0;
    std::string parts;
    for (int n : {2, 3}) {
        Rng rng(derive_seed(2, {std::uint64_t(n)}));
        const auto plan = MeasurementPlan::complete(n);
        const auto rho = haar_random_pure(n, rng);
        const auto rec = exact_measurements(plan, rho);
        for (Estimator e : {Estimator::dantzig, Estimator::lasso, Estimator::mle}) {
            auto r = reconstruct(e, plan, rec, 1e-6, solver(e == Estimator::mle ? 1e-12 : 1e-10, 20000));
            r = renormalize(std::move(r));
            const double td = trace_distance(r.rho_hat, rho);
            worst = std::max(worst, td);
            parts += fmt(" d=%zu/%s:%.1e", plan.dim(), to_string(e), td);
        }
    }
    return {worst <= kExactRecoveryTd, fmt("max trace distance %.2e (tol %.0e);%s", worst, kExactRecoveryTd, parts.c_str())};
}

Outcome compressed_recovery() {
    int ok = 0;
    double worst = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(derive_seed(3, {s}));
        const auto rho = haar_random_pure(4, rng);
        const auto plan = MeasurementPlan::random(4, 96, false, rng);
        const auto rec = exact_measurements(plan, rho);
        auto r = matrix_lasso(plan, rec.y, 1e-6, solver(1e-10, 20000));
        double td = 1;
        if (r.rho_hat.trace() > 0) td = trace_distance(renormalize(std::move(r)).rho_hat, rho);
        ok += td <= kCompressedTd;
        worst = std::max(worst, td);
    }
    return {ok >= kCompressedMinSuccess,
            fmt("%d/100 instances with trace distance <= %.0e (need %d); worst %.2e", ok, kCompressedTd,
                kCompressedMinSuccess, worst)};
}

Outcome noise_scaling() {
    const auto plan = MeasurementPlan::complete(3);
    const double d = double(plan.dim());
    std::vector<double> lx, ly;
    std::string parts;
    for (double t : {1e3, 1e4, 1e5, 1e6}) {
        double sum = 0;
        const int reps = 20;
        for (int k = 0; k < reps; ++k) {
            Rng rng(derive_seed(4, {std::uint64_t(t), std::uint64_t(k)}));
            const auto rho = haar_random_pure(3, rng);
            const auto rec = simulate_measurements(plan, rho, std::uint64_t(t), rng);
            auto r = matrix_lasso(plan, rec.y, 4 * std::sqrt(d / t), solver(1e-10, 5000));
            sum += r.rho_hat.trace() > 0 ? trace_distance(renormalize(std::move(r)).rho_hat, rho) : 1.0;
        }
        lx.push_back(std::log(t));
        ly.push_back(std::log(sum / reps));
        parts += fmt(" t=%.0e:%.4f", t, sum / reps);
    }
    const double s = slope(lx, ly);
    return {std::abs(s - kSlopeTarget) <= kSlopeTol,
            fmt("log-log slope %.3f (target %.1f +- %.1f);%s", s, kSlopeTarget, kSlopeTol, parts.c_str())};
}

Outcome fixed_budget() {
    ExperimentConfig c;  // n=4, T=1e4, c=20, gamma=0.01, 40 trials
    c.estimators = {Estimator::lasso, Estimator::mle};
    const auto res = run_benchmark(c);
    std::map<std::size_t, double> lasso, mle;
    for (const auto& row : res.rows) (row.estimator == Estimator::lasso ? lasso : mle)[row.m] = row.mean_fidelity;
    bool beats = true;
    std::string parts;
    for (std::size_t m : c.m_grid) {
        beats = beats && lasso[m] >= mle[m];
        parts += fmt(" m=%zu:%.4f/%.4f", m, lasso[m], mle[m]);
    }
    double lo = 1, hi = 0;
    for (std::size_t i = c.m_grid.size() / 2; i < c.m_grid.size(); ++i) {
        lo = std::min(lo, lasso[c.m_grid[i]]);
        hi = std::max(hi, lasso[c.m_grid[i]]);
    }
    const bool flat = hi - lo <= kPlateauSpread;
    return {beats && flat, fmt("(a) lasso >= mle at every m: %s; (b) upper-half lasso spread %.4f (tol %.2f); lasso/mle:%s",
                               beats ? "yes" : "no", hi - lo, kPlateauSpread, parts.c_str())};
}

Outcome dfe_algebra() {
    double worst_delta = 0;
    for (std::size_t r : {2u, 4u, 8u}) {
        Matrix m = Matrix::Zero(8, 8);
        for (std::size_t i = 0; i < r; ++i) m(Eigen::Index(i), Eigen::Index(i)) = 1.0 / double(r);
        const auto spec = low_rank_spectrum(DensityMatrix(m));
        const Matrix g = spec.vectors.adjoint() * m * spec.vectors;
        for (double e0 : {0.01, 0.1}) {
            const Matrix g_hat = g + e0 * Matrix::Identity(Eigen::Index(r), Eigen::Index(r));
            const double delta = trace_sqrt_positive_part(assemble_g(spec.values, g_hat)) -
                                 trace_sqrt_positive_part(assemble_g(spec.values, g));
            worst_delta = std::max(worst_delta, std::abs(delta - (std::sqrt(1 + double(r) * e0) - 1)));
        }
    }
    double worst_mean = 0, max_var = 0;
    for (int n : {1, 2}) {
        const std::size_t d = std::size_t{1} << n;
        Rng rng(derive_seed(6, {std::uint64_t(n)}));
        for (int k = 0; k < 50; ++k) {
            const auto rho = random_mixed_state(n, 1 + k % d, rng);
            const CVector a = haar_random_vector(d, rng), b = haar_random_vector(d, rng);
            const auto mo = dfe_moments(rho.matrix(), a, b);
            worst_mean = std::max(worst_mean, std::abs(mo.mean - a.dot(rho.matrix() * b)));
            max_var = std::max(max_var, mo.variance);
        }
    }
    const bool pass = worst_delta <= kDeltaTol && worst_mean <= kMomentTol && max_var <= 1 + kMomentTol;
    return {pass, fmt("max |Delta - (sqrt(1+r eps0)-1)| = %.2e; max |E(X) - <j|rho|k>| = %.2e; max Var(X) = %.4f",
                      worst_delta, worst_mean, max_var)};
}

Outcome dfe_end_to_end() {
    const double eps = 0.05, delta = 0.1;
    int ok = 0;
    double worst = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(derive_seed(7, {s}));
        const auto est = random_mixed_state(3, 2, rng);
        const Matrix truth = 0.9 * est.matrix() + 0.1 * random_mixed_state(3, 8, rng).matrix();
        const DensityMatrix rho(truth);
        const SimulatedStateOracle orc(rho);
        const auto f = certify_fidelity(orc, est, eps, delta, rng);
        const double err = std::abs(f.value - fidelity(rho, est));
        ok += err <= eps;
        worst = std::max(worst, err);
    }
    return {ok >= int(kDfeSuccessFraction * 200),
            fmt("%d/200 trials with |F_hat - F| <= %.2f (need %.0f%%); worst %.4f", ok, eps, 100 * kDfeSuccessFraction, worst)};
}

Outcome process_tomography() {
    double worst = 0;
    for (std::uint64_t k = 0; k < 20; ++k) {
        Rng rng(derive_seed(8, {k}));
        const int n = 1 + int(k % 2);
        const std::size_t d = std::size_t{1} << n;
        const auto e = random_channel(n, 1 + rng() % (d * d), rng);
        for (std::uint64_t a = 0; a < pauli_count(n); ++a)
            for (std::uint64_t b = 0; b < pauli_count(n); ++b)
                worst = std::max(worst, std::abs(channel_pauli_expectation(e, PauliString(n, a), PauliString(n, b)) -
                                                 jamiolkowski_pauli_expectation(e, PauliString(n, a), PauliString(n, b))));
    }
    Rng rng(derive_seed(8, {100}));
    const auto channel = compose(QuantumChannel::local_depolarizing(2, 0.01), random_unitary_channel(2, rng));
    std::vector<std::pair<PauliString, PauliString>> pairs;
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b) pairs.emplace_back(PauliString(2, a), PauliString(2, b));
    const auto plan = process_plan(2, pairs);
    const auto exact = simulate_process_measurements(channel, plan, kExactCopies, rng);
    const double f_exact =
        jamiolkowski_fidelity(reconstruct_channel(plan, exact, Estimator::lasso, 1e-6, solver(1e-10, 20000)).channel, channel);
    const double t = 1e6;
    const auto noisy = simulate_process_measurements(channel, plan, std::uint64_t(t), rng);
    const double mu = default_mu(plan.size(), t) * double(plan.dim()) / double(plan.size());
    const double f_noisy =
        jamiolkowski_fidelity(reconstruct_channel(plan, noisy, Estimator::lasso, mu, solver(1e-8, 5000)).channel, channel);
    const bool pass = worst <= kChoiIdentityTol && f_exact >= kProcessExactFidelity && f_noisy >= kProcessNoisyFidelity;
    return {pass, fmt("Pauli identity max error %.2e (tol %.0e); Jamiolkowski fidelity exact %.4f (>= %.2f), t=1e6 %.4f (>= %.2f)",
                      worst, kChoiIdentityTol, f_exact, kProcessExactFidelity, f_noisy, kProcessNoisyFidelity)};
}

Outcome mle_monotone() {
    int violations = 0;
    double worst_drop = 0;
    std::size_t steps = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(derive_seed(9, {s}));
        const auto plan = MeasurementPlan::random(2, 4 + s % 12, false, rng);
        const auto rho = depolarize_local(random_mixed_state(2, 1 + s % 4, rng), 0.02);
        const auto rec = simulate_measurements(plan, rho, 200 * plan.size(), rng);
        SolverConfig c = solver(1e-14, 500);
        c.record_history = true;
        const auto r = mle(plan, rec, c);
        double prev = log_likelihood(plan, rec, Matrix::Identity(4, 4) / 4.0);
        for (double ll : r.objective_history) {
            if (ll < prev) {
                ++violations;
                worst_drop = std::max(worst_drop, prev - ll);
            }
            prev = ll;
            ++steps;
        }
    }
    return {violations == 0, fmt("%d decreases over %zu iterations in 100 instances (largest %.2e)", violations, steps, worst_drop)};
}

Outcome lower_bound() {
    Rng rng(derive_seed(10, {0}));
    const auto set = generate_packing(8, 1, 0.4, 20, 100000, rng);
    const auto check = verify_packing(set);
    const bool packing_ok = set.complete && check.ok();

    // Packings of the size the existence argument allows, r = 1, eps = 0.4, delta = 0.
    std::vector<double> lx, ly;
    std::string parts;
    bool vacuous = false;
    for (std::size_t d : {8u, 16u, 32u}) {
        const double log_s = packing_log_size(d, 1, 0.4);
        const double alpha = alpha_bound(d, 1);
        try {
            const double t = minimax_copies_bound_log(log_s, alpha, 0.0);
            parts += fmt(" d=%zu: ln s=%.3f t*=%.3g", d, log_s, t);
            lx.push_back(std::log(double(d)));
            ly.push_back(std::log(t));
        } catch (const InvalidArgument&) {
            parts += fmt(" d=%zu: ln s=%.3f vacuous", d, log_s);
            vacuous = true;
        }
    }
    bool slope_ok = false;
    std::string slope_text = "slope undefined (bound vacuous)";
    if (!vacuous && lx.size() >= 2) {
        const double s = slope(lx, ly);
        slope_ok = std::abs(s - kMinimaxSlope) <= kMinimaxSlopeTol;
        slope_text = fmt("slope %.3f (target %.1f +- %.2f)", s, kMinimaxSlope, kMinimaxSlopeTol);
    }
    return {packing_ok && slope_ok,
            fmt("packing d=8 r=1 eps=0.4 s=20: %s (min distance %.3f, max |Tr P rho| %.3f, %llu attempts); minimax %s;%s",
                packing_ok ? "verified" : "NOT verified", check.min_distance, check.max_bias,
                static_cast<unsigned long long>(set.attempts), slope_text.c_str(), parts.c_str())};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / fmt("cstomo_accept_%d", int(::getpid()));
    const std::string cli = CSTOMO_CLI_PATH;
    const std::vector<std::string> steps = {
        "simulate --seed 5 --random-state --n 2 --rank 1 --gamma 0.02 --m 10 --copies 5000 --output {}/rec.csv",
        "reconstruct --plan {}/rec.plan.json --record {}/rec.csv --estimator lasso --output {}/est.json "
        "--diagnostics {}/diag.csv --spectrum {}/spec.csv --truth {}/rec.state.json",
        "reconstruct --plan {}/rec.plan.json --record {}/rec.csv --estimator mle --output {}/mle.json",
        "certify --seed 5 --estimate {}/est.json --state {}/rec.state.json --eps 0.2 --delta 0.2 --output {}/cert.json",
        "process --seed 5 --random-unitary --n 1 --gamma 0.01 --m 8 --copies 8000 --output {}/proc.json "
        "--channel-output {}/chan.json",
        "packing --seed 5 --d 8 --r 1 --eps 0.4 --size 5 --output {}/pack",
        "benchmark --seed 5 --n 2 --total-time 2000 --switching-cost 5 --m-grid 4 8 --trials 2 --output {}/bench.csv",
    };
    std::vector<std::map<std::string, std::string>> runs;
    for (int run = 0; run < 2; ++run) {
        const fs::path dir = root / std::to_string(run);
        fs::create_directories(dir);
        for (std::string cmd : steps) {
            for (std::size_t p; (p = cmd.find("{}")) != std::string::npos;) cmd.replace(p, 2, dir.string());
            const std::string full = "\"" + cli + "\" " + cmd + " > \"" + (dir / "stdout.txt").string() + "\" 2>&1";
            if (std::system(full.c_str()) != 0) {
                const std::string out = slurp(dir / "stdout.txt");
                fs::remove_all(root);
                return {false, "command failed: " + cmd + " :: " + out};
            }
        }
        fs::remove(dir / "stdout.txt");
        std::map<std::string, std::string> files;
        for (const auto& e : fs::recursive_directory_iterator(dir))
            if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = slurp(e.path());
        runs.push_back(std::move(files));
    }
    fs::remove_all(root);
    std::vector<std::string> differ;
    for (const auto& [name, body] : runs[0]) {
        auto it = runs[1].find(name);
        if (it == runs[1].end() || it->second != body) differ.push_back(name);
    }
    const bool pass = differ.empty() && runs[0].size() == runs[1].size();
    std::string detail = fmt("%zu output files compared across two runs of 7 commands", runs[0].size());
    for (const auto& n : differ) detail += "; differs: " + n;
    return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"Parseval on complete Pauli sets", parseval},
        {"noiseless exact recovery", exact_recovery},
        {"compressed recovery d=16 m=96", compressed_recovery},
        {"error scaling with copies", noise_scaling},
        {"fixed-budget benchmark n=4", fixed_budget},
        {"DFE algebra", dfe_algebra},
        {"DFE end-to-end", dfe_end_to_end},
        {"process tomography", process_tomography},
        {"MLE monotonicity", mle_monotone},
        {"lower-bound machinery", lower_bound},
        {"CLI determinism", determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > int(criteria.size())) {
            std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
            return 2;
        }
        selected.push_back(k);
    }
    if (selected.empty())
        for (int k = 1; k <= int(criteria.size()); ++k) selected.push_back(k);

    bool all = true;
    for (int k : selected) {
        const auto& [name, fn] = criteria[std::size_t(k - 1)];
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
