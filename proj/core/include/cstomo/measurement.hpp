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
#include <limits>
#include <optional>
#include <vector>

#include "cstomo/pauli.hpp"
#include "cstomo/random.hpp"
#include "cstomo/states.hpp"
#include "cstomo/types.hpp"

namespace cstomo {

/// The sampled Pauli list defining the sampling operator
///   A(X)_i = sqrt(d/m) Tr(P_i X).
class MeasurementPlan {
public:
    MeasurementPlan(int n, std::vector<PauliString> paulis);

    /// All 4^n strings in canonical order.
    static MeasurementPlan complete(int n);
    static MeasurementPlan random(int n, std::size_t m, bool with_replacement, Rng& rng,
                                  bool exclude_identity = false);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    std::size_t size() const { return paulis_.size(); }
    double normalization() const { return normalization_; }

    const std::vector<PauliString>& paulis() const { return paulis_; }
    const std::vector<PauliAction>& actions() const { return actions_; }

    /// True when every setting is the identity string (carries no information).
    bool all_identity() const;

    // Provenance, carried into serialized plans.
    std::optional<std::uint64_t> seed;
    bool with_replacement = false;
    bool identity_excluded = false;

private:
    int n_;
    std::vector<PauliString> paulis_;
    std::vector<PauliAction> actions_;
    double normalization_;
};

/// Noisy Pauli data. For shot records y_i = sqrt(d/m) (2 plus_i / shots_i - 1).
/// Exact records (noiseless limit) have shots = plus_counts = 0 and y = A(rho).
struct MeasurementRecord {
    RVector y;
    std::vector<std::int64_t> shots;
    std::vector<std::int64_t> plus_counts;
    bool exact = false;

    std::size_t size() const { return static_cast<std::size_t>(y.size()); }
    /// Empirical frequency of the +1 outcome for setting i (derived from y for
    /// exact records).
    double plus_frequency(std::size_t i, double normalization) const;
    std::int64_t total_shots() const;
};

/// Sentinel copy count selecting the noiseless limit.
inline constexpr std::uint64_t kExactCopies = std::numeric_limits<std::uint64_t>::max();

/// sqrt(d/m) Tr(P_i X) for every setting; O(m d).
RVector apply_sampling_operator(const MeasurementPlan& plan, const Matrix& x);

/// sqrt(d/m) sum_i v_i P_i.
Matrix adjoint_sampling_operator(const MeasurementPlan& plan, const RVector& v);

/// Splits t copies evenly over the m settings (floor(t/m) each, remainder
/// discarded) and draws +/-1 outcomes with Pr(+1) = (1 + Tr(P_i rho))/2.
/// Setting i draws from its own stream derived from one base seed taken from
/// `rng`, so the result does not depend on evaluation order. Identity settings
/// always return +1. Pass kExactCopies for the noiseless record y = A(rho).
MeasurementRecord simulate_measurements(const MeasurementPlan& plan, const DensityMatrix& rho,
                                        std::uint64_t copies, Rng& rng);

/// y = A(rho) with no noise.
MeasurementRecord exact_measurements(const MeasurementPlan& plan, const DensityMatrix& rho);

/// Rebuilds y from counts: y_i = norm (2 plus_i / shots_i - 1).
RVector record_values(const std::vector<std::int64_t>& shots,
                      const std::vector<std::int64_t>& plus_counts, double normalization);

/// Fixed-time experiment model: each setting costs `switching_cost`, each copy costs one.
struct TimeBudget {
    double total_time = 0;
    double switching_cost = 0;
    std::size_t settings = 0;
};

/// Copies left for sampling, t = T - c m. Throws InfeasiblePlan when t <= 0.
std::uint64_t budget_split(const TimeBudget& budget);

/// Largest eigenvalue of A^* A by power iteration on Hermitian matrices.
double sampling_gram_norm(const MeasurementPlan& plan, int iterations = 100);

/// Operator norm of A^*(y - A(rho)).
double noise_operator_norm(const MeasurementPlan& plan, const MeasurementRecord& record,
                           const DensityMatrix& rho);

struct RipStatistics {
    double min_ratio = 0;
    double max_ratio = 0;
    double mean_ratio = 0;
    std::vector<double> ratios;

    /// Fraction of sampled X with ratio in (1 - delta, 1 + delta).
    double fraction_within(double delta) const;
};

/// Random rank-r Hermitian X with ||X||_F = 1 (Haar eigenvectors, Gaussian
/// eigenvalues).
Matrix random_low_rank_hermitian(std::size_t d, std::size_t r, Rng& rng);

/// Empirical probe of ||A(X)||_2 / ||X||_F over random rank-r X.
RipStatistics empirical_rip_constant(const MeasurementPlan& plan, std::size_t r,
                                     std::size_t trials, Rng& rng);

}  // namespace cstomo
