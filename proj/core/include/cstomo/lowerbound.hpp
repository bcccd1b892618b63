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
#include <vector>

#include "cstomo/random.hpp"
#include "cstomo/states.hpp"

namespace cstomo {

/// alpha = sqrt(4 ln(d^4 pi / 8) / (r d)).
double alpha_bound(std::size_t d, std::size_t r);

/// c(eps) = ln(8/pi) / (2 r d) + [(1 - r/d) - eps]^2 / 32.
double packing_rate(std::size_t d, std::size_t r, double epsilon);

/// ln s for the largest packing the existence argument allows, c(eps) r d.
double packing_log_size(std::size_t d, std::size_t r, double epsilon);

struct PackingSet {
    std::vector<DensityMatrix> states;
    std::size_t rank = 0;
    double epsilon = 0;
    double alpha = 0;
    std::size_t target_size = 0;
    std::uint64_t attempts = 0;
    std::uint64_t rejections = 0;
    std::uint64_t bias_rejections = 0;
    std::uint64_t separation_rejections = 0;
    RotationGroup group = RotationGroup::special_orthogonal;
    /// False when max_attempts ran out before target_size members were found.
    bool complete = false;
};

/// Rejection sampling of normalized rank-r projections. A candidate is kept
/// when |Tr(P rho)| <= 2 alpha for every non-identity Pauli and its trace
/// distance to every kept member is >= epsilon. Candidate k is drawn from its
/// own stream derived from one draw of `rng`.
PackingSet generate_packing(std::size_t d, std::size_t r, double epsilon, std::size_t target_size,
                            std::uint64_t max_attempts, Rng& rng,
                            RotationGroup group = RotationGroup::special_orthogonal);

struct PackingCheck {
    bool separated = false;
    bool unbiased = false;
    bool projections = false;
    double min_distance = 0;  // +inf for fewer than two members
    double max_bias = 0;
    double spectrum_error = 0;

    bool ok() const { return separated && unbiased && projections; }
};

/// Re-checks both packing inequalities and the rank-r projection spectrum,
/// using dense Pauli matrices and singular values rather than the code paths
/// used during generation.
PackingCheck verify_packing(const PackingSet& set, double tolerance = 1e-9);

/// t* = ((1 - delta) ln s - 1) / (4 alpha^2). Throws InvalidArgument when
/// (1 - delta) ln s < 1, where the bound says nothing; returns 0 at equality.
double minimax_copies_bound(double s, double alpha, double delta);
/// Same, taking ln s directly (for packings too large to represent).
double minimax_copies_bound_log(double log_s, double alpha, double delta);

}  // namespace cstomo
