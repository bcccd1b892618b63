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

#include <stdexcept>
#include <string>
#include <vector>

#include "cstomo/certify.hpp"
#include "cstomo/experiment.hpp"
#include "cstomo/lowerbound.hpp"
#include "cstomo/measurement.hpp"
#include "cstomo/process.hpp"
#include "cstomo/solvers.hpp"
#include "cstomo/states.hpp"

/// Text serialization. JSON documents are returned as strings so that callers
/// need no JSON library of their own; all numbers round-trip exactly.
namespace cstomo::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
/// Writes the whole string, replacing the file.
void write_file(const std::string& path, const std::string& contents);

/// Shortest decimal that round-trips the double.
std::string format_double(double x);

/// {"n": .., "dim": .., "entries": [[re, im], ...]} in row-major order.
std::string density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const std::string& text);

/// index,eigenvalue (descending).
std::string spectrum_csv(const DensityMatrix& rho);

/// {"n", "m", "normalization", "with_replacement", "identity_excluded",
///  "seed", "paulis": ["XZ", ...], "indices": [..]}.
std::string plan_to_json(const MeasurementPlan& plan);
MeasurementPlan plan_from_json(const std::string& text);

/// Header setting_index,pauli_string,shots,plus_counts,y. Exact records carry
/// zero shots on every row.
std::string record_to_csv(const MeasurementPlan& plan, const MeasurementRecord& record);
MeasurementRecord record_from_csv(const std::string& text, const MeasurementPlan& plan);

/// iteration,objective,residual.
std::string diagnostics_csv(const ReconstructionResult& result);

/// Solver summary (estimator, weight, iterations, flags) as JSON.
std::string reconstruction_summary_json(const ReconstructionResult& result, double weight);

/// {"F_hat", "F_hat_untruncated", "eps", "delta", "copies_used", "eps0",
///  "delta_jk", "rank", "per_element": [{"j","k","re","im","samples","copies"}]}.
std::string certification_to_json(const FidelityEstimate& estimate);

/// {"n": .., "kraus": [ [[re, im], ...row-major...], ... ]}.
std::string channel_to_json(const QuantumChannel& channel);
QuantumChannel channel_from_json(const std::string& text);

/// {"d", "r", "epsilon", "alpha", "target_size", "size", "attempts",
///  "rejections", "bias_rejections", "separation_rejections", "group",
///  "complete", "seed", "states": [file names]}.
std::string packing_manifest_json(const PackingSet& set, std::uint64_t seed,
                                  const std::vector<std::string>& state_files);

/// The benchmark table. Missing timings are written as "nan".
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);
/// trial,m,estimator,master_seed,sub_seed,weight,fidelity,trace_distance,iterations,converged.
std::string trials_csv(const std::vector<TrialRecord>& trials);
/// m,t,shots_per_setting.
std::string budget_csv(const std::vector<BudgetRow>& rows);

}  // namespace cstomo::io
