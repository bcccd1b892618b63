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


#include "cstomo/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cstomo::io {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

template <class T>
T field(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string(what) + " JSON lacks field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + " field '" + key + "': " + e.what());
    }
}

json matrix_entries(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

Matrix matrix_from_entries(const json& entries, std::size_t d, const char* what) {
    if (!entries.is_array() || entries.size() != d * d)
        throw FormatError(std::string(what) + ": expected " + std::to_string(d * d) + " entries");
    const auto di = static_cast<Eigen::Index>(d);
    Matrix m(di, di);
    for (std::size_t k = 0; k < d * d; ++k) {
        const json& e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw FormatError(std::string(what) + ": entries must be [re, im] pairs");
        m(static_cast<Eigen::Index>(k / d), static_cast<Eigen::Index>(k % d)) =
            complex(e[0].get<double>(), e[1].get<double>());
    }
    return m;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <class T>
T parse_number(const std::string& s, const char* what) {
    T v{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw FormatError(std::string("bad ") + what + " '" + s + "'");
    return v;
}

std::string trim_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << contents;
    if (!out) throw FormatError("write to '" + path + "' failed");
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string density_to_json(const DensityMatrix& rho) {
    json j;
    j["n"] = rho.num_qubits();
    j["dim"] = rho.dim();
    j["entries"] = matrix_entries(rho.matrix());
    return j.dump(1) + "\n";
}

DensityMatrix density_from_json(const std::string& text) {
    const json j = parse(text, "density matrix");
    const int n = field<int>(j, "n", "density matrix");
    const std::size_t d = dimension_of(n);
    if (j.contains("dim") && field<std::size_t>(j, "dim", "density matrix") != d)
        throw FormatError("density matrix: dim does not equal 2^n");
    return DensityMatrix(matrix_from_entries(field<json>(j, "entries", "density matrix"), d, "density matrix"));
}

std::string spectrum_csv(const DensityMatrix& rho) {
    const RVector ev = rho.eigenvalues();
    std::string out = "index,eigenvalue\n";
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        out += std::to_string(i) + "," + format_double(ev(ev.size() - 1 - i)) + "\n";
    return out;
}

std::string plan_to_json(const MeasurementPlan& plan) {
    json j;
    j["n"] = plan.num_qubits();
    j["m"] = plan.size();
    j["normalization"] = plan.normalization();
    j["with_replacement"] = plan.with_replacement;
    j["identity_excluded"] = plan.identity_excluded;
    j["seed"] = plan.seed ? json(*plan.seed) : json(nullptr);
    json letters = json::array(), indices = json::array();
    for (const auto& p : plan.paulis()) {
        letters.push_back(p.letters());
        indices.push_back(p.index());
    }
    j["paulis"] = letters;
    j["indices"] = indices;
    return j.dump(1) + "\n";
}

MeasurementPlan plan_from_json(const std::string& text) {
    const json j = parse(text, "plan");
    const int n = field<int>(j, "n", "plan");
    const auto letters = field<std::vector<std::string>>(j, "paulis", "plan");
    std::vector<PauliString> paulis;
    for (const auto& s : letters) {
        PauliString p = PauliString::from_letters(s);
        if (p.num_qubits() != n) throw FormatError("plan: Pauli '" + s + "' has the wrong length");
        paulis.push_back(p);
    }
    MeasurementPlan plan(n, std::move(paulis));
    if (j.contains("seed") && !j["seed"].is_null()) plan.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("with_replacement")) plan.with_replacement = j["with_replacement"].get<bool>();
    if (j.contains("identity_excluded")) plan.identity_excluded = j["identity_excluded"].get<bool>();
    return plan;
}

std::string record_to_csv(const MeasurementPlan& plan, const MeasurementRecord& record) {
    if (record.size() != plan.size()) throw DimensionMismatch("record and plan sizes differ");
    std::string out = "setting_index,pauli_string,shots,plus_counts,y\n";
    for (std::size_t i = 0; i < plan.size(); ++i) {
        out += std::to_string(i) + "," + plan.paulis()[i].letters() + "," +
               std::to_string(record.exact ? 0 : record.shots[i]) + "," +
               std::to_string(record.exact ? 0 : record.plus_counts[i]) + "," +
               format_double(record.y(static_cast<Eigen::Index>(i))) + "\n";
    }
    return out;
}

MeasurementRecord record_from_csv(const std::string& text, const MeasurementPlan& plan) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim_cr(line) != "setting_index,pauli_string,shots,plus_counts,y")
        throw FormatError("record CSV: unexpected header");
    MeasurementRecord rec;
    std::vector<double> y;
    while (std::getline(in, line)) {
        line = trim_cr(line);
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 5) throw FormatError("record CSV: expected 5 columns in '" + line + "'");
        const auto idx = parse_number<std::size_t>(cols[0], "setting index");
        if (idx != y.size()) throw FormatError("record CSV: setting indices must be 0, 1, 2, ...");
        if (idx >= plan.size() || plan.paulis()[idx].letters() != cols[1])
            throw FormatError("record CSV: row " + cols[0] + " does not match the plan");
        rec.shots.push_back(parse_number<std::int64_t>(cols[2], "shot count"));
        rec.plus_counts.push_back(parse_number<std::int64_t>(cols[3], "plus count"));
        y.push_back(parse_number<double>(cols[4], "y value"));
    }
    if (y.size() != plan.size())
        throw FormatError("record CSV has " + std::to_string(y.size()) + " rows, plan has " +
                          std::to_string(plan.size()));
    rec.y = Eigen::Map<const RVector>(y.data(), static_cast<Eigen::Index>(y.size()));
    rec.exact = std::all_of(rec.shots.begin(), rec.shots.end(), [](std::int64_t s) { return s == 0; });
    return rec;
}

std::string diagnostics_csv(const ReconstructionResult& result) {
    std::string out = "iteration,objective,residual\n";
    const std::size_t k = std::max(result.objective_history.size(), result.residual_history.size());
    for (std::size_t i = 0; i < k; ++i) {
        const double obj = i < result.objective_history.size() ? result.objective_history[i] : NAN;
        const double res = i < result.residual_history.size() ? result.residual_history[i] : NAN;
        out += std::to_string(i + 1) + "," + format_double(obj) + "," + format_double(res) + "\n";
    }
    return out;
}

std::string reconstruction_summary_json(const ReconstructionResult& result, double weight) {
    json j;
    j["estimator"] = to_string(result.estimator);
    j["weight"] = weight;
    j["iterations"] = result.iterations_used;
    j["converged"] = result.converged;
    j["renormalized"] = result.renormalized;
    j["trace_above_one"] = result.trace_above_one;
    j["feasibility_residual"] = result.feasibility_residual;
    j["trace"] = result.rho_hat.trace();
    return j.dump(1) + "\n";
}

std::string certification_to_json(const FidelityEstimate& est) {
    json j;
    j["F_hat"] = est.value;
    j["F_hat_untruncated"] = est.untruncated;
    j["eps"] = est.epsilon;
    j["delta"] = est.delta;
    j["copies_used"] = est.copies_used;
    j["eps0"] = est.matrix_element_error;
    j["delta_jk"] = est.element_failure_probability;
    j["rank"] = est.rank;
    json rows = json::array();
    for (const auto& e : est.elements) {
        rows.push_back({{"j", e.j},
                        {"k", e.k},
                        {"re", e.estimate.value.real()},
                        {"im", e.estimate.value.imag()},
                        {"samples", e.estimate.samples},
                        {"copies", e.estimate.copies}});
    }
    j["per_element"] = rows;
    return j.dump(1) + "\n";
}

std::string channel_to_json(const QuantumChannel& channel) {
    json j;
    j["n"] = channel.num_qubits();
    json kraus = json::array();
    for (const auto& k : channel.kraus()) kraus.push_back(matrix_entries(k));
    j["kraus"] = kraus;
    return j.dump(1) + "\n";
}

QuantumChannel channel_from_json(const std::string& text) {
    const json j = parse(text, "channel");
    const int n = field<int>(j, "n", "channel");
    const std::size_t d = dimension_of(n);
    if (!j.contains("kraus") || !j["kraus"].is_array()) throw FormatError("channel JSON lacks 'kraus'");
    std::vector<Matrix> kraus;
    for (const auto& k : j["kraus"]) kraus.push_back(matrix_from_entries(k, d, "Kraus operator"));
    return {n, std::move(kraus)};
}

std::string packing_manifest_json(const PackingSet& set, std::uint64_t seed,
                                  const std::vector<std::string>& state_files) {
    json j;
    j["d"] = set.states.empty() ? 0 : set.states.front().dim();
    j["r"] = set.rank;
    j["epsilon"] = set.epsilon;
    j["alpha"] = set.alpha;
    j["target_size"] = set.target_size;
    j["size"] = set.states.size();
    j["attempts"] = set.attempts;
    j["rejections"] = set.rejections;
    j["bias_rejections"] = set.bias_rejections;
    j["separation_rejections"] = set.separation_rejections;
    j["group"] = to_string(set.group);
    j["complete"] = set.complete;
    j["seed"] = seed;
    j["states"] = state_files;
    return j.dump(1) + "\n";
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
    std::string out =
        "m,estimator,mean_fidelity,std_fidelity,mean_trace_distance,std_trace_distance,"
        "mean_solver_seconds\n";
    for (const auto& r : rows) {
        out += std::to_string(r.m) + "," + to_string(r.estimator) + "," + format_double(r.mean_fidelity) +
               "," + format_double(r.std_fidelity) + "," + format_double(r.mean_trace_distance) + "," +
               format_double(r.std_trace_distance) + "," + format_double(r.mean_solver_seconds) + "\n";
    }
    return out;
}

std::string trials_csv(const std::vector<TrialRecord>& trials) {
    std::string out =
        "trial,m,estimator,master_seed,sub_seed,weight,fidelity,trace_distance,iterations,converged\n";
    for (const auto& t : trials) {
        out += std::to_string(t.trial) + "," + std::to_string(t.m) + "," + to_string(t.estimator) + "," +
               std::to_string(t.master_seed) + "," + std::to_string(t.sub_seed) + "," +
               format_double(t.weight) + "," + format_double(t.fidelity) + "," +
               format_double(t.trace_distance) + "," + std::to_string(t.iterations) + "," +
               (t.converged ? "1" : "0") + "\n";
    }
    return out;
}

std::string budget_csv(const std::vector<BudgetRow>& rows) {
    std::string out = "m,t,shots_per_setting\n";
    for (const auto& r : rows)
        out += std::to_string(r.m) + "," + std::to_string(r.copies) + "," +
               std::to_string(r.shots_per_setting) + "\n";
    return out;
}

}  // namespace cstomo::io
