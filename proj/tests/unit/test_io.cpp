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


#include <gtest/gtest.h>

#include <cmath>

#include "cstomo/io.hpp"

using namespace cstomo;

TEST(Io, FormatDoubleRoundTrips) {
    Rng rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng) * std::pow(10.0, double(int(rng() % 40) - 20));
        EXPECT_EQ(std::stod(io::format_double(x)), x);
    }
    EXPECT_EQ(io::format_double(std::nan("")), "nan");
    EXPECT_EQ(io::format_double(0.5), "0.5");
}

TEST(Io, DensityRoundTrip) {
    Rng rng(2);
    const auto rho = random_mixed_state(2, 2, rng);
    const auto back = io::density_from_json(io::density_to_json(rho));
    EXPECT_EQ(back.matrix(), rho.matrix());
    EXPECT_THROW(io::density_from_json("{\"n\": 1}"), io::FormatError);
    EXPECT_THROW(io::density_from_json("not json"), io::FormatError);
    EXPECT_THROW(io::density_from_json(R"({"n":1,"dim":2,"entries":[[1,0],[0,0],[0,0]]})"), io::FormatError);
    EXPECT_THROW(io::density_from_json(R"({"n":1,"dim":2,"entries":[[1,0],[1,0],[0,0],[0,0]]})"), NotPhysical);
}

TEST(Io, PlanRoundTrip) {
    Rng rng(3);
    auto plan = MeasurementPlan::random(3, 10, false, rng, true);
    plan.seed = 77;
    const auto back = io::plan_from_json(io::plan_to_json(plan));
    EXPECT_EQ(back.paulis(), plan.paulis());
    EXPECT_EQ(back.seed, plan.seed);
    EXPECT_TRUE(back.identity_excluded);
    EXPECT_DOUBLE_EQ(back.normalization(), plan.normalization());
    EXPECT_THROW(io::plan_from_json(R"({"n":2,"paulis":["XYZ"]})"), io::FormatError);
}

TEST(Io, RecordRoundTrip) {
    Rng rng(4);
    const auto plan = MeasurementPlan::random(2, 6, false, rng);
    const auto rho = haar_random_pure(2, rng);
    for (const auto& rec : {simulate_measurements(plan, rho, 600, rng), exact_measurements(plan, rho)}) {
        const auto text = io::record_to_csv(plan, rec);
        EXPECT_EQ(text.substr(0, text.find('\n')), "setting_index,pauli_string,shots,plus_counts,y");
        const auto back = io::record_from_csv(text, plan);
        EXPECT_EQ(back.exact, rec.exact);
        EXPECT_EQ(back.shots, rec.shots);
        EXPECT_EQ(back.plus_counts, rec.plus_counts);
        EXPECT_EQ(back.y, rec.y);
        EXPECT_EQ(io::record_to_csv(plan, back), text);
    }
    EXPECT_THROW(io::record_from_csv("a,b\n", plan), io::FormatError);
}

TEST(Io, ChannelRoundTrip) {
    Rng rng(5);
    const auto e = random_channel(1, 2, rng);
    const auto back = io::channel_from_json(io::channel_to_json(e));
    ASSERT_EQ(back.kraus().size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(back.kraus()[k], e.kraus()[k]);
    EXPECT_THROW(io::channel_from_json("{\"n\":1}"), io::FormatError);
}

TEST(Io, BenchmarkCsvHeader) {
    BenchmarkRow row;
    row.m = 32;
    row.mean_fidelity = 0.9;
    row.mean_solver_seconds = std::nan("");
    const auto text = io::benchmark_csv({row});
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "m,estimator,mean_fidelity,std_fidelity,mean_trace_distance,std_trace_distance,mean_solver_seconds");
    EXPECT_NE(text.find("nan"), std::string::npos);
}

TEST(Io, MissingFile) {
    EXPECT_THROW(io::read_file("/dev/null/sub/file.json"), io::FormatError);
    EXPECT_THROW(io::write_file("/dev/null/sub/file.json", "x"), io::FormatError);
}
