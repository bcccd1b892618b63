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

#include <functional>

#include "CLI11.hpp"

namespace cstomo::cli {

/// Each registrar adds one subcommand and returns the action to run after a
/// successful parse.
using Action = std::function<void()>;

Action add_simulate(CLI::App& app);
Action add_reconstruct(CLI::App& app);
Action add_certify(CLI::App& app);
Action add_process(CLI::App& app);
Action add_packing(CLI::App& app);
Action add_benchmark(CLI::App& app);

}  // namespace cstomo::cli
