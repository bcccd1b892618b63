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

#include <string>
#include <vector>

namespace cstomo::cli {

/// Turns the JSON object in `path` into command-line tokens for the
/// subcommand, skipping keys the user already passed explicitly. Keys map to
/// long options with '_' read as '-'; a few benchmark keys have aliases
/// (T, c, output_path). Booleans become bare flags when true.
std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& user_args);

/// Returns the value following --config (or --config=...), or "".
std::string find_config_path(const std::vector<std::string>& args);

}  // namespace cstomo::cli
