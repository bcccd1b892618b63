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


#include "config.hpp"

#include <algorithm>

#include "cstomo/io.hpp"
#include "json.hpp"

namespace cstomo::cli {

namespace {

std::string option_for(const std::string& key) {
    if (key == "T") return "--total-time";
    if (key == "c") return "--switching-cost";
    if (key == "output_path") return "--output";
    std::string k = key;
    std::replace(k.begin(), k.end(), '_', '-');
    return "--" + k;
}

bool passed(const std::vector<std::string>& args, const std::string& opt) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == opt || a.rfind(opt + "=", 0) == 0;
    });
}

std::string scalar(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    if (v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) return io::format_double(v.get<double>());
    throw io::FormatError("config key '" + key + "' must hold a string, number, boolean or array");
}

}  // namespace

std::string find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return "";
}

std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& user_args) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw io::FormatError("malformed config '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw io::FormatError("config '" + path + "' must be a JSON object");

    std::vector<std::string> tokens;
    for (const auto& [key, value] : j.items()) {
        if (key == "config") continue;
        const std::string opt = option_for(key);
        if (passed(user_args, opt)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back(opt);
        } else if (value.is_array()) {
            if (value.empty()) continue;
            tokens.push_back(opt);
            for (const auto& v : value) tokens.push_back(scalar(v, key));
        } else if (!value.is_null()) {
            tokens.push_back(opt);
            tokens.push_back(scalar(value, key));
        }
    }
    return tokens;
}

}  // namespace cstomo::cli
