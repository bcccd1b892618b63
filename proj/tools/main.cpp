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


// cstomo: command-line front end for the compressed-sensing tomography library.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "cstomo/io.hpp"
#include "json.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, const std::string& command, int code) {
    nlohmann::json j;
    j["error"] = {{"kind", kind}, {"message", message}, {"command", command}};
    std::cerr << j.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cstomo;

    CLI::App app{"Compressed-sensing quantum state and process tomography"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cstomo 0.1.0");

    std::map<std::string, cli::Action> actions;
    std::vector<CLI::App*> subs;
    auto reg = [&](const std::string& name, cli::Action a) {
        subs.push_back(app.get_subcommand(name));
        actions[name] = std::move(a);
    };
    reg("simulate", cli::add_simulate(app));
    reg("reconstruct", cli::add_reconstruct(app));
    reg("certify", cli::add_certify(app));
    reg("process", cli::add_process(app));
    reg("packing", cli::add_packing(app));
    reg("benchmark", cli::add_benchmark(app));

    std::vector<std::string> args(argv + 1, argv + argc);
    std::string command = args.empty() ? "" : args.front();

    try {
        const std::string config = cli::find_config_path(args);
        if (!config.empty() && actions.count(command)) {
            const std::vector<std::string> user(args.begin() + 1, args.end());
            auto extra = cli::config_tokens(config, user);
            args.insert(args.begin() + 1, extra.begin(), extra.end());
        }
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail("usage", e.what(), command, 2);
    } catch (const io::FormatError& e) {
        return fail("config", e.what(), command, 2);
    }

    try {
        for (auto* s : subs)
            if (s->parsed()) actions.at(s->get_name())();
    } catch (const InfeasiblePlan& e) {
        return fail("infeasible", e.what(), command, 3);
    } catch (const io::FormatError& e) {
        return fail("io", e.what(), command, 4);
    } catch (const InvalidArgument& e) {
        return fail("invalid_argument", e.what(), command, 2);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), command, 1);
    }
    return 0;
}
