// Copyright 2026 The pulsekit Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <functional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "pulsekit/cli_commands.hpp"

namespace {

void add_common_options(CLI::App* cmd, pulsekit::CliOptions* options,
                        std::uint64_t* seed_slot, bool* seed_given) {
    cmd->add_option("--config", options->config_path, "experiment config file (JSON)")
        ->required();
    cmd->add_option("--out", options->out_dir, "output directory")
        ->default_val("out");
    cmd->add_option("--seed", *seed_slot, "override the config seed")
        ->each([seed_given](const std::string&) { *seed_given = true; });
    cmd->add_option("--threads", options->threads, "worker thread count");
    cmd->add_flag("--svg", options->svg, "also emit SVG plots");
    cmd->add_flag("--json", options->json, "also emit JSON report mirrors");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pulse-based quantum machine learning toolkit"};
    app.require_subcommand(1);

    pulsekit::CliOptions options;
    options.threads = static_cast<int>(std::thread::hardware_concurrency());
    if (options.threads < 1) {
        options.threads = 1;
    }
    std::uint64_t seed_value = 0;
    bool seed_given = false;

    struct Subcommand {
        const char* name;
        const char* description;
        std::function<int(const pulsekit::CliOptions&)> run;
    };
    const Subcommand subcommands[] = {
        {"check-lie", "dynamical Lie algebra closure and controllability test",
         pulsekit::run_check_lie},
        {"check-expressivity",
         "subspace-chain expressivity report (necessary condition)",
         pulsekit::run_check_expressivity},
        {"fit", "train a pulse schedule against a target function",
         pulsekit::run_fit},
        {"fliess", "series coefficients of the model output",
         pulsekit::run_fliess},
        {"variance", "gradient variance sweeps (barren plateau diagnostics)",
         pulsekit::run_variance},
    };

    std::function<int(const pulsekit::CliOptions&)> selected;
    for (const Subcommand& sub : subcommands) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.description);
        add_common_options(cmd, &options, &seed_value, &seed_given);
        cmd->callback([&selected, &sub]() { selected = sub.run; });
    }

    CLI11_PARSE(app, argc, argv);

    if (seed_given) {
        options.seed = seed_value;
    }
    return selected(options);
}
