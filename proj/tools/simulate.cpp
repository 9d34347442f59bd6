// SPDX-License-Identifier: Apache-2.0
//
// mmcast: multicell massive MIMO multicast simulator
// Copyright (C) 2026 The mmcast authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// simulate <scenario> [--config FILE] [--set key=value ...] [--seed INT] [--out DIR]

#include "mmcast/config.hpp"
#include "mmcast/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw mmcast::IoError("cannot read config file " + path);
        std::ostringstream text;
        text << in.rdbuf();
        return text.str();
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Multicell massive MIMO multicast simulator"};
    std::string scenario;
    std::string config_path;
    std::vector<std::string> settings;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    int threads = 0;
    bool list = false;

    app.add_option("scenario", scenario, "Preset to run (experiment, fig2-cdf-perfect, fig3/4-cdf-schemes, "
                                         "fig5/6-sweep-E, fig7-sweep-pu, fig10-finite-M)");
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--set", settings, "Override one key, e.g. --set antennas=300 (repeatable)")->take_all();
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--threads", threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    app.add_flag("--list", list, "Print scenario names and exit");
    CLI11_PARSE(app, argc, argv);

    try
    {
        if (list)
        {
            for (const auto &name : mmcast::scenario_names())
                std::cout << name << "\n";
            return 0;
        }
        if (scenario.empty())
            throw mmcast::UsageError("missing scenario name (see --list)");
        const std::string preset = mmcast::canonical_scenario(scenario);

        mmcast::NetworkConfig config = config_path.empty() ? mmcast::NetworkConfig{}
                                                           : mmcast::parse_config(read_file(config_path));
        for (const auto &s : settings)
        {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw mmcast::UsageError("--set expects key=value, got '" + s + "'");
            mmcast::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
        }
        if (seed)
            config.master_seed = *seed;
        if (out_dir)
            config.output_dir = *out_dir;
        config.validate();
        if (preset == "experiment")
            config.validate_for(config.scheme);

        for (const auto &path : mmcast::run_scenario(preset, config, config.output_dir, threads))
            std::cout << path.string() << "\n";
        return 0;
    }
    catch (const mmcast::UsageError &e)
    {
        std::cerr << "simulate: usage error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "simulate: error: " << e.what() << "\n";
        return 1;
    }
}
