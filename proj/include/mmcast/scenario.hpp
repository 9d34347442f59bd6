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

#ifndef MMCAST_SCENARIO_HPP
#define MMCAST_SCENARIO_HPP

#include "mmcast/config.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmcast
{
    class UsageError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Preset names accepted by run_scenario, without aliases.
    std::vector<std::string> scenario_names();

    /// Maps a name or alias (e.g. "fig5/6-sweep-E") to its preset name. Throws UsageError.
    std::string canonical_scenario(const std::string &name);

    /// Runs the preset on `config`, writing one CSV per curve plus manifest.txt into `out_dir`.
    /// Returns the written paths, manifest last.
    std::vector<std::filesystem::path> run_scenario(const std::string &name, const NetworkConfig &config,
                                                    const std::filesystem::path &out_dir, int threads = 0);
}

#endif
