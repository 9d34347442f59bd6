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

#ifndef MMCAST_CSV_HPP
#define MMCAST_CSV_HPP

#include "mmcast/sim_engine.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace mmcast
{
    /// One curve of a parameter sweep, e.g. (E_dbw, mean_min_sinr_db).
    struct SweepTable
    {
        std::string x_label;
        std::string y_label;
        std::vector<std::pair<double, double>> rows;
    };

    /// CSV text: a '#' comment line, a header row, then rows sorted ascending with 6 decimals.
    /// Throws DomainError on an empty report.
    std::string format_csv(const SinrReport &report, const std::string &comment);
    std::string format_csv(const SweepTable &table, const std::string &comment);

    /// Writes format_csv(...) to `path`. Throws IoError if the file cannot be written.
    void emit_csv(const SinrReport &report, const std::filesystem::path &path, const std::string &comment = "");
    void emit_csv(const SweepTable &table, const std::filesystem::path &path, const std::string &comment = "");

    void write_text_file(const std::filesystem::path &path, const std::string &text);
}

#endif
