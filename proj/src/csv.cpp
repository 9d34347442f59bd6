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

#include "mmcast/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace mmcast
{
    namespace
    {
        std::string fixed6(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", v);
            return buf;
        }

        std::string comment_line(const std::string &comment)
        {
            std::string out = "#";
            if (!comment.empty())
                out += " " + comment;
            std::replace(out.begin(), out.end(), '\n', ' ');
            return out + "\n";
        }
    }

    std::string format_csv(const SinrReport &report, const std::string &comment)
    {
        if (report.cdf.empty())
            throw DomainError("emit_csv: empty report");
        auto cdf = report.cdf;
        std::stable_sort(cdf.begin(), cdf.end(),
                         [](const CdfPoint &a, const CdfPoint &b) { return a.value < b.value; });
        std::string out = comment_line(comment) + "sinr_db,probability\n";
        for (const auto &point : cdf)
            out += fixed6(point.value) + "," + fixed6(point.probability) + "\n";
        return out;
    }

    std::string format_csv(const SweepTable &table, const std::string &comment)
    {
        if (table.rows.empty())
            throw DomainError("emit_csv: empty sweep table");
        if (table.x_label.empty() || table.y_label.empty())
            throw ConfigError("emit_csv: sweep table needs column labels");
        auto rows = table.rows;
        std::stable_sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        std::string out = comment_line(comment) + table.x_label + "," + table.y_label + "\n";
        for (const auto &[x, y] : rows)
            out += fixed6(x) + "," + fixed6(y) + "\n";
        return out;
    }

    void write_text_file(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        if (!file)
            throw IoError("cannot open " + path.string() + " for writing");
        file << text;
        file.close();
        if (!file)
            throw IoError("failed writing " + path.string());
    }

    void emit_csv(const SinrReport &report, const std::filesystem::path &path, const std::string &comment)
    {
        write_text_file(path, format_csv(report, comment));
    }

    void emit_csv(const SweepTable &table, const std::filesystem::path &path, const std::string &comment)
    {
        write_text_file(path, format_csv(table, comment));
    }
}
