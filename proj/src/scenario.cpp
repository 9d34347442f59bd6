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

#include "mmcast/scenario.hpp"

#include "mmcast/csv.hpp"
#include "mmcast/sim_engine.hpp"

#include <map>

namespace mmcast
{
    namespace
    {
        using Files = std::vector<std::filesystem::path>;

        const std::vector<Scheme> kCsiSchemes{Scheme::PerfectOptimal, Scheme::CompositePowerControlled,
                                              Scheme::Composite, Scheme::IndividualPilot};

        std::string antennas_tag(const NetworkConfig &c)
        {
            return c.asymptotic() ? "M=asymptotic" : "M=" + std::to_string(*c.antennas);
        }

        SinrReport experiment(const NetworkConfig &c, Scheme scheme, int threads)
        {
            return run_experiment(c, scheme, c.num_large, c.num_small, c.master_seed, threads);
        }

        std::string fmt_db(double watts)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", linear_to_db(watts));
            return buf;
        }

        std::vector<double> require_sweep(const std::vector<double> &values, const char *key)
        {
            if (values.empty())
                throw ConfigError(std::string(key) + ": sweep list is empty");
            return values;
        }

        void cdf_perfect(const NetworkConfig &base, const std::filesystem::path &dir, int threads, Files &files)
        {
            for (int k : {3, 10})
                for (Scheme scheme : {Scheme::PerfectOptimal, Scheme::PerfectEqual})
                {
                    NetworkConfig c = base;
                    c.users_per_cell = k;
                    const auto path = dir / ("fig2-cdf-perfect_K" + std::to_string(k) + "_" +
                                             std::string(to_string(scheme)) + ".csv");
                    emit_csv(experiment(c, scheme, threads), path,
                             "CDF of the per-cell minimum SINR; scheme=" + std::string(to_string(scheme)) +
                                 " K=" + std::to_string(k) + " " + antennas_tag(c) +
                                 "; columns: sinr_db, probability");
                    files.push_back(path);
                }
        }

        void cdf_schemes(const NetworkConfig &c, const std::filesystem::path &dir, int threads, Files &files)
        {
            for (Scheme scheme : kCsiSchemes)
            {
                const auto path = dir / ("fig3-4-cdf-schemes_" + std::string(to_string(scheme)) + ".csv");
                emit_csv(experiment(c, scheme, threads), path,
                         "CDF of the per-cell minimum SINR; scheme=" + std::string(to_string(scheme)) + " K=" +
                             std::to_string(c.users_per_cell) + " " + antennas_tag(c) +
                             "; columns: sinr_db, probability");
                files.push_back(path);
            }
        }

        SweepTable sweep_E(const NetworkConfig &base, Scheme scheme, int threads)
        {
            SweepTable table{"E_dbw", "mean_min_sinr_db", {}};
            for (double e : require_sweep(base.bs_power_sweep_w, "E_sweep_w"))
            {
                NetworkConfig c = base;
                c.bs_power_w = {e};
                table.rows.emplace_back(linear_to_db(e), experiment(c, scheme, threads).mean_min_sinr_db);
            }
            return table;
        }

        void sweep_E_schemes(const NetworkConfig &c, const std::filesystem::path &dir, int threads, Files &files)
        {
            for (Scheme scheme : kCsiSchemes)
            {
                const auto path = dir / ("fig5-6-sweep-E_" + std::string(to_string(scheme)) + ".csv");
                emit_csv(sweep_E(c, scheme, threads), path,
                         "mean minimum SINR versus BS power; scheme=" + std::string(to_string(scheme)) + " K=" +
                             std::to_string(c.users_per_cell) + " " + antennas_tag(c) +
                             "; columns: E_dbw, mean_min_sinr_db");
                files.push_back(path);
            }
        }

        void sweep_pu(const NetworkConfig &base, const std::filesystem::path &dir, int threads, Files &files)
        {
            const auto perfect = dir / "fig7-sweep-pu_perfect-optimal.csv";
            emit_csv(experiment(base, Scheme::PerfectOptimal, threads), perfect,
                     "CDF of the per-cell minimum SINR; scheme=perfect-optimal " + antennas_tag(base) +
                         "; columns: sinr_db, probability");
            files.push_back(perfect);

            SweepTable summary{"p_u_dbw", "mean_min_sinr_db", {}};
            for (double pu : require_sweep(base.pilot_peak_sweep_w, "p_u_sweep_w"))
            {
                NetworkConfig c = base;
                c.pilot_peak_power_w = pu;
                const auto report = experiment(c, Scheme::CompositePowerControlled, threads);
                const auto path = dir / ("fig7-sweep-pu_composite-power-controlled_pu" + fmt_db(pu) + "dBW.csv");
                emit_csv(report, path,
                         "CDF of the per-cell minimum SINR; scheme=composite-power-controlled p_u_dbw=" +
                             fmt_db(pu) + " " + antennas_tag(c) + "; columns: sinr_db, probability");
                files.push_back(path);
                summary.rows.emplace_back(linear_to_db(pu), report.mean_min_sinr_db);
            }
            const auto path = dir / "fig7-sweep-pu_mean.csv";
            emit_csv(summary, path,
                     "mean minimum SINR versus peak pilot power; scheme=composite-power-controlled; columns: "
                     "p_u_dbw, mean_min_sinr_db");
            files.push_back(path);
        }

        void finite_M(const NetworkConfig &base, const std::filesystem::path &dir, int threads, Files &files)
        {
            if (base.antenna_sweep.empty())
                throw ConfigError("antenna_sweep: sweep list is empty");
            std::vector<std::optional<int>> sizes(base.antenna_sweep.begin(), base.antenna_sweep.end());
            sizes.push_back(std::nullopt);
            for (const auto &m : sizes)
            {
                NetworkConfig c = base;
                c.antennas = m;
                const std::string tag = m ? std::to_string(*m) : "asymptotic";
                const auto path = dir / ("fig10-finite-M_M" + tag + ".csv");
                emit_csv(sweep_E(c, Scheme::CompositePowerControlled, threads), path,
                         "mean minimum SINR versus BS power; scheme=composite-power-controlled " + antennas_tag(c) +
                             "; columns: E_dbw, mean_min_sinr_db");
                files.push_back(path);
            }
        }

        void single(const NetworkConfig &c, const std::filesystem::path &dir, int threads, Files &files)
        {
            const auto path = dir / ("experiment_" + std::string(to_string(c.scheme)) + ".csv");
            emit_csv(experiment(c, c.scheme, threads), path,
                     "CDF of the per-cell minimum SINR; scheme=" + std::string(to_string(c.scheme)) + " K=" +
                         std::to_string(c.users_per_cell) + " " + antennas_tag(c) + "; columns: sinr_db, probability");
            files.push_back(path);
        }

        using Runner = void (*)(const NetworkConfig &, const std::filesystem::path &, int, Files &);

        const std::map<std::string, Runner> &registry()
        {
            static const std::map<std::string, Runner> presets{
                {"fig2-cdf-perfect", cdf_perfect}, {"fig3-4-cdf-schemes", cdf_schemes},
                {"fig5-6-sweep-E", sweep_E_schemes}, {"fig7-sweep-pu", sweep_pu},
                {"fig10-finite-M", finite_M},       {"experiment", single},
            };
            return presets;
        }
    }

    std::vector<std::string> scenario_names()
    {
        std::vector<std::string> names;
        for (const auto &[name, runner] : registry())
            names.push_back(name);
        return names;
    }

    std::string canonical_scenario(const std::string &name)
    {
        if (name == "fig3/4-cdf-schemes")
            return "fig3-4-cdf-schemes";
        if (name == "fig5/6-sweep-E")
            return "fig5-6-sweep-E";
        if (registry().count(name))
            return name;
        std::string known;
        for (const auto &n : scenario_names())
            known += (known.empty() ? "" : ", ") + n;
        throw UsageError("unknown scenario '" + name + "' (known: " + known + ")");
    }

    std::vector<std::filesystem::path> run_scenario(const std::string &name, const NetworkConfig &config,
                                                    const std::filesystem::path &out_dir, int threads)
    {
        const std::string preset = canonical_scenario(name);
        config.validate();
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

        Files files;
        registry().at(preset)(config, out_dir, threads, files);

        const auto manifest = out_dir / "manifest.txt";
        write_text_file(manifest, "# scenario = " + preset + "\n# fingerprint = " + config_fingerprint(config) +
                                      "\n" + serialize_config(config));
        files.push_back(manifest);
        return files;
    }
}
