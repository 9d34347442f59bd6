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

#ifndef MMCAST_CONFIG_HPP
#define MMCAST_CONFIG_HPP

#include "mmcast/channel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmcast
{
    enum class Scheme
    {
        PerfectOptimal,           // perfect CSI, closed-form optimal combining
        PerfectEqual,             // perfect CSI, xi = 1
        IndividualPilot,          // per-user pilots reused across cells, xi = 1
        Composite,                // per-cell shared pilot, every user at p_u
        CompositePowerControlled, // per-cell shared pilot, optimal pilot powers
        CompositeAsync,           // per-cell shared pilot with asynchronous arrivals
    };

    std::string_view to_string(Scheme scheme);
    Scheme parse_scheme(std::string_view name);
    bool uses_composite_pilots(Scheme scheme);

    /// Scenario parameters. Powers are stored in Watts; the text format accepts _dbw, _dbm and _w
    /// suffixed keys.
    struct NetworkConfig
    {
        int cells = 7;
        int users_per_cell = 3;
        std::optional<int> antennas;            // empty: evaluate the M -> infinity limits
        std::vector<int> antenna_sweep{100, 300, 500};
        double radius_m = 1000.0;
        double exclusion_m = 100.0;
        FadingConfig fading;
        std::vector<double> bs_power_w{1000.0}; // E, one common value or one per cell
        std::vector<double> bs_power_sweep_w;   // E values for sweep scenarios
        double pilot_peak_power_w = 0.0;        // p_u
        std::vector<double> pilot_peak_sweep_w; // p_u values for pilot power sweeps
        int pilot_length = 8;
        Scheme scheme = Scheme::CompositePowerControlled;
        std::vector<double> async_offsets_s;    // K (reused in every cell) or N*K entries, row-major by cell
        double async_symbol_s = 50e-9;
        bool async_power_control = true;
        int num_large = 200;
        int num_small = 100;
        std::uint64_t master_seed = 1;
        std::string output_dir = "out";

        NetworkConfig();

        /// Throws ConfigError naming the offending key.
        void validate() const;
        /// Additional checks for running `scheme` (pilot length, async offsets).
        void validate_for(Scheme scheme) const;

        bool asymptotic() const { return !antennas.has_value(); }
        double sigma2() const { return noise_power(fading); }
        double sigma_p2() const { return pilot_noise_power(fading); }
        /// E_i for every cell.
        RVector<double> bs_power_vector() const;
        /// N x K per-user offsets for the asynchronous pilot model.
        RMatrix<double> async_offset_matrix() const;

        bool operator==(const NetworkConfig &) const = default;
    };

    /// Parses `key = value` lines ('#' starts a comment). Unknown or repeated keys are errors.
    /// Missing keys keep their defaults. The result is validated, including for its own scheme.
    NetworkConfig parse_config(std::string_view text);

    /// Sets one key on an existing config (no validation).
    void apply_setting(NetworkConfig &config, std::string_view key, std::string_view value);

    /// Canonical text form; parse_config(serialize_config(c)) == c.
    std::string serialize_config(const NetworkConfig &config);

    /// 64-bit FNV-1a of the canonical text, as 16 hex digits.
    std::string config_fingerprint(const NetworkConfig &config);
}

#endif
