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

#include "mmcast/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

namespace mmcast
{
    namespace
    {
        constexpr std::array<std::pair<Scheme, std::string_view>, 6> kSchemeNames{{
            {Scheme::PerfectOptimal, "perfect-optimal"},
            {Scheme::PerfectEqual, "perfect-equal"},
            {Scheme::IndividualPilot, "individual-pilot"},
            {Scheme::Composite, "composite"},
            {Scheme::CompositePowerControlled, "composite-power-controlled"},
            {Scheme::CompositeAsync, "composite-async"},
        }};

        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        [[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected)
        {
            throw ConfigError(std::string(key) + ": expected " + std::string(expected) + ", got '" +
                              std::string(value) + "'");
        }

        double to_double(std::string_view key, std::string_view text)
        {
            const auto s = trim(text);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
                bad_value(key, text, "a number");
            return v;
        }

        long long to_integer(std::string_view key, std::string_view text)
        {
            const auto s = trim(text);
            long long v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
                bad_value(key, text, "an integer");
            return v;
        }

        int to_int(std::string_view key, std::string_view text)
        {
            const long long v = to_integer(key, text);
            if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
                bad_value(key, text, "an integer in range");
            return static_cast<int>(v);
        }

        std::uint64_t to_seed(std::string_view key, std::string_view text)
        {
            const auto s = trim(text);
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
                bad_value(key, text, "a nonnegative integer");
            return v;
        }

        bool to_bool(std::string_view key, std::string_view text)
        {
            const auto s = trim(text);
            if (s == "true" || s == "1" || s == "yes")
                return true;
            if (s == "false" || s == "0" || s == "no")
                return false;
            bad_value(key, text, "true or false");
        }

        std::vector<double> to_doubles(std::string_view key, std::string_view text)
        {
            std::vector<double> out;
            const auto s = trim(text);
            if (s.empty())
                return out;
            std::size_t start = 0;
            while (start <= s.size())
            {
                const auto comma = s.find(',', start);
                const auto item = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
                out.push_back(to_double(key, item));
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            return out;
        }

        std::vector<int> to_ints(std::string_view key, std::string_view text)
        {
            std::vector<int> out;
            for (double v : to_doubles(key, text))
            {
                if (v != std::floor(v))
                    bad_value(key, text, "a list of integers");
                out.push_back(static_cast<int>(v));
            }
            return out;
        }

        std::vector<double> map_values(std::vector<double> v, double (*f)(double))
        {
            std::transform(v.begin(), v.end(), v.begin(), f);
            return v;
        }

        double dbw_to_w(double dbw) { return db_to_linear(dbw); }

        std::string fmt(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string fmt_list(const std::vector<double> &v)
        {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i)
                out += (i ? "," : "") + fmt(v[i]);
            return out;
        }

        std::string fmt_list(const std::vector<int> &v)
        {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i)
                out += (i ? "," : "") + std::to_string(v[i]);
            return out;
        }

        using Setter = std::function<void(NetworkConfig &, std::string_view, std::string_view)>;

        const std::map<std::string, Setter, std::less<>> &setters()
        {
            static const std::map<std::string, Setter, std::less<>> table = [] {
                std::map<std::string, Setter, std::less<>> t;
                t["cells"] = [](auto &c, auto k, auto v) { c.cells = to_int(k, v); };
                t["users_per_cell"] = [](auto &c, auto k, auto v) { c.users_per_cell = to_int(k, v); };
                t["antennas"] = [](auto &c, auto k, auto v) {
                    if (trim(v) == "asymptotic")
                        c.antennas.reset();
                    else
                        c.antennas = to_int(k, v);
                };
                t["antenna_sweep"] = [](auto &c, auto k, auto v) { c.antenna_sweep = to_ints(k, v); };
                t["radius_m"] = [](auto &c, auto k, auto v) { c.radius_m = to_double(k, v); };
                t["exclusion_m"] = [](auto &c, auto k, auto v) { c.exclusion_m = to_double(k, v); };
                t["pathloss_intercept_db"] = [](auto &c, auto k, auto v) {
                    c.fading.pathloss_intercept_db = to_double(k, v);
                };
                t["pathloss_slope"] = [](auto &c, auto k, auto v) { c.fading.pathloss_slope = to_double(k, v); };
                t["shadow_sigma_db"] = [](auto &c, auto k, auto v) { c.fading.shadow_sigma_db = to_double(k, v); };
                t["penetration_loss_db"] = [](auto &c, auto k, auto v) {
                    c.fading.penetration_loss_db = to_double(k, v);
                };
                t["noise_psd_dbm_hz"] = [](auto &c, auto k, auto v) { c.fading.noise_psd_dbm_hz = to_double(k, v); };
                t["bandwidth_hz"] = [](auto &c, auto k, auto v) { c.fading.bandwidth_hz = to_double(k, v); };
                t["pilot_noise_ratio"] = [](auto &c, auto k, auto v) {
                    c.fading.pilot_noise_ratio = to_double(k, v);
                };
                t["E_w"] = [](auto &c, auto k, auto v) { c.bs_power_w = to_doubles(k, v); };
                t["E_dbw"] = [](auto &c, auto k, auto v) { c.bs_power_w = map_values(to_doubles(k, v), dbw_to_w); };
                t["E_dbm"] = [](auto &c, auto k, auto v) {
                    c.bs_power_w = map_values(to_doubles(k, v), dbm_to_watts);
                };
                t["E_sweep_w"] = [](auto &c, auto k, auto v) { c.bs_power_sweep_w = to_doubles(k, v); };
                t["E_sweep_dbw"] = [](auto &c, auto k, auto v) {
                    c.bs_power_sweep_w = map_values(to_doubles(k, v), dbw_to_w);
                };
                t["E_sweep_dbm"] = [](auto &c, auto k, auto v) {
                    c.bs_power_sweep_w = map_values(to_doubles(k, v), dbm_to_watts);
                };
                t["p_u_w"] = [](auto &c, auto k, auto v) { c.pilot_peak_power_w = to_double(k, v); };
                t["p_u_dbw"] = [](auto &c, auto k, auto v) { c.pilot_peak_power_w = dbw_to_w(to_double(k, v)); };
                t["p_u_dbm"] = [](auto &c, auto k, auto v) { c.pilot_peak_power_w = dbm_to_watts(to_double(k, v)); };
                t["p_u_sweep_w"] = [](auto &c, auto k, auto v) { c.pilot_peak_sweep_w = to_doubles(k, v); };
                t["p_u_sweep_dbw"] = [](auto &c, auto k, auto v) {
                    c.pilot_peak_sweep_w = map_values(to_doubles(k, v), dbw_to_w);
                };
                t["p_u_sweep_dbm"] = [](auto &c, auto k, auto v) {
                    c.pilot_peak_sweep_w = map_values(to_doubles(k, v), dbm_to_watts);
                };
                t["pilot_length"] = [](auto &c, auto k, auto v) { c.pilot_length = to_int(k, v); };
                t["scheme"] = [](auto &c, auto, auto v) { c.scheme = parse_scheme(trim(v)); };
                t["async_offsets_s"] = [](auto &c, auto k, auto v) { c.async_offsets_s = to_doubles(k, v); };
                t["async_symbol_s"] = [](auto &c, auto k, auto v) { c.async_symbol_s = to_double(k, v); };
                t["async_power_control"] = [](auto &c, auto k, auto v) { c.async_power_control = to_bool(k, v); };
                t["num_large"] = [](auto &c, auto k, auto v) { c.num_large = to_int(k, v); };
                t["num_small"] = [](auto &c, auto k, auto v) { c.num_small = to_int(k, v); };
                t["master_seed"] = [](auto &c, auto k, auto v) { c.master_seed = to_seed(k, v); };
                t["output_dir"] = [](auto &c, auto, auto v) { c.output_dir = std::string(trim(v)); };
                return t;
            }();
            return table;
        }

        // Keys that set the same field; at most one per document.
        std::string_view canonical_key(std::string_view key)
        {
            static const std::map<std::string_view, std::string_view> groups{
                {"E_dbw", "E"},       {"E_dbm", "E"},       {"E_w", "E"},
                {"E_sweep_dbw", "Es"}, {"E_sweep_dbm", "Es"}, {"E_sweep_w", "Es"},
                {"p_u_dbw", "pu"},    {"p_u_dbm", "pu"},    {"p_u_w", "pu"},
                {"p_u_sweep_dbw", "pus"}, {"p_u_sweep_dbm", "pus"}, {"p_u_sweep_w", "pus"},
            };
            const auto it = groups.find(key);
            return it == groups.end() ? key : it->second;
        }

        void require(bool ok, std::string_view key, std::string_view message)
        {
            if (!ok)
                throw ConfigError(std::string(key) + ": " + std::string(message));
        }

        bool all_positive(const std::vector<double> &v)
        {
            return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
        }
    }

    std::string_view to_string(Scheme scheme)
    {
        for (const auto &[s, name] : kSchemeNames)
            if (s == scheme)
                return name;
        return "unknown";
    }

    Scheme parse_scheme(std::string_view name)
    {
        for (const auto &[s, n] : kSchemeNames)
            if (n == name)
                return s;
        throw ConfigError("scheme: unknown scheme '" + std::string(name) + "'");
    }

    bool uses_composite_pilots(Scheme scheme)
    {
        return scheme == Scheme::Composite || scheme == Scheme::CompositePowerControlled ||
               scheme == Scheme::CompositeAsync;
    }

    NetworkConfig::NetworkConfig()
        : bs_power_sweep_w{db_to_linear(0.0), db_to_linear(10.0), db_to_linear(20.0), db_to_linear(30.0),
                           db_to_linear(40.0), db_to_linear(50.0), db_to_linear(60.0)},
          pilot_peak_power_w(db_to_linear(2.0)),
          pilot_peak_sweep_w{db_to_linear(2.0), db_to_linear(4.0), db_to_linear(8.0)}
    {
    }

    void NetworkConfig::validate() const
    {
        require(cells == 1 || cells == 3 || cells == 7, "cells", "must be 1, 3 or 7");
        require(users_per_cell >= 1, "users_per_cell", "must be positive");
        require(!antennas || *antennas >= 1, "antennas", "must be positive or 'asymptotic'");
        require(std::all_of(antenna_sweep.begin(), antenna_sweep.end(), [](int m) { return m >= 1; }),
                "antenna_sweep", "entries must be positive");
        require(radius_m > 0.0 && std::isfinite(radius_m), "radius_m", "must be positive");
        require(exclusion_m >= 0.0 && exclusion_m < radius_m, "exclusion_m", "must lie in [0, radius_m)");
        fading.validate();
        require(!bs_power_w.empty() && all_positive(bs_power_w), "E", "must be positive");
        require(bs_power_w.size() == 1 || static_cast<int>(bs_power_w.size()) == cells, "E",
                "give one common value or one per cell");
        require(all_positive(bs_power_sweep_w), "E_sweep", "entries must be positive");
        require(pilot_peak_power_w > 0.0 && std::isfinite(pilot_peak_power_w), "p_u", "must be positive");
        require(all_positive(pilot_peak_sweep_w), "p_u_sweep", "entries must be positive");
        require(pilot_length >= 1, "pilot_length", "must be positive");
        require(async_symbol_s > 0.0 && std::isfinite(async_symbol_s), "async_symbol_s", "must be positive");
        require(async_offsets_s.empty() || static_cast<int>(async_offsets_s.size()) == users_per_cell ||
                    static_cast<int>(async_offsets_s.size()) == cells * users_per_cell,
                "async_offsets_s", "give K or N*K offsets");
        require(num_large >= 1, "num_large", "must be positive");
        require(num_small >= 1, "num_small", "must be positive");
    }

    void NetworkConfig::validate_for(Scheme s) const
    {
        if (uses_composite_pilots(s))
            require(pilot_length >= cells, "pilot_length",
                    "composite pilots need pilot_length >= cells (" + std::to_string(cells) + ")");
        if (s == Scheme::IndividualPilot)
            require(pilot_length >= users_per_cell, "pilot_length",
                    "individual pilots need pilot_length >= users_per_cell (" + std::to_string(users_per_cell) +
                        ")");
        if (s == Scheme::CompositeAsync)
            require(!async_offsets_s.empty(), "async_offsets_s", "required by the composite-async scheme");
    }

    RVector<double> NetworkConfig::bs_power_vector() const
    {
        if (bs_power_w.size() == 1)
            return RVector<double>::Constant(cells, bs_power_w.front());
        return Eigen::Map<const RVector<double>>(bs_power_w.data(), static_cast<Index>(bs_power_w.size()));
    }

    RMatrix<double> NetworkConfig::async_offset_matrix() const
    {
        RMatrix<double> out(cells, users_per_cell);
        if (async_offsets_s.empty())
            return RMatrix<double>::Zero(cells, users_per_cell);
        for (int l = 0; l < cells; ++l)
            for (int k = 0; k < users_per_cell; ++k)
                out(l, k) = static_cast<int>(async_offsets_s.size()) == users_per_cell
                                ? async_offsets_s[k]
                                : async_offsets_s[static_cast<std::size_t>(l) * users_per_cell + k];
        return out;
    }

    void apply_setting(NetworkConfig &config, std::string_view key, std::string_view value)
    {
        const auto &table = setters();
        const auto it = table.find(trim(key));
        if (it == table.end())
            throw ConfigError("unknown configuration key '" + std::string(trim(key)) + "'");
        it->second(config, it->first, value);
    }

    NetworkConfig parse_config(std::string_view text)
    {
        NetworkConfig config;
        std::set<std::string, std::less<>> seen;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const auto nl = text.find('\n', pos);
            auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            const auto key = trim(line.substr(0, eq));
            const auto group = std::string(canonical_key(key));
            if (!seen.insert(group).second)
                throw ConfigError(std::string(key) + ": set more than once (line " + std::to_string(line_no) + ")");
            apply_setting(config, key, line.substr(eq + 1));
        }
        config.validate();
        config.validate_for(config.scheme);
        return config;
    }

    std::string serialize_config(const NetworkConfig &c)
    {
        std::string out;
        const auto put = [&](std::string_view key, const std::string &value) {
            out += key;
            out += " = ";
            out += value;
            out += '\n';
        };
        put("cells", std::to_string(c.cells));
        put("users_per_cell", std::to_string(c.users_per_cell));
        put("antennas", c.antennas ? std::to_string(*c.antennas) : "asymptotic");
        put("antenna_sweep", fmt_list(c.antenna_sweep));
        put("radius_m", fmt(c.radius_m));
        put("exclusion_m", fmt(c.exclusion_m));
        put("pathloss_intercept_db", fmt(c.fading.pathloss_intercept_db));
        put("pathloss_slope", fmt(c.fading.pathloss_slope));
        put("shadow_sigma_db", fmt(c.fading.shadow_sigma_db));
        put("penetration_loss_db", fmt(c.fading.penetration_loss_db));
        put("noise_psd_dbm_hz", fmt(c.fading.noise_psd_dbm_hz));
        put("bandwidth_hz", fmt(c.fading.bandwidth_hz));
        put("pilot_noise_ratio", fmt(c.fading.pilot_noise_ratio));
        put("E_w", fmt_list(c.bs_power_w));
        put("E_sweep_w", fmt_list(c.bs_power_sweep_w));
        put("p_u_w", fmt(c.pilot_peak_power_w));
        put("p_u_sweep_w", fmt_list(c.pilot_peak_sweep_w));
        put("pilot_length", std::to_string(c.pilot_length));
        put("scheme", std::string(to_string(c.scheme)));
        put("async_offsets_s", fmt_list(c.async_offsets_s));
        put("async_symbol_s", fmt(c.async_symbol_s));
        put("async_power_control", c.async_power_control ? "true" : "false");
        put("num_large", std::to_string(c.num_large));
        put("num_small", std::to_string(c.num_small));
        put("master_seed", std::to_string(c.master_seed));
        put("output_dir", c.output_dir);
        return out;
    }

    std::string config_fingerprint(const NetworkConfig &config)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : serialize_config(config))
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
}
