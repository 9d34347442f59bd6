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

#include "mmcast/channel.hpp"

#include <cmath>
#include <string>

namespace mmcast
{
    void FadingConfig::validate() const
    {
        const auto finite = [](double v) { return std::isfinite(v); };
        if (!finite(pathloss_intercept_db) || !finite(pathloss_slope) || !finite(shadow_sigma_db) ||
            !finite(penetration_loss_db) || !finite(noise_psd_dbm_hz))
            throw ConfigError("fading: loss terms must be finite");
        if (shadow_sigma_db < 0.0)
            throw ConfigError("fading: shadow_sigma_db must be nonnegative");
        if (!(bandwidth_hz > 0.0) || !finite(bandwidth_hz))
            throw ConfigError("fading: bandwidth_hz must be positive");
        if (!(pilot_noise_ratio > 0.0) || !finite(pilot_noise_ratio))
            throw ConfigError("fading: pilot_noise_ratio must be positive");
    }

    double path_loss_db(double distance_m, const FadingConfig &fading)
    {
        if (!(distance_m > 0.0))
            throw DomainError("path_loss_db: distance must be positive");
        return fading.pathloss_intercept_db + fading.pathloss_slope * std::log10(distance_m / 1000.0) +
               fading.penetration_loss_db;
    }

    double large_scale_gain(double distance_m, const FadingConfig &fading, Rng &rng)
    {
        const double deterministic = path_loss_db(distance_m, fading);
        double shadow = 0.0;
        if (fading.shadow_sigma_db > 0.0)
            shadow = std::normal_distribution<double>(0.0, fading.shadow_sigma_db)(rng);
        return db_to_linear(-(deterministic + shadow));
    }

    double large_scale_gain(double distance_m, const FadingConfig &fading, std::uint64_t rng_seed)
    {
        Rng rng(rng_seed);
        return large_scale_gain(distance_m, fading, rng);
    }

    double noise_power(const FadingConfig &fading)
    {
        return dbm_to_watts(fading.noise_psd_dbm_hz + linear_to_db(fading.bandwidth_hz));
    }

    double pilot_noise_power(const FadingConfig &fading)
    {
        return fading.pilot_noise_ratio * noise_power(fading);
    }

    CVector<double> draw_small_scale(Index antennas, Rng &rng)
    {
        if (antennas < 1)
            throw ConfigError("draw_small_scale: antennas must be positive");
        CVector<double> h(antennas);
        fill_complex_gaussian(h, rng);
        return h;
    }

    CVector<double> draw_small_scale(Index antennas, std::uint64_t rng_seed)
    {
        Rng rng(rng_seed);
        return draw_small_scale(antennas, rng);
    }

    CVector<double> ChannelState::g(int bs, int cell, int user) const
    {
        return std::sqrt(beta(bs, cell, user)) * h[bs].col(cell * users_per_cell() + user);
    }

    Eigen::MatrixXcd ChannelState::channels(int bs, int cell) const
    {
        const int k_users = users_per_cell();
        Eigen::MatrixXcd out = h[bs].middleCols(cell * k_users, k_users);
        for (int k = 0; k < k_users; ++k)
            out.col(k) *= std::sqrt(beta(bs, cell, k));
        return out;
    }

    GainTensor draw_large_scale(const CellLayout &layout, const UserPositions &positions,
                                const FadingConfig &fading, Rng &rng)
    {
        if (positions.num_cells() != layout.num_cells)
            throw ConfigError("draw_large_scale: positions cover " + std::to_string(positions.num_cells()) +
                              " cells, layout has " + std::to_string(layout.num_cells));
        const int n_cells = layout.num_cells;
        const int k_users = positions.users_per_cell();
        for (const auto &cell : positions.pos)
            if (static_cast<int>(cell.size()) != k_users)
                throw ConfigError("draw_large_scale: unequal user counts per cell");

        GainTensor beta(n_cells, k_users);
        for (int bs = 0; bs < n_cells; ++bs)
            for (int cell = 0; cell < n_cells; ++cell)
                for (int k = 0; k < k_users; ++k)
                    beta(bs, cell, k) =
                        large_scale_gain(distance_m(layout.centers[bs], positions.pos[cell][k]), fading, rng);
        return beta;
    }

    GainTensor draw_large_scale(const CellLayout &layout, const UserPositions &positions,
                                const FadingConfig &fading, std::uint64_t rng_seed)
    {
        Rng rng(rng_seed);
        return draw_large_scale(layout, positions, fading, rng);
    }

    ChannelState draw_channels(GainTensor beta, Index antennas, std::uint64_t small_seed)
    {
        if (antennas < 1)
            throw ConfigError("draw_channels: antennas must be positive");
        ChannelState state;
        const int n_cells = beta.num_cells();
        const int k_users = beta.users_per_cell();
        state.beta = std::move(beta);
        state.h.reserve(n_cells);
        for (int bs = 0; bs < n_cells; ++bs)
        {
            Rng rng(derive_seed(small_seed, {static_cast<std::uint64_t>(bs)}));
            Eigen::MatrixXcd hb(antennas, n_cells * k_users);
            fill_complex_gaussian(hb, rng);
            state.h.push_back(std::move(hb));
        }
        return state;
    }

    ChannelState assemble_channels(const CellLayout &layout, const UserPositions &positions,
                                   const FadingConfig &fading, Index antennas, ChannelSeeds seeds)
    {
        return draw_channels(draw_large_scale(layout, positions, fading, seeds.large), antennas, seeds.small);
    }
}
