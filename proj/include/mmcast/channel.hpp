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

#ifndef MMCAST_CHANNEL_HPP
#define MMCAST_CHANNEL_HPP

#include "mmcast/geometry.hpp"
#include "mmcast/random.hpp"

#include <cstdint>
#include <vector>

namespace mmcast
{
    /// Large-scale fading and noise parameters. Defaults are the urban macro values:
    /// PL = 128.1 + 37.6 log10(d_km), 8 dB log-normal shadowing, 20 dB penetration,
    /// -174 dBm/Hz over 20 MHz, pilot noise at 0.1 x data noise.
    struct FadingConfig
    {
        double pathloss_intercept_db = 128.1;
        double pathloss_slope = 37.6;
        double shadow_sigma_db = 8.0;
        double penetration_loss_db = 20.0;
        double noise_psd_dbm_hz = -174.0;
        double bandwidth_hz = 20e6;
        double pilot_noise_ratio = 0.1;

        void validate() const;
        bool operator==(const FadingConfig &) const = default;
    };

    /// Deterministic part of the loss (path loss + penetration), dB.
    double path_loss_db(double distance_m, const FadingConfig &fading);

    /// Linear gain beta = 10^(-(PL + X_shadow + penetration)/10), X_shadow ~ N(0, sigma^2) dB.
    double large_scale_gain(double distance_m, const FadingConfig &fading, Rng &rng);
    double large_scale_gain(double distance_m, const FadingConfig &fading, std::uint64_t rng_seed);

    /// Downlink receiver noise power sigma^2 in Watts.
    double noise_power(const FadingConfig &fading);
    /// Uplink pilot noise power sigma_p^2 = pilot_noise_ratio * sigma^2.
    double pilot_noise_power(const FadingConfig &fading);

    /// M i.i.d. CN(0, 1) entries.
    CVector<double> draw_small_scale(Index antennas, Rng &rng);
    CVector<double> draw_small_scale(Index antennas, std::uint64_t rng_seed);

    /// Per-link quantity x[bs][cell][user], dense N x N x K (gains, kappa coefficients).
    template <typename T>
    class LinkTensor
    {
    public:
        LinkTensor() = default;
        LinkTensor(int num_cells, int users_per_cell, T fill = T(0))
            : cells_(num_cells), users_(users_per_cell),
              data_(static_cast<std::size_t>(num_cells) * num_cells * users_per_cell, fill)
        {
        }

        int num_cells() const { return cells_; }
        int users_per_cell() const { return users_; }

        T &operator()(int bs, int cell, int user) { return data_[index(bs, cell, user)]; }
        T operator()(int bs, int cell, int user) const { return data_[index(bs, cell, user)]; }

        /// Gains from BS `bs` towards the K users of `cell`.
        Eigen::Matrix<T, Eigen::Dynamic, 1> toward(int bs, int cell) const
        {
            Eigen::Matrix<T, Eigen::Dynamic, 1> out(users_);
            for (int k = 0; k < users_; ++k)
                out(k) = (*this)(bs, cell, k);
            return out;
        }

        /// Own-cell gains beta[i][i][*].
        Eigen::Matrix<T, Eigen::Dynamic, 1> own(int cell) const { return toward(cell, cell); }

        bool operator==(const LinkTensor &) const = default;

    private:
        std::size_t index(int bs, int cell, int user) const
        {
            return (static_cast<std::size_t>(bs) * cells_ + cell) * users_ + user;
        }

        int cells_ = 0;
        int users_ = 0;
        std::vector<T> data_;
    };

    using GainTensor = LinkTensor<double>;

    /// One channel realization. h[bs] is M x (N*K); column cell*K + user holds h_{bs,cell,user}.
    struct ChannelState
    {
        GainTensor beta;
        std::vector<Eigen::MatrixXcd> h;

        int num_cells() const { return beta.num_cells(); }
        int users_per_cell() const { return beta.users_per_cell(); }
        Index antennas() const { return h.empty() ? 0 : h.front().rows(); }

        /// g_{bs,cell,user} = sqrt(beta) h
        CVector<double> g(int bs, int cell, int user) const;
        /// M x K matrix of g_{bs,cell,k}.
        Eigen::MatrixXcd channels(int bs, int cell) const;
    };

    /// Large-scale seed drives shadowing; small-scale seed drives h. The two are independent,
    /// so h can be redrawn while beta stays fixed.
    struct ChannelSeeds
    {
        std::uint64_t large = 0;
        std::uint64_t small = 0;
    };

    GainTensor draw_large_scale(const CellLayout &layout, const UserPositions &positions,
                                const FadingConfig &fading, Rng &rng);
    GainTensor draw_large_scale(const CellLayout &layout, const UserPositions &positions,
                                const FadingConfig &fading, std::uint64_t rng_seed);

    /// Fresh small-scale vectors on top of a fixed gain tensor.
    ChannelState draw_channels(GainTensor beta, Index antennas, std::uint64_t small_seed);

    ChannelState assemble_channels(const CellLayout &layout, const UserPositions &positions,
                                   const FadingConfig &fading, Index antennas, ChannelSeeds seeds);
}

#endif
