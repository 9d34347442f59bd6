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

#ifndef MMCAST_SIM_ENGINE_HPP
#define MMCAST_SIM_ENGINE_HPP

#include "mmcast/beamformer.hpp"
#include "mmcast/config.hpp"
#include "mmcast/pilot.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mmcast
{
    /// Geometry and large-scale gains of one drop.
    struct LargeScaleRealization
    {
        CellLayout layout;
        UserPositions users;
        GainTensor beta;
        std::uint64_t seed = 0;
    };

    LargeScaleRealization draw_realization(const NetworkConfig &config, std::uint64_t large_seed);

    /// Received-power split of one user: p_i |g_{i,i,k}^H w_i|^2 and sum_{j != i} p_j |g_{j,i,k}^H w_j|^2.
    struct DownlinkTerms
    {
        double desired = 0.0;
        double interference = 0.0;
    };

    DownlinkTerms downlink_terms(const ChannelState &channels, const std::vector<Beamformer<double>> &beamformers,
                                 const RVector<double> &tx_power, int cell, int user);

    /// Downlink SINR with per-BS transmit powers p_i (already E_i / M).
    double downlink_sinr(const ChannelState &channels, const std::vector<Beamformer<double>> &beamformers,
                         const RVector<double> &tx_power, double sigma2, int cell, int user);

    /// One beamformer per BS as the scheme would build it from this channel realization.
    /// Pilot noise for BS j is seeded from derive_seed(pilot_seed, {j}).
    std::vector<Beamformer<double>> build_beamformers(const NetworkConfig &config, Scheme scheme,
                                                      const ChannelState &channels, std::uint64_t pilot_seed);

    /// Per-user M -> infinity SINR (linear) of `cell` under the scheme.
    RVector<double> asymptotic_sinr(const NetworkConfig &config, Scheme scheme, const GainTensor &beta,
                                    const RVector<double> &bs_power, int cell);

    struct TrialResult
    {
        std::vector<double> per_user_sinr_db; // evaluated cell
        double min_sinr_db = 0.0;
        Scheme scheme = Scheme::PerfectOptimal;
        std::uint64_t large_seed = 0;
        std::uint64_t small_seed = 0;
    };

    /// Finite-M trial: h from small_seed, pilot noise from a seed derived from it.
    TrialResult run_trial(const NetworkConfig &config, Scheme scheme, const LargeScaleRealization &realization,
                          std::uint64_t small_seed);
    TrialResult run_trial(const NetworkConfig &config, Scheme scheme, std::uint64_t large_seed,
                          std::uint64_t small_seed);

    struct CdfPoint
    {
        double value = 0.0;
        double probability = 0.0;
        bool operator==(const CdfPoint &) const = default;
    };

    /// Right-continuous empirical CDF; tied samples collapse into one step.
    std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);

    struct SinrReport
    {
        Scheme scheme = Scheme::PerfectOptimal;
        std::vector<double> samples; // min-SINR in dB, one per large-scale realization
        std::vector<CdfPoint> cdf;
        double mean_min_sinr_db = 0.0;
        std::string fingerprint;
    };

    /// Seeds of trial t: large = derive_seed(master, {t, 0}), small draw s = derive_seed(master, {t, 1, s}).
    std::uint64_t large_seed_for(std::uint64_t master_seed, int trial);
    std::uint64_t small_seed_for(std::uint64_t master_seed, int trial, int draw);

    /// Asymptotic configs evaluate the closed forms once per realization (num_small unused).
    /// Finite-M configs average the linear min-SINR over num_small draws per realization, then
    /// convert to dB. Trials run on `threads` workers (0: hardware concurrency); output does not
    /// depend on the worker count.
    SinrReport run_experiment(const NetworkConfig &config, Scheme scheme, int num_large, int num_small,
                              std::uint64_t master_seed, int threads = 0);
}

#endif
