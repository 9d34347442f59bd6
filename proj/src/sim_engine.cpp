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

#include "mmcast/sim_engine.hpp"

#include "mmcast/sinr_analytic.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace mmcast
{
    namespace
    {
        constexpr std::uint64_t kPilotNoiseStream = 0x70696c6f74ULL;

        RMatrix<double> pilot_power_matrix(const NetworkConfig &config, Scheme scheme, const GainTensor &beta)
        {
            const int n_cells = beta.num_cells();
            const int k_users = beta.users_per_cell();
            const double p_u = config.pilot_peak_power_w;
            const bool controlled = scheme == Scheme::CompositePowerControlled ||
                                    (scheme == Scheme::CompositeAsync && config.async_power_control);
            RMatrix<double> powers = RMatrix<double>::Constant(n_cells, k_users, p_u);
            if (controlled)
                for (int l = 0; l < n_cells; ++l)
                    powers.row(l) = optimal_pilot_powers(beta.own(l), p_u).transpose();
            return powers;
        }

        AsyncProfile profile_for(const NetworkConfig &config)
        {
            return make_async_profile(config.async_offset_matrix(), config.async_symbol_s);
        }

        void check_beta(const NetworkConfig &config, const GainTensor &beta)
        {
            if (beta.num_cells() != config.cells || beta.users_per_cell() != config.users_per_cell)
                throw ConfigError("channel dimensions do not match the configuration");
        }

        // Runs body(t) for t in [0, count) on a small worker pool; rethrows the first failure.
        template <typename Body>
        void parallel_for(int count, int threads, Body body)
        {
            int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
            workers = std::clamp(workers, 1, std::max(count, 1));
            if (workers == 1)
            {
                for (int t = 0; t < count; ++t)
                    body(t);
                return;
            }
            std::atomic<int> next{0};
            std::exception_ptr failure;
            std::mutex failure_lock;
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (int t = next++; t < count; t = next++)
                    {
                        try
                        {
                            body(t);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(failure_lock);
                            if (!failure)
                                failure = std::current_exception();
                            next = count;
                        }
                    }
                });
            for (auto &th : pool)
                th.join();
            if (failure)
                std::rethrow_exception(failure);
        }
    }

    LargeScaleRealization draw_realization(const NetworkConfig &config, std::uint64_t large_seed)
    {
        LargeScaleRealization r;
        r.seed = large_seed;
        r.layout = build_hex_layout(config.cells, config.radius_m);
        Rng rng(large_seed);
        r.users = drop_users(r.layout, config.users_per_cell, config.exclusion_m, rng);
        r.beta = draw_large_scale(r.layout, r.users, config.fading, rng);
        return r;
    }

    DownlinkTerms downlink_terms(const ChannelState &channels, const std::vector<Beamformer<double>> &beamformers,
                                 const RVector<double> &tx_power, int cell, int user)
    {
        const int n_cells = channels.num_cells();
        if (static_cast<int>(beamformers.size()) != n_cells || tx_power.size() != n_cells)
            throw ConfigError("downlink_sinr: need one beamformer and one power per BS");
        if (cell < 0 || cell >= n_cells || user < 0 || user >= channels.users_per_cell())
            throw DomainError("downlink_sinr: cell/user index out of range");
        for (const auto &bf : beamformers)
            if (bf.w.size() != channels.antennas())
                throw ConfigError("downlink_sinr: beamformer length differs from antenna count");

        const Index column = static_cast<Index>(cell) * channels.users_per_cell() + user;
        DownlinkTerms terms;
        for (int j = 0; j < n_cells; ++j)
        {
            // g^H w with g = sqrt(beta) h; Eigen's dot conjugates its left operand
            const double gain = channels.beta(j, cell, user) *
                                std::norm(channels.h[j].col(column).dot(beamformers[j].w));
            if (j == cell)
                terms.desired = tx_power(j) * gain;
            else
                terms.interference += tx_power(j) * gain;
        }
        return terms;
    }

    double downlink_sinr(const ChannelState &channels, const std::vector<Beamformer<double>> &beamformers,
                         const RVector<double> &tx_power, double sigma2, int cell, int user)
    {
        const auto terms = downlink_terms(channels, beamformers, tx_power, cell, user);
        return terms.desired / (terms.interference + sigma2);
    }

    std::vector<Beamformer<double>> build_beamformers(const NetworkConfig &config, Scheme scheme,
                                                      const ChannelState &channels, std::uint64_t pilot_seed)
    {
        check_beta(config, channels.beta);
        const int n_cells = channels.num_cells();
        const int k_users = channels.users_per_cell();
        const double sigma_p2 = config.sigma_p2();
        const RVector<double> ones = RVector<double>::Ones(k_users);
        const auto noise_seed = [&](int bs) { return derive_seed(pilot_seed, {static_cast<std::uint64_t>(bs)}); };

        std::vector<Beamformer<double>> out;
        out.reserve(n_cells);
        switch (scheme)
        {
        case Scheme::PerfectOptimal:
            for (int j = 0; j < n_cells; ++j)
                out.push_back(optimal_beamformer_perfect(channels.channels(j, j), channels.beta.own(j), j));
            break;
        case Scheme::PerfectEqual:
            for (int j = 0; j < n_cells; ++j)
                out.push_back(combine_beamformer(channels.channels(j, j), ones, BeamScheme::PerfectEqual, j));
            break;
        case Scheme::IndividualPilot:
        {
            const auto book = make_pilot_book<double>(PilotAssignment::PerUser, n_cells, k_users,
                                                      config.pilot_length, config.pilot_peak_power_w);
            for (int j = 0; j < n_cells; ++j)
            {
                const Eigen::MatrixXcd rx = uplink_rx(channels, book, j, sigma_p2, noise_seed(j));
                Eigen::MatrixXcd estimates(channels.antennas(), k_users);
                for (int k = 0; k < k_users; ++k)
                    estimates.col(k) = estimate_individual(rx, book, k);
                out.push_back(combine_beamformer(estimates, ones, BeamScheme::EstimatedIndividual, j));
            }
            break;
        }
        case Scheme::Composite:
        case Scheme::CompositePowerControlled:
        case Scheme::CompositeAsync:
        {
            const auto book = make_pilot_book<double>(PilotAssignment::PerCell, n_cells, k_users,
                                                      config.pilot_length, config.pilot_peak_power_w,
                                                      pilot_power_matrix(config, scheme, channels.beta));
            std::optional<AsyncProfile> profile;
            if (scheme == Scheme::CompositeAsync)
                profile = profile_for(config);
            for (int j = 0; j < n_cells; ++j)
            {
                const CMatrix<double> rows =
                    profile ? received_pilot_rows(book, *profile, j) : received_pilot_rows(book, j);
                const Eigen::MatrixXcd rx = uplink_rx(channels, book, rows, j, sigma_p2, noise_seed(j));
                out.push_back(beamformer_from_estimate(estimate_composite(rx, book, j),
                                                       BeamScheme::EstimatedComposite, j));
            }
            break;
        }
        }
        return out;
    }

    RVector<double> asymptotic_sinr(const NetworkConfig &config, Scheme scheme, const GainTensor &beta,
                                    const RVector<double> &bs_power, int cell)
    {
        check_beta(config, beta);
        const int n_cells = beta.num_cells();
        const int k_users = beta.users_per_cell();
        if (bs_power.size() != n_cells)
            throw ConfigError("asymptotic_sinr: one BS power per cell required");
        const double sigma2 = config.sigma2();
        const double sigma_p2 = config.sigma_p2();
        const double p_u = config.pilot_peak_power_w;
        const double omega = config.pilot_length;
        const RVector<double> own = beta.own(cell);

        RVector<double> out(k_users);
        switch (scheme)
        {
        case Scheme::PerfectOptimal:
            out = sinr_perfect_csi(optimal_lambdas(own), own, bs_power(cell), sigma2);
            break;
        case Scheme::PerfectEqual:
            out = sinr_perfect_csi(combining_weights(RVector<double>::Ones(k_users), own).lambda, own,
                                   bs_power(cell), sigma2);
            break;
        case Scheme::IndividualPilot:
        {
            const RMatrix<double> xis = RMatrix<double>::Ones(n_cells, k_users);
            for (int k = 0; k < k_users; ++k)
                out(k) = sinr_contaminated(beta, xis, bs_power, p_u, omega, sigma_p2, sigma2, cell, k);
            break;
        }
        case Scheme::Composite:
        case Scheme::CompositePowerControlled:
        {
            const RMatrix<double> powers = pilot_power_matrix(config, scheme, beta);
            out = sinr_composite(own, powers.row(cell).transpose(), bs_power(cell), omega, sigma_p2, sigma2);
            break;
        }
        case Scheme::CompositeAsync:
        {
            const RMatrix<double> powers = pilot_power_matrix(config, scheme, beta);
            const auto book = make_pilot_book<double>(PilotAssignment::PerCell, n_cells, k_users,
                                                      config.pilot_length, p_u, powers);
            const auto kappas = async_kappas(book, profile_for(config));
            for (int k = 0; k < k_users; ++k)
                out(k) = sinr_async(beta, powers, kappas, bs_power, omega, sigma_p2, sigma2, cell, k);
            break;
        }
        }
        return out;
    }

    TrialResult run_trial(const NetworkConfig &config, Scheme scheme, const LargeScaleRealization &realization,
                          std::uint64_t small_seed)
    {
        if (config.asymptotic())
            throw ConfigError("run_trial: antennas must be finite for a Monte Carlo trial");
        config.validate_for(scheme);
        const Index antennas = *config.antennas;
        const ChannelState channels = draw_channels(realization.beta, antennas, small_seed);
        const auto beamformers =
            build_beamformers(config, scheme, channels, derive_seed(small_seed, {kPilotNoiseStream}));
        const RVector<double> tx_power = config.bs_power_vector() / static_cast<double>(antennas);

        const int cell = realization.layout.evaluated_cell;
        TrialResult result;
        result.scheme = scheme;
        result.large_seed = realization.seed;
        result.small_seed = small_seed;
        result.per_user_sinr_db.reserve(config.users_per_cell);
        for (int k = 0; k < config.users_per_cell; ++k)
            result.per_user_sinr_db.push_back(
                linear_to_db(downlink_sinr(channels, beamformers, tx_power, config.sigma2(), cell, k)));
        result.min_sinr_db = *std::min_element(result.per_user_sinr_db.begin(), result.per_user_sinr_db.end());
        return result;
    }

    TrialResult run_trial(const NetworkConfig &config, Scheme scheme, std::uint64_t large_seed,
                          std::uint64_t small_seed)
    {
        return run_trial(config, scheme, draw_realization(config, large_seed), small_seed);
    }

    std::vector<CdfPoint> empirical_cdf(std::vector<double> samples)
    {
        if (samples.empty())
            throw DomainError("empirical_cdf: no samples");
        std::sort(samples.begin(), samples.end());
        const auto n = static_cast<double>(samples.size());
        std::vector<CdfPoint> cdf;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double p = static_cast<double>(i + 1) / n;
            if (!cdf.empty() && cdf.back().value == samples[i])
                cdf.back().probability = p;
            else
                cdf.push_back({samples[i], p});
        }
        return cdf;
    }

    std::uint64_t large_seed_for(std::uint64_t master_seed, int trial)
    {
        return derive_seed(master_seed, {static_cast<std::uint64_t>(trial), 0});
    }

    std::uint64_t small_seed_for(std::uint64_t master_seed, int trial, int draw)
    {
        return derive_seed(master_seed, {static_cast<std::uint64_t>(trial), 1, static_cast<std::uint64_t>(draw)});
    }

    SinrReport run_experiment(const NetworkConfig &config, Scheme scheme, int num_large, int num_small,
                              std::uint64_t master_seed, int threads)
    {
        if (num_large < 1 || (!config.asymptotic() && num_small < 1))
            throw ConfigError("run_experiment: trial counts must be positive");
        config.validate();
        config.validate_for(scheme);

        std::vector<double> samples(num_large);
        const RVector<double> bs_power = config.bs_power_vector();
        parallel_for(num_large, threads, [&](int t) {
            const auto realization = draw_realization(config, large_seed_for(master_seed, t));
            const int cell = realization.layout.evaluated_cell;
            if (config.asymptotic())
            {
                samples[t] = linear_to_db(asymptotic_sinr(config, scheme, realization.beta, bs_power, cell).minCoeff());
                return;
            }
            double mean_linear = 0.0;
            for (int s = 0; s < num_small; ++s)
                mean_linear += db_to_linear(run_trial(config, scheme, realization,
                                                      small_seed_for(master_seed, t, s)).min_sinr_db);
            samples[t] = linear_to_db(mean_linear / num_small);
        });

        SinrReport report;
        report.scheme = scheme;
        report.samples = samples;
        report.cdf = empirical_cdf(samples);
        double total = 0.0;
        for (double v : samples)
            total += v;
        report.mean_min_sinr_db = total / num_large;
        report.fingerprint = config_fingerprint(config);
        return report;
    }
}
