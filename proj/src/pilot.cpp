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

#include "mmcast/pilot.hpp"

#include <array>
#include <cmath>

namespace mmcast
{
    namespace
    {
        constexpr int kMaxOracleUsers = 4;

        struct OracleState
        {
            int users = 0;
            std::array<double, kMaxOracleUsers> beta{};
            std::array<double, kMaxOracleUsers> beta2{};
            double noise_term = 0.0;
            double best_value = -1.0;
            std::array<double, kMaxOracleUsers> best_log{};

            double evaluate(const std::array<double, kMaxOracleUsers> &p) const
            {
                double denom = noise_term;
                double worst = std::numeric_limits<double>::infinity();
                for (int k = 0; k < users; ++k)
                {
                    denom += beta[k] * p[k];
                    worst = std::min(worst, beta2[k] * p[k]);
                }
                return worst / denom;
            }

            // Exhaustive search over the Cartesian product of per-user candidate log-powers.
            void sweep(const std::array<std::vector<double>, kMaxOracleUsers> &log_grid, double peak_power)
            {
                std::array<std::vector<double>, kMaxOracleUsers> power_grid;
                for (int k = 0; k < users; ++k)
                {
                    power_grid[k].reserve(log_grid[k].size());
                    for (double x : log_grid[k])
                        power_grid[k].push_back(peak_power * std::pow(10.0, x));
                }
                std::array<std::size_t, kMaxOracleUsers> idx{};
                std::array<double, kMaxOracleUsers> p{};
                while (true)
                {
                    for (int k = 0; k < users; ++k)
                        p[k] = power_grid[k][idx[k]];
                    const double value = evaluate(p);
                    if (value > best_value)
                    {
                        best_value = value;
                        for (int k = 0; k < users; ++k)
                            best_log[k] = log_grid[k][idx[k]];
                    }
                    int k = 0;
                    for (; k < users; ++k)
                    {
                        if (++idx[k] < log_grid[k].size())
                            break;
                        idx[k] = 0;
                    }
                    if (k == users)
                        break;
                }
            }
        };
    }

    RVector<double> maxmin_pilot_powers_oracle(const RVector<double> &betas, double peak_power, double sigma_p2,
                                               double omega, double grid_step_decades, OracleSearch search)
    {
        const auto users = static_cast<int>(betas.size());
        if (users > kMaxOracleUsers)
            throw CapabilityError("maxmin_pilot_powers_oracle: exhaustive search supports at most 4 users (got " +
                                  std::to_string(users) + ")");
        detail::require_positive(betas, "maxmin_pilot_powers_oracle");
        if (!(peak_power > 0) || !(omega > 0) || !(sigma_p2 >= 0) || !(grid_step_decades > 0) ||
            !(search.span_decades > 0) || search.refine_points < 2)
            throw DomainError("maxmin_pilot_powers_oracle: invalid search parameters");

        OracleState state;
        state.users = users;
        state.noise_term = sigma_p2 / omega;
        for (int k = 0; k < users; ++k)
        {
            state.beta[k] = betas(k);
            state.beta2[k] = betas(k) * betas(k);
        }

        std::array<std::vector<double>, kMaxOracleUsers> grid;
        const auto coarse = static_cast<int>(std::floor(search.span_decades / grid_step_decades + 1e-9)) + 1;
        for (int k = 0; k < users; ++k)
            for (int j = 0; j < coarse; ++j)
                grid[k].push_back(-j * grid_step_decades);
        state.sweep(grid, peak_power);

        double half_width = grid_step_decades;
        const int pts = search.refine_points;
        for (int round = 0; round < search.refine_rounds; ++round)
        {
            for (int k = 0; k < users; ++k)
            {
                grid[k].clear();
                for (int j = 0; j < pts; ++j)
                {
                    const double x = state.best_log[k] - half_width + 2.0 * half_width * j / (pts - 1);
                    grid[k].push_back(std::clamp(x, -search.span_decades, 0.0));
                }
            }
            state.sweep(grid, peak_power);
            half_width *= 0.5;
        }

        RVector<double> out(users);
        for (int k = 0; k < users; ++k)
            out(k) = peak_power * std::pow(10.0, state.best_log[k]);
        return out;
    }

    double pulse_correlation(double offset_s, double symbol_s)
    {
        if (!(symbol_s > 0.0))
            throw DomainError("pulse_correlation: symbol duration must be positive");
        if (!(offset_s >= 0.0) || offset_s > symbol_s)
            throw DomainError("pulse_correlation: offset must lie in [0, T_p]");
        return (symbol_s - offset_s) / symbol_s;
    }

    AsyncProfile::Misalignment AsyncProfile::misalignment(int bs, int cell, int user) const
    {
        const double d = delay(bs, cell, user) - reference_delay[bs];
        double q = std::floor(d / symbol_s);
        double offset = d - q * symbol_s;
        if (offset >= symbol_s)
        {
            offset -= symbol_s;
            q += 1.0;
        }
        offset = std::max(offset, 0.0);
        return {offset, -static_cast<int>(q)};
    }

    void AsyncProfile::validate() const
    {
        if (!(symbol_s > 0.0) || !std::isfinite(symbol_s))
            throw ConfigError("async profile: symbol duration must be positive");
        if (static_cast<int>(reference_delay.size()) != delay.num_cells())
            throw ConfigError("async profile: one reference delay per BS required");
        for (int i = 0; i < delay.num_cells(); ++i)
        {
            if (!std::isfinite(reference_delay[i]))
                throw ConfigError("async profile: non-finite reference delay");
            for (int l = 0; l < delay.num_cells(); ++l)
                for (int k = 0; k < delay.users_per_cell(); ++k)
                    if (!std::isfinite(delay(i, l, k)))
                        throw ConfigError("async profile: non-finite delay");
        }
    }

    AsyncProfile make_async_profile(const RMatrix<double> &user_offsets_s, double symbol_s)
    {
        const auto n_cells = static_cast<int>(user_offsets_s.rows());
        const auto k_users = static_cast<int>(user_offsets_s.cols());
        AsyncProfile profile;
        profile.symbol_s = symbol_s;
        profile.delay = LinkTensor<double>(n_cells, k_users);
        profile.reference_delay.resize(n_cells);
        for (int bs = 0; bs < n_cells; ++bs)
        {
            profile.reference_delay[bs] = user_offsets_s.row(bs).mean();
            for (int l = 0; l < n_cells; ++l)
                for (int k = 0; k < k_users; ++k)
                    profile.delay(bs, l, k) = user_offsets_s(l, k);
        }
        profile.validate();
        return profile;
    }

    CMatrix<double> async_kappas(const PilotBook<double> &book, const AsyncProfile &profile, int bs)
    {
        if (book.assignment != PilotAssignment::PerCell)
            throw ConfigError("async_kappas: requires a per-cell pilot book");
        const int n_cells = book.num_cells();
        const int k_users = book.users_per_cell();
        if (profile.delay.num_cells() != n_cells || profile.delay.users_per_cell() != k_users)
            throw ConfigError("async_kappas: profile and pilot book dimensions differ");
        const CRowVector<double> own = book.sequences.row(bs);
        CMatrix<double> kappa(n_cells, k_users);
        for (int l = 0; l < n_cells; ++l)
            for (int k = 0; k < k_users; ++k)
            {
                const auto mis = profile.misalignment(bs, l, k);
                const CRowVector<double> seen =
                    polluted_pilot(book.sequences.row(l), mis.offset_s, mis.shift, profile.symbol_s);
                kappa(l, k) = (seen * own.adjoint())(0, 0);
            }
        return kappa;
    }

    LinkTensor<std::complex<double>> async_kappas(const PilotBook<double> &book, const AsyncProfile &profile)
    {
        const int n_cells = book.num_cells();
        const int k_users = book.users_per_cell();
        LinkTensor<std::complex<double>> out(n_cells, k_users);
        for (int bs = 0; bs < n_cells; ++bs)
        {
            const CMatrix<double> block = async_kappas(book, profile, bs);
            for (int l = 0; l < n_cells; ++l)
                for (int k = 0; k < k_users; ++k)
                    out(bs, l, k) = block(l, k);
        }
        return out;
    }

    CMatrix<double> received_pilot_rows(const PilotBook<double> &book, int /*bs*/)
    {
        const int n_cells = book.num_cells();
        const int k_users = book.users_per_cell();
        CMatrix<double> rows(n_cells * k_users, book.length());
        for (int l = 0; l < n_cells; ++l)
            for (int k = 0; k < k_users; ++k)
                rows.row(l * k_users + k) = book.sequences.row(book.row_of(l, k));
        return rows;
    }

    CMatrix<double> received_pilot_rows(const PilotBook<double> &book, const AsyncProfile &profile, int bs)
    {
        const int n_cells = book.num_cells();
        const int k_users = book.users_per_cell();
        CMatrix<double> rows(n_cells * k_users, book.length());
        for (int l = 0; l < n_cells; ++l)
            for (int k = 0; k < k_users; ++k)
            {
                const auto mis = profile.misalignment(bs, l, k);
                rows.row(l * k_users + k) =
                    polluted_pilot(book.sequences.row(book.row_of(l, k)), mis.offset_s, mis.shift, profile.symbol_s);
            }
        return rows;
    }

    Eigen::MatrixXcd uplink_rx(const ChannelState &channels, const PilotBook<double> &book,
                               const CMatrix<double> &pilot_rows, int bs, double sigma_p2, std::uint64_t rng_seed)
    {
        const int n_cells = channels.num_cells();
        const int k_users = channels.users_per_cell();
        if (book.num_cells() != n_cells || book.users_per_cell() != k_users)
            throw ConfigError("uplink_rx: pilot book and channel dimensions differ");
        if (pilot_rows.rows() != n_cells * k_users || pilot_rows.cols() != book.length())
            throw ConfigError("uplink_rx: pilot row table must be (N*K) x L");
        if (bs < 0 || bs >= n_cells)
            throw DomainError("uplink_rx: unknown BS index");
        if (!(sigma_p2 >= 0.0))
            throw DomainError("uplink_rx: pilot noise power must be nonnegative");

        const auto length = static_cast<double>(book.length());
        Eigen::VectorXcd amplitude(n_cells * k_users);
        for (int l = 0; l < n_cells; ++l)
            for (int k = 0; k < k_users; ++k)
                amplitude(l * k_users + k) = std::sqrt(channels.beta(bs, l, k) * book.powers(l, k) * length);

        Eigen::MatrixXcd received = channels.h[bs] * (amplitude.asDiagonal() * pilot_rows);
        if (sigma_p2 > 0.0)
        {
            Rng rng(rng_seed);
            Eigen::MatrixXcd noise(received.rows(), received.cols());
            fill_complex_gaussian(noise, rng, sigma_p2);
            received += noise;
        }
        return received;
    }

    Eigen::MatrixXcd uplink_rx(const ChannelState &channels, const PilotBook<double> &book, int bs, double sigma_p2,
                               std::uint64_t rng_seed)
    {
        return uplink_rx(channels, book, received_pilot_rows(book, bs), bs, sigma_p2, rng_seed);
    }
}
