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

// Reference computations for the tests. These deliberately avoid the library's own
// formulas: loops instead of Eigen expressions, numerical search instead of closed forms.

#ifndef MMCAST_TESTS_ORACLES_HPP
#define MMCAST_TESTS_ORACLES_HPP

#include "mmcast/beamformer.hpp"
#include "mmcast/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle
{
    using mmcast::Index;

    /// Best min_k lambda_k beta_k over the simplex grid with the given step (K <= 3).
    inline double simplex_grid_best(const std::vector<double> &beta, double step)
    {
        const int n = static_cast<int>(std::lround(1.0 / step));
        const auto k = beta.size();
        double best = 0.0;
        if (k == 1)
            return beta[0];
        if (k == 2)
        {
            for (int a = 0; a <= n; ++a)
            {
                const double l0 = a * step;
                best = std::max(best, std::min(l0 * beta[0], (1.0 - l0) * beta[1]));
            }
            return best;
        }
        for (int a = 0; a <= n; ++a)
            for (int b = 0; a + b <= n; ++b)
            {
                const double l0 = a * step, l1 = b * step, l2 = std::max(0.0, 1.0 - l0 - l1);
                best = std::max(best, std::min({l0 * beta[0], l1 * beta[1], l2 * beta[2]}));
            }
        return best;
    }

    /// p_i |sum_m conj(g_m) w_m|^2 summed term by term, antenna by antenna.
    inline double downlink_sinr(const mmcast::ChannelState &ch, const std::vector<mmcast::Beamformer<double>> &bfs,
                                const std::vector<double> &p, double sigma2, int cell, int user)
    {
        double desired = 0.0, interference = 0.0;
        const Index col = static_cast<Index>(cell) * ch.users_per_cell() + user;
        for (int j = 0; j < ch.num_cells(); ++j)
        {
            std::complex<double> acc = 0.0;
            const double amp = std::sqrt(ch.beta(j, cell, user));
            for (Index m = 0; m < ch.antennas(); ++m)
                acc += std::conj(amp * ch.h[j](m, col)) * bfs[j].w(m);
            const double power = p[j] * std::norm(acc);
            (j == cell ? desired : interference) += power;
        }
        return desired / (interference + sigma2);
    }

    /// Trapezoid-rule overlap of a unit-energy rectangular pulse on [0, T) with its copy delayed by `offset`.
    inline double pulse_overlap(double offset, double T, int steps = 200000)
    {
        const double amp = 1.0 / std::sqrt(T);
        const auto a = [&](double t) { return (t >= 0.0 && t < T) ? amp : 0.0; };
        const double h = T / steps;
        double sum = 0.0;
        for (int i = 0; i <= steps; ++i)
        {
            const double t = i * h;
            const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
            sum += w * a(t) * a(t - offset);
        }
        return sum * h;
    }

    /// sup_x |F_a(x) - F_b(x)| between two empirical CDFs.
    inline double ks_distance(std::vector<double> a, std::vector<double> b)
    {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::vector<double> xs = a;
        xs.insert(xs.end(), b.begin(), b.end());
        double sup = 0.0;
        for (double x : xs)
        {
            const double fa = double(std::upper_bound(a.begin(), a.end(), x) - a.begin()) / a.size();
            const double fb = double(std::upper_bound(b.begin(), b.end(), x) - b.begin()) / b.size();
            sup = std::max(sup, std::abs(fa - fb));
        }
        return sup;
    }

    inline double median(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        const auto n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    }

    /// Gains spread over the dynamic range of a macro cell, 10^-12 .. 10^-17.
    inline mmcast::RVector<double> random_betas(std::mt19937_64 &rng, int k)
    {
        std::uniform_real_distribution<double> exponent(-17.0, -12.0);
        mmcast::RVector<double> out(k);
        for (int i = 0; i < k; ++i)
            out(i) = std::pow(10.0, exponent(rng));
        return out;
    }

    /// Full N x N x K tensor with own-cell links stronger on average than cross links.
    inline mmcast::GainTensor random_tensor(std::mt19937_64 &rng, int n, int k)
    {
        std::uniform_real_distribution<double> own(-15.5, -12.0), cross(-18.0, -14.5);
        mmcast::GainTensor beta(n, k);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                for (int u = 0; u < k; ++u)
                    beta(i, l, u) = std::pow(10.0, i == l ? own(rng) : cross(rng));
        return beta;
    }

    inline double rel_diff(double a, double b)
    {
        return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    }
}

#endif
