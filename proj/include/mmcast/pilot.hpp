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

#ifndef MMCAST_PILOT_HPP
#define MMCAST_PILOT_HPP

#include "mmcast/channel.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace mmcast
{
    /// PerUser: K sequences reused by the same-index user of every cell (conventional, contaminated).
    /// PerCell: N sequences, all users of a cell share one (composite channel estimation).
    enum class PilotAssignment
    {
        PerUser,
        PerCell,
    };

    /// First `count` rows of the unitary L-point DFT matrix.
    template <typename Real>
    CMatrix<Real> make_orthogonal_pilots(Index count, Index length)
    {
        if (count < 1 || length < 1)
            throw ConfigError("make_orthogonal_pilots: count and length must be positive");
        if (count > length)
            throw ConfigError("make_orthogonal_pilots: " + std::to_string(count) +
                              " orthogonal sequences do not fit in length " + std::to_string(length));
        CMatrix<Real> rows(count, length);
        const Real scale = Real(1) / std::sqrt(Real(length));
        for (Index r = 0; r < count; ++r)
            for (Index m = 0; m < length; ++m)
            {
                // reduce the phase index first so the angle stays in [0, 2pi)
                const Real angle = Real(-2) * std::numbers::pi_v<Real> * Real((r * m) % length) / Real(length);
                rows(r, m) = std::polar(scale, angle);
            }
        return rows;
    }

    template <typename Real>
    struct PilotBook
    {
        CMatrix<Real> sequences; // R x L, orthonormal rows
        PilotAssignment assignment = PilotAssignment::PerCell;
        RMatrix<Real> powers;    // N x K, Watts
        Real peak_power = 0;

        int num_cells() const { return static_cast<int>(powers.rows()); }
        int users_per_cell() const { return static_cast<int>(powers.cols()); }
        Index length() const { return sequences.cols(); }

        Index row_of(int cell, int user) const
        {
            return assignment == PilotAssignment::PerUser ? user : cell;
        }

        void validate() const
        {
            const Index needed = assignment == PilotAssignment::PerUser ? users_per_cell() : num_cells();
            if (length() < needed)
                throw ConfigError("pilot book: length " + std::to_string(length()) + " is shorter than the " +
                                  std::to_string(needed) + " sequences required");
            if (sequences.rows() < needed)
                throw ConfigError("pilot book: not enough sequences for the assignment");
            const Real tol = std::max(Real(1e-12), Real(100) * std::numeric_limits<Real>::epsilon());
            const CMatrix<Real> gram = sequences * sequences.adjoint();
            if (!gram.isIdentity(tol))
                throw ConfigError("pilot book: sequences are not orthonormal");
            if (!(peak_power > 0))
                throw ConfigError("pilot book: peak power must be positive");
            for (Index i = 0; i < powers.size(); ++i)
            {
                const Real p = powers.data()[i];
                if (!(p > 0) || p > peak_power * (Real(1) + tol))
                    throw ConfigError("pilot book: powers must lie in (0, peak_power]");
            }
        }
    };

    /// Book with `length`-symbol DFT sequences. An empty `powers` matrix means every user at peak power.
    template <typename Real>
    PilotBook<Real> make_pilot_book(PilotAssignment assignment, int num_cells, int users_per_cell, Index length,
                                    Real peak_power, RMatrix<Real> powers = {})
    {
        PilotBook<Real> book;
        book.assignment = assignment;
        const Index count = assignment == PilotAssignment::PerUser ? users_per_cell : num_cells;
        if (length < count)
            throw ConfigError(std::string("pilot book: ") +
                              (assignment == PilotAssignment::PerUser ? "per-user pilots need length >= K"
                                                                      : "per-cell pilots need length >= N"));
        book.sequences = make_orthogonal_pilots<Real>(count, length);
        book.peak_power = peak_power;
        if (powers.size() == 0)
            book.powers = RMatrix<Real>::Constant(num_cells, users_per_cell, peak_power);
        else
            book.powers = std::move(powers);
        if (book.powers.rows() != num_cells || book.powers.cols() != users_per_cell)
            throw ConfigError("pilot book: power matrix must be N x K");
        book.validate();
        return book;
    }

    /// Conventional estimate g_hat = Y phi_k^H; keeps every cell's user k (contaminated).
    template <typename Derived, typename Real>
    CVector<Real> estimate_individual(const Eigen::MatrixBase<Derived> &received, const PilotBook<Real> &book, int user)
    {
        if (book.assignment != PilotAssignment::PerUser)
            throw ConfigError("estimate_individual: book is not a per-user pilot book");
        if (user < 0 || user >= book.users_per_cell())
            throw DomainError("estimate_individual: unknown user index " + std::to_string(user));
        if (received.cols() != book.length())
            throw ConfigError("estimate_individual: received block length does not match pilot length");
        return received * book.sequences.row(user).adjoint();
    }

    /// Composite estimate g_hat_c = Y psi_i^H = sum_k sqrt(p_k L) g_{i,i,k} + noise. No other-cell channel survives.
    template <typename Derived, typename Real>
    CVector<Real> estimate_composite(const Eigen::MatrixBase<Derived> &received, const PilotBook<Real> &book, int cell)
    {
        if (book.assignment != PilotAssignment::PerCell)
            throw ConfigError("estimate_composite: book is not a per-cell pilot book");
        if (cell < 0 || cell >= book.num_cells())
            throw DomainError("estimate_composite: unknown cell index " + std::to_string(cell));
        if (received.cols() != book.length())
            throw ConfigError("estimate_composite: received block length does not match pilot length");
        return received * book.sequences.row(cell).adjoint();
    }

    /// Max-min optimal pilot powers for composite estimation: p_k = (beta_min / beta_k)^2 p_u.
    template <typename Derived>
    RVector<typename Derived::Scalar> optimal_pilot_powers(const Eigen::MatrixBase<Derived> &betas,
                                                           typename Derived::Scalar peak_power)
    {
        using Real = typename Derived::Scalar;
        detail::require_positive(betas, "optimal_pilot_powers");
        if (!(peak_power > 0) || !std::isfinite(peak_power))
            throw DomainError("optimal_pilot_powers: peak power must be positive");
        const Real beta_min = betas.minCoeff();
        RVector<Real> out(betas.size());
        for (Index k = 0; k < betas.size(); ++k)
            out(k) = betas(k) == beta_min ? peak_power : (beta_min / betas(k)) * (beta_min / betas(k)) * peak_power;
        return out;
    }

    /// min_k beta_k^2 p_k / (sum_k' beta_k' p_k' + sigma_p^2/omega), the per-cell pilot power objective.
    template <typename DerivedB, typename DerivedP>
    typename DerivedB::Scalar pilot_power_objective(const Eigen::MatrixBase<DerivedB> &betas,
                                                    const Eigen::MatrixBase<DerivedP> &powers,
                                                    typename DerivedB::Scalar sigma_p2, typename DerivedB::Scalar omega)
    {
        const auto denom = betas.dot(powers) + sigma_p2 / omega;
        return (betas.cwiseAbs2().cwiseProduct(powers)).minCoeff() / denom;
    }

    struct OracleSearch
    {
        double span_decades = 8.0; // search p_k in [p_u 10^-span, p_u]
        int refine_rounds = 48;
        int refine_points = 5;     // per dimension, per refinement round
    };

    /// Independent numerical solver for the pilot power max-min problem: exhaustive grid over
    /// log10(p_k / p_u) with spacing `grid_step_decades`, then successive zoomed grids around the
    /// incumbent. The objective is concave in log-power, so zooming converges to the optimum.
    /// K <= 4.
    RVector<double> maxmin_pilot_powers_oracle(const RVector<double> &betas, double peak_power, double sigma_p2,
                                               double omega, double grid_step_decades, OracleSearch search = {});

    /// Correlation of a unit-energy rectangular pulse with itself shifted by `offset`: (T_p - offset)/T_p.
    double pulse_correlation(double offset_s, double symbol_s);

    /// Pilot seen through a matched filter misaligned by offset + shift symbols:
    /// out(m) = rho(offset) psi(m + shift) + rho(T_p - offset) psi(m + shift - 1). Indices
    /// outside the sequence read as zero.
    template <typename Derived>
    CRowVector<typename Derived::RealScalar> polluted_pilot(const Eigen::MatrixBase<Derived> &sequence, double offset_s,
                                                           int shift, double symbol_s)
    {
        using Real = typename Derived::RealScalar;
        const Index len = sequence.size();
        const Real on_time = Real(pulse_correlation(offset_s, symbol_s));
        const Real spill = Real(pulse_correlation(symbol_s - offset_s, symbol_s));
        const auto at = [&](Index m) -> std::complex<Real> {
            return (m >= 0 && m < len) ? std::complex<Real>(sequence(m)) : std::complex<Real>(0);
        };
        CRowVector<Real> out(len);
        for (Index m = 0; m < len; ++m)
            out(m) = on_time * at(m + shift) + spill * at(m + shift - 1);
        return out;
    }

    /// Propagation delays of the pilot phase. delay(bs, cell, user) is tau from user (cell, user)
    /// to BS `bs`; each BS matches its filter to reference_delay[bs].
    struct AsyncProfile
    {
        LinkTensor<double> delay;
        std::vector<double> reference_delay;
        double symbol_s = 0.0;

        struct Misalignment
        {
            double offset_s = 0.0; // in [0, T_p)
            int shift = 0;         // whole-symbol shift applied to the sequence index
        };

        /// Splits tau - tau_ref = q T_p + offset with offset in [0, T_p). A late arrival by q whole
        /// symbols means slot m holds symbol m - q, so the sequence index shift is -q.
        Misalignment misalignment(int bs, int cell, int user) const;
        void validate() const;
    };

    /// Profile from fixed per-user timing offsets (N x K, seconds), the same at every BS; each BS
    /// references the mean offset of its own users.
    AsyncProfile make_async_profile(const RMatrix<double> &user_offsets_s, double symbol_s);

    /// kappa(bs, l, k) = polluted psi_l (as seen by `bs`) . psi_bs^H, for every BS.
    LinkTensor<std::complex<double>> async_kappas(const PilotBook<double> &book, const AsyncProfile &profile);
    /// The N x K block kappa(bs, ., .) for one receiving BS.
    CMatrix<double> async_kappas(const PilotBook<double> &book, const AsyncProfile &profile, int bs);

    /// Rows (cell*K + user) hold the sequence each user's pilot arrives as at BS `bs`.
    CMatrix<double> received_pilot_rows(const PilotBook<double> &book, int bs);
    CMatrix<double> received_pilot_rows(const PilotBook<double> &book, const AsyncProfile &profile, int bs);

    /// Y = sum_{l,k} sqrt(p_{l,k} L) g_{bs,l,k} row_{l,k} + Z, Z entries CN(0, sigma_p^2).
    Eigen::MatrixXcd uplink_rx(const ChannelState &channels, const PilotBook<double> &book,
                               const CMatrix<double> &pilot_rows, int bs, double sigma_p2, std::uint64_t rng_seed);
    Eigen::MatrixXcd uplink_rx(const ChannelState &channels, const PilotBook<double> &book, int bs, double sigma_p2,
                               std::uint64_t rng_seed);
}

#endif
