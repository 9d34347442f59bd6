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

#ifndef MMCAST_SINR_ANALYTIC_HPP
#define MMCAST_SINR_ANALYTIC_HPP

#include "mmcast/channel.hpp"

#include <limits>
#include <type_traits>

// Large-M SINR limits under the power scaling p_i = E_i / M. All values are linear; dB
// conversion happens only at reporting time.

namespace mmcast
{
    namespace detail
    {
        template <typename Real>
        Real simplex_tolerance()
        {
            return std::max(Real(1e-9), Real(100) * std::numeric_limits<Real>::epsilon());
        }

        template <typename Real>
        void check_cell_user(const LinkTensor<Real> &beta, int cell, int user, const char *what)
        {
            if (cell < 0 || cell >= beta.num_cells() || user < 0 || user >= beta.users_per_cell())
                throw DomainError(std::string(what) + ": cell/user index out of range");
        }
    }

    /// E0 = sigma^2 sum_k 1/beta_k, the BS power at which the optimal perfect-CSI SINR is 0 dB.
    template <typename Derived>
    typename Derived::Scalar reference_power(const Eigen::MatrixBase<Derived> &betas_own,
                                             typename Derived::Scalar sigma2)
    {
        detail::require_positive(betas_own, "reference_power");
        return sigma2 * betas_own.cwiseInverse().sum();
    }

    /// Perfect CSI: SINR_k = lambda_k E beta_k / sigma^2.
    template <typename DerivedL, typename DerivedB>
    RVector<typename DerivedB::Scalar> sinr_perfect_csi(const Eigen::MatrixBase<DerivedL> &lambdas,
                                                        const Eigen::MatrixBase<DerivedB> &betas_own,
                                                        typename DerivedB::Scalar bs_power,
                                                        typename DerivedB::Scalar sigma2)
    {
        using Real = typename DerivedB::Scalar;
        if (lambdas.size() != betas_own.size())
            throw ConfigError("sinr_perfect_csi: lambda and beta lengths differ");
        if ((lambdas.array() < 0).any() || std::abs(lambdas.sum() - Real(1)) > detail::simplex_tolerance<Real>())
            throw DomainError("sinr_perfect_csi: lambda must lie on the probability simplex");
        return lambdas.cwiseProduct(betas_own) * (bs_power / sigma2);
    }

    /// Common SINR of every user under the optimal shares: E / (sigma^2 sum_k 1/beta_k).
    template <typename Derived>
    typename Derived::Scalar sinr_perfect_optimal(const Eigen::MatrixBase<Derived> &betas_own,
                                                  typename Derived::Scalar bs_power, typename Derived::Scalar sigma2)
    {
        return bs_power / reference_power(betas_own, sigma2);
    }

    /// Norm limit of the combined individual estimates of BS j:
    /// gamma_j^2 = sum_k sum_l xi_{j,k}^2 p_u tau beta_{j,l,k} + sigma_p^2 sum_k xi_{j,k}^2.
    template <typename Real>
    Real contamination_gamma2(const LinkTensor<Real> &beta, const std::type_identity_t<RMatrix<Real>> &xis, Real peak_power, Real tau,
                              Real sigma_p2, int bs)
    {
        Real total = 0;
        for (int k = 0; k < beta.users_per_cell(); ++k)
        {
            const Real xi2 = xis(bs, k) * xis(bs, k);
            Real gains = 0;
            for (int l = 0; l < beta.num_cells(); ++l)
                gains += beta(bs, l, k);
            total += xi2 * peak_power * tau * gains + sigma_p2 * xi2;
        }
        return total;
    }

    /// Individual (per-user) pilots reused in every cell; the estimate of user k mixes all cells' user k.
    template <typename Real>
    Real sinr_contaminated(const LinkTensor<Real> &beta, const std::type_identity_t<RMatrix<Real>> &xis, const std::type_identity_t<RVector<Real>> &bs_power,
                           Real peak_power, Real tau, Real sigma_p2, Real sigma2, int cell, int user)
    {
        detail::check_cell_user(beta, cell, user, "sinr_contaminated");
        const int n_cells = beta.num_cells();
        if (xis.rows() != n_cells || xis.cols() != beta.users_per_cell() || bs_power.size() != n_cells)
            throw ConfigError("sinr_contaminated: xi must be N x K and E must have N entries");

        const auto term = [&](int bs) {
            const Real g2 = contamination_gamma2(beta, xis, peak_power, tau, sigma_p2, bs);
            const Real b = beta(bs, cell, user);
            const Real xi = xis(bs, user);
            return bs_power(bs) / g2 * b * b * xi * xi * peak_power * tau;
        };
        Real interference = 0;
        for (int j = 0; j < n_cells; ++j)
            if (j != cell)
                interference += term(j);
        return term(cell) / (interference + sigma2);
    }

    /// E -> infinity limit of sinr_contaminated with equal BS powers. +infinity when no other cell
    /// interferes (N = 1); sweeps rely on this sentinel rather than an exception.
    template <typename Real>
    Real sinr_contamination_ceiling(const LinkTensor<Real> &beta, const std::type_identity_t<RMatrix<Real>> &xis, Real peak_power, Real tau,
                                    Real sigma_p2, int cell, int user)
    {
        detail::check_cell_user(beta, cell, user, "sinr_contamination_ceiling");
        const Real own_g2 = contamination_gamma2(beta, xis, peak_power, tau, sigma_p2, cell);
        Real denom = 0;
        for (int j = 0; j < beta.num_cells(); ++j)
        {
            if (j == cell)
                continue;
            const Real b = beta(j, cell, user);
            const Real xi = xis(j, user);
            denom += own_g2 / contamination_gamma2(beta, xis, peak_power, tau, sigma_p2, j) * b * b * xi * xi;
        }
        if (!(denom > 0))
            return std::numeric_limits<Real>::infinity();
        const Real b = beta(cell, cell, user);
        const Real xi = xis(cell, user);
        return b * b * xi * xi / denom;
    }

    /// Composite estimation with pilot powers p_k:
    /// SINR_k = E/sigma^2 * beta_k^2 p_k / (sum_k' beta_k' p_k' + sigma_p^2/omega).
    /// Only own-cell gains appear.
    template <typename DerivedB, typename DerivedP>
    RVector<typename DerivedB::Scalar> sinr_composite(const Eigen::MatrixBase<DerivedB> &betas_own,
                                                      const Eigen::MatrixBase<DerivedP> &pilot_powers,
                                                      typename DerivedB::Scalar bs_power,
                                                      typename DerivedB::Scalar omega,
                                                      typename DerivedB::Scalar sigma_p2,
                                                      typename DerivedB::Scalar sigma2)
    {
        if (betas_own.size() != pilot_powers.size())
            throw ConfigError("sinr_composite: beta and power lengths differ");
        const auto denom = betas_own.dot(pilot_powers) + sigma_p2 / omega;
        return betas_own.cwiseAbs2().cwiseProduct(pilot_powers) * (bs_power / (sigma2 * denom));
    }

    /// Composite estimation under the optimal pilot powers; every user gets
    /// E/sigma^2 / (sum_k 1/beta_k + sigma_p^2 / (omega beta_min^2 p_u)).
    template <typename Derived>
    RVector<typename Derived::Scalar> sinr_composite_optimal(const Eigen::MatrixBase<Derived> &betas_own,
                                                             typename Derived::Scalar peak_power,
                                                             typename Derived::Scalar bs_power,
                                                             typename Derived::Scalar omega,
                                                             typename Derived::Scalar sigma_p2,
                                                             typename Derived::Scalar sigma2)
    {
        using Real = typename Derived::Scalar;
        detail::require_positive(betas_own, "sinr_composite_optimal");
        const Real beta_min = betas_own.minCoeff();
        const Real value = bs_power / sigma2 /
                           (betas_own.cwiseInverse().sum() + sigma_p2 / (omega * beta_min * beta_min * peak_power));
        return RVector<Real>::Constant(betas_own.size(), value);
    }

    /// Loss of the power-controlled composite scheme against perfect CSI, dB. Independent of E.
    template <typename Derived>
    typename Derived::Scalar sinr_gap_db(const Eigen::MatrixBase<Derived> &betas_own,
                                         typename Derived::Scalar peak_power, typename Derived::Scalar omega,
                                         typename Derived::Scalar sigma_p2)
    {
        using Real = typename Derived::Scalar;
        detail::require_positive(betas_own, "sinr_gap_db");
        const Real beta_min = betas_own.minCoeff();
        return linear_to_db(Real(1) + sigma_p2 / (omega * peak_power * beta_min * beta_min *
                                                  betas_own.cwiseInverse().sum()));
    }

    /// Norm limit of BS j's polluted composite estimate,
    /// mu_j^2 = omega sum_{l,k} beta_{j,l,k} p_{l,k} |kappa_{j,l,k}|^2 + sigma_p^2.
    /// Follows from ||g_hat_c||^2 / M with g_hat_c = sum_{l,k} sqrt(omega p_{l,k}) kappa_{j,l,k} g_{j,l,k} + z
    /// and the asymptotic orthogonality of the h vectors.
    template <typename Real>
    Real async_mu2(const LinkTensor<Real> &beta, const std::type_identity_t<RMatrix<Real>> &pilot_powers,
                   const LinkTensor<std::complex<Real>> &kappas, Real omega, Real sigma_p2, int bs)
    {
        Real total = 0;
        for (int l = 0; l < beta.num_cells(); ++l)
            for (int k = 0; k < beta.users_per_cell(); ++k)
                total += beta(bs, l, k) * pilot_powers(l, k) * std::norm(kappas(bs, l, k));
        return omega * total + sigma_p2;
    }

    /// Composite estimation with asynchronous pilot arrivals. kappa enters as |kappa|^2 since it is
    /// complex for DFT pilots.
    template <typename Real>
    Real sinr_async(const LinkTensor<Real> &beta, const std::type_identity_t<RMatrix<Real>> &pilot_powers,
                    const LinkTensor<std::complex<Real>> &kappas, const std::type_identity_t<RVector<Real>> &bs_power, Real omega,
                    Real sigma_p2, Real sigma2, int cell, int user)
    {
        detail::check_cell_user(beta, cell, user, "sinr_async");
        const int n_cells = beta.num_cells();
        if (bs_power.size() != n_cells || pilot_powers.rows() != n_cells ||
            pilot_powers.cols() != beta.users_per_cell() || kappas.num_cells() != n_cells ||
            kappas.users_per_cell() != beta.users_per_cell())
            throw ConfigError("sinr_async: dimension mismatch");

        const auto term = [&](int bs) {
            const Real b = beta(bs, cell, user);
            return bs_power(bs) / async_mu2(beta, pilot_powers, kappas, omega, sigma_p2, bs) * b * b *
                   std::norm(kappas(bs, cell, user));
        };
        Real interference = 0;
        for (int j = 0; j < n_cells; ++j)
            if (j != cell)
                interference += term(j);
        return term(cell) / (interference + sigma2 / (omega * pilot_powers(cell, user)));
    }

    /// E -> infinity limit of sinr_async with equal BS powers; +infinity without cross-cell leakage.
    template <typename Real>
    Real sinr_async_ceiling(const LinkTensor<Real> &beta, const std::type_identity_t<RMatrix<Real>> &pilot_powers,
                            const LinkTensor<std::complex<Real>> &kappas, Real omega, Real sigma_p2, int cell,
                            int user)
    {
        detail::check_cell_user(beta, cell, user, "sinr_async_ceiling");
        const Real own_mu2 = async_mu2(beta, pilot_powers, kappas, omega, sigma_p2, cell);
        Real denom = 0;
        for (int j = 0; j < beta.num_cells(); ++j)
        {
            if (j == cell)
                continue;
            const Real b = beta(j, cell, user);
            denom += own_mu2 / async_mu2(beta, pilot_powers, kappas, omega, sigma_p2, j) * b * b *
                     std::norm(kappas(j, cell, user));
        }
        if (!(denom > 0))
            return std::numeric_limits<Real>::infinity();
        const Real b = beta(cell, cell, user);
        return b * b * std::norm(kappas(cell, cell, user)) / denom;
    }
}

#endif
