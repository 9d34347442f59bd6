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

#ifndef MMCAST_BEAMFORMER_HPP
#define MMCAST_BEAMFORMER_HPP

#include "mmcast/types.hpp"

#include <string>
#include <string_view>

namespace mmcast
{
    enum class BeamScheme
    {
        PerfectOptimal,
        PerfectEqual,
        EstimatedIndividual,
        EstimatedComposite,
    };

    inline std::string_view to_string(BeamScheme s)
    {
        switch (s)
        {
        case BeamScheme::PerfectOptimal:
            return "perfect-optimal";
        case BeamScheme::PerfectEqual:
            return "perfect-equal";
        case BeamScheme::EstimatedIndividual:
            return "estimated-individual";
        case BeamScheme::EstimatedComposite:
            return "estimated-composite";
        }
        return "unknown";
    }

    /// Unit-norm multicast beamformer of one BS.
    template <typename Real>
    struct Beamformer
    {
        CVector<Real> w;
        BeamScheme scheme = BeamScheme::PerfectOptimal;
        int cell = 0;
    };

    /// Real combining coefficients xi and the power shares they induce,
    /// lambda_k = xi_k^2 beta_k / sum_k' xi_k'^2 beta_k'.
    template <typename Real>
    struct CombiningWeights
    {
        RVector<Real> xi;
        RVector<Real> lambda;
    };

    template <typename DerivedXi, typename DerivedBeta>
    CombiningWeights<typename DerivedXi::Scalar> combining_weights(const Eigen::MatrixBase<DerivedXi> &xi,
                                                                   const Eigen::MatrixBase<DerivedBeta> &betas)
    {
        using Real = typename DerivedXi::Scalar;
        if (xi.size() != betas.size())
            throw ConfigError("combining_weights: xi and betas differ in length");
        detail::require_positive(betas, "combining_weights");
        CombiningWeights<Real> out;
        out.xi = xi;
        out.lambda = xi.cwiseAbs2().cwiseProduct(betas);
        const Real total = out.lambda.sum();
        if (!(total > 0))
            throw DomainError("combining_weights: all weights are zero");
        out.lambda /= total;
        return out;
    }

    /// Max-min optimal power shares: lambda_k = 1 / sum_k' (beta_k / beta_k').
    /// Every user then sees the same lambda_k * beta_k.
    template <typename Derived>
    RVector<typename Derived::Scalar> optimal_lambdas(const Eigen::MatrixBase<Derived> &betas)
    {
        detail::require_positive(betas, "optimal_lambdas");
        const auto inv = betas.cwiseInverse().eval();
        return inv / inv.sum();
    }

    /// The large-M normalizer 1/sqrt(M sum 1/beta_k) of the optimal beamformer. Only an
    /// analysis device: produced beamformers are normalized exactly.
    template <typename Derived>
    typename Derived::Scalar asymptotic_normalizer(const Eigen::MatrixBase<Derived> &betas, Index antennas)
    {
        using Real = typename Derived::Scalar;
        detail::require_positive(betas, "asymptotic_normalizer");
        return Real(1) / std::sqrt(Real(antennas) * betas.cwiseInverse().sum());
    }

    /// Unit-norm copy of an estimate (or any direction).
    template <typename Derived>
    Beamformer<typename Derived::RealScalar> beamformer_from_estimate(const Eigen::MatrixBase<Derived> &estimate,
                                                                      BeamScheme scheme = BeamScheme::EstimatedComposite,
                                                                      int cell = 0)
    {
        using Real = typename Derived::RealScalar;
        const Real norm = estimate.norm();
        if (!(norm > 0) || !std::isfinite(norm))
            throw NumericError("beamformer_from_estimate: cannot normalize a zero or non-finite vector");
        return Beamformer<Real>{estimate / norm, scheme, cell};
    }

    /// w proportional to sum_k xi_k g_k, where the columns of `channels` are g_k.
    /// xi = 1 is the equal-combining baseline.
    template <typename DerivedG, typename DerivedXi>
    Beamformer<typename DerivedG::RealScalar> combine_beamformer(const Eigen::MatrixBase<DerivedG> &channels,
                                                                 const Eigen::MatrixBase<DerivedXi> &xi,
                                                                 BeamScheme scheme = BeamScheme::PerfectEqual,
                                                                 int cell = 0)
    {
        using Real = typename DerivedG::RealScalar;
        if (channels.cols() != xi.size())
            throw ConfigError("combine_beamformer: " + std::to_string(channels.cols()) + " channels but " +
                              std::to_string(xi.size()) + " weights");
        if (xi.size() == 0 || (xi.array() == 0).all())
            throw DomainError("combine_beamformer: at least one weight must be nonzero");
        if ((xi.array() < 0).any())
            throw DomainError("combine_beamformer: weights must be nonnegative");
        const CVector<Real> combined = channels * xi.template cast<std::complex<Real>>();
        return beamformer_from_estimate(combined, scheme, cell);
    }

    /// Closed-form asymptotically optimal multicast beamformer, w proportional to sum_k g_k / beta_k.
    template <typename DerivedG, typename DerivedBeta>
    Beamformer<typename DerivedG::RealScalar> optimal_beamformer_perfect(const Eigen::MatrixBase<DerivedG> &channels,
                                                                         const Eigen::MatrixBase<DerivedBeta> &betas,
                                                                         int cell = 0)
    {
        detail::require_positive(betas, "optimal_beamformer_perfect");
        return combine_beamformer(channels, betas.cwiseInverse(), BeamScheme::PerfectOptimal, cell);
    }
}

#endif
