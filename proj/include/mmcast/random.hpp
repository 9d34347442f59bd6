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

#ifndef MMCAST_RANDOM_HPP
#define MMCAST_RANDOM_HPP

#include "mmcast/types.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mmcast
{
    using Rng = std::mt19937_64;

    // SplitMix64 finalizer, used to decorrelate counter-derived seeds
    constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Derives a child seed from a parent seed and a path of counters.
    /// derive_seed(s, {a, b}) is a pure function, so any trial can be regenerated in isolation.
    constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t s = mix64(parent);
        for (auto c : path)
            s = mix64(s ^ mix64(c + 0x632be59bd9b4e019ULL));
        return s;
    }

    /// Fills a matrix with i.i.d. CN(0, variance) entries: real and imaginary parts each N(0, variance/2).
    template <typename Derived>
    void fill_complex_gaussian(Eigen::MatrixBase<Derived> &out, Rng &rng, typename Derived::RealScalar variance = 1)
    {
        using Real = typename Derived::RealScalar;
        std::normal_distribution<Real> normal(Real(0), std::sqrt(variance / Real(2)));
        for (Index c = 0; c < out.cols(); ++c)
            for (Index r = 0; r < out.rows(); ++r)
            {
                const Real re = normal(rng);
                const Real im = normal(rng);
                out(r, c) = std::complex<Real>(re, im);
            }
    }
}

#endif
