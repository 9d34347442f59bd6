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

#ifndef MMCAST_TYPES_HPP
#define MMCAST_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mmcast
{
    template <typename Real>
    using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
    template <typename Real>
    using CRowVector = Eigen::Matrix<std::complex<Real>, 1, Eigen::Dynamic>;
    template <typename Real>
    using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
    template <typename Real>
    using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    template <typename Real>
    using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

    using Eigen::Index;

    // Invalid scenario or argument shapes (pilot too short, unsupported cell count, ...)
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Argument outside the mathematical domain of an operation
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Degenerate numerics, e.g. normalizing a zero vector
    class NumericError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Request exceeds what an exhaustive solver can handle
    class CapabilityError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // File could not be read or written
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    template <typename Real>
    inline Real db_to_linear(Real db) { return std::pow(Real(10), db / Real(10)); }

    template <typename Real>
    inline Real linear_to_db(Real x) { return Real(10) * std::log10(x); }

    namespace detail
    {
        template <typename Derived>
        void require_positive(const Eigen::MatrixBase<Derived> &v, const char *what)
        {
            if (v.size() == 0)
                throw DomainError(std::string(what) + ": empty input");
            for (Index i = 0; i < v.size(); ++i)
                if (!(v(i) > 0) || !std::isfinite(v(i)))
                    throw DomainError(std::string(what) + ": entries must be positive and finite");
        }
    }

    inline double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }
    inline double watts_to_dbm(double w) { return linear_to_db(w) + 30.0; }
}

#endif
