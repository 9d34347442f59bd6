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

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace mmcast;
using Catch::Approx;

namespace
{
    RVector<double> vec(std::initializer_list<double> v)
    {
        RVector<double> out(static_cast<Index>(v.size()));
        Index i = 0;
        for (double x : v)
            out(i++) = x;
        return out;
    }

    ChannelState random_state(int n, int k, Index m, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        return draw_channels(oracle::random_tensor(rng, n, k), m, seed + 1);
    }

    // Polluted pilot by direct convolution of the symbol stream with the pulse overlap,
    // evaluated from the arrival time rather than from (offset, shift).
    CRowVector<double> polluted_by_delay(const CRowVector<double> &psi, double delay, double T)
    {
        const Index len = psi.size();
        CRowVector<double> out = CRowVector<double>::Zero(len);
        for (Index m = 0; m < len; ++m)
            for (Index n = 0; n < len; ++n)
            {
                // symbol n occupies [nT + delay, (n+1)T + delay); slot m integrates [mT, (m+1)T)
                const double lo = std::max(double(m) * T, double(n) * T + delay);
                const double hi = std::min(double(m + 1) * T, double(n + 1) * T + delay);
                if (hi > lo)
                    out(m) += psi(n) * ((hi - lo) / T);
            }
        return out;
    }
}

TEST_CASE("DFT pilots are orthonormal")
{
    for (Index l : {1, 2, 7, 8, 16})
        for (Index r = 1; r <= l; ++r)
        {
            const auto p = make_orthogonal_pilots<double>(r, l);
            CHECK((p * p.adjoint()).isIdentity(1e-12));
        }
    CHECK_NOTHROW(make_orthogonal_pilots<double>(7, 8));
    CHECK_THROWS_AS(make_orthogonal_pilots<double>(9, 8), ConfigError);
    const auto f = make_orthogonal_pilots<float>(8, 8);
    CHECK((f * f.adjoint()).isIdentity(1e-5f));
}

TEST_CASE("pilot book validation")
{
    CHECK_NOTHROW(make_pilot_book<double>(PilotAssignment::PerCell, 7, 3, 8, 1.0));
    CHECK_THROWS_AS(make_pilot_book<double>(PilotAssignment::PerCell, 7, 3, 5, 1.0), ConfigError);
    CHECK_THROWS_AS(make_pilot_book<double>(PilotAssignment::PerUser, 7, 9, 8, 1.0), ConfigError);
    RMatrix<double> over = RMatrix<double>::Constant(2, 2, 1.0);
    over(1, 1) = 2.0;
    CHECK_THROWS_AS(make_pilot_book<double>(PilotAssignment::PerCell, 2, 2, 4, 1.0, over), ConfigError);
    RMatrix<double> zero = RMatrix<double>::Constant(2, 2, 1.0);
    zero(0, 0) = 0.0;
    CHECK_THROWS_AS(make_pilot_book<double>(PilotAssignment::PerCell, 2, 2, 4, 1.0, zero), ConfigError);
}

TEST_CASE("received block of one user without noise")
{
    const auto ch = random_state(1, 1, 6, 3);
    const auto book = make_pilot_book<double>(PilotAssignment::PerUser, 1, 1, 4, 2.0);
    const auto y = uplink_rx(ch, book, 0, 0.0, 9);
    const Eigen::MatrixXcd expected = std::sqrt(2.0 * 4.0) * ch.g(0, 0, 0) * book.sequences.row(0);
    CHECK((y - expected).norm() <= 1e-12 * expected.norm());
    // an unassigned orthogonal row sees nothing
    const auto spare = make_orthogonal_pilots<double>(4, 4).row(2);
    CHECK((y * spare.adjoint()).norm() <= 1e-12 * y.norm());
}

TEST_CASE("received energy matches signal plus noise power")
{
    const int n = 3, k = 2;
    const Index m = 16;
    const auto book = make_pilot_book<double>(PilotAssignment::PerCell, n, k, 8, 1.0);
    std::mt19937_64 rng(4);
    const auto beta = oracle::random_tensor(rng, n, k);
    double mean_beta = 0.0;
    for (int l = 0; l < n; ++l)
        for (int u = 0; u < k; ++u)
            mean_beta += beta(0, l, u);
    const double sigma_p2 = mean_beta / 3.0;
    double measured = 0.0, predicted = 0.0;
    for (int t = 0; t < 1000; ++t)
    {
        const auto ch = draw_channels(beta, m, 1000 + t);
        measured += uplink_rx(ch, book, 0, sigma_p2, 5000 + t).squaredNorm();
        double signal = 0.0;
        for (int l = 0; l < n; ++l)
            for (int u = 0; u < k; ++u)
                signal += book.powers(l, u) * 8.0 * ch.g(0, l, u).squaredNorm();
        predicted += signal + double(m) * 8.0 * sigma_p2;
    }
    CHECK(std::abs(measured / predicted - 1.0) < 0.02);
}

TEST_CASE("individual estimate mixes every cell's same-index user")
{
    const double p_u = 1.5, tau = 8.0;
    SECTION("single cell")
    {
        const auto ch = random_state(1, 3, 10, 11);
        const auto book = make_pilot_book<double>(PilotAssignment::PerUser, 1, 3, 8, p_u);
        const auto y = uplink_rx(ch, book, 0, 0.0, 1);
        for (int k = 0; k < 3; ++k)
        {
            const CVector<double> expected = std::sqrt(p_u * tau) * ch.g(0, 0, k);
            CHECK((estimate_individual(y, book, k) - expected).norm() <= 1e-12 * expected.norm());
        }
    }
    SECTION("two cells")
    {
        const auto ch = random_state(2, 3, 10, 12);
        const auto book = make_pilot_book<double>(PilotAssignment::PerUser, 2, 3, 8, p_u);
        const auto y = uplink_rx(ch, book, 0, 0.0, 1);
        const CVector<double> residual = estimate_individual(y, book, 1) - std::sqrt(p_u * tau) * ch.g(0, 0, 1);
        const CVector<double> contamination = std::sqrt(p_u * tau) * ch.g(0, 1, 1);
        CHECK((residual - contamination).norm() <= 1e-12 * contamination.norm());
        CHECK(contamination.norm() > 0);
        CHECK_THROWS_AS(estimate_individual(y, book, 3), DomainError);
        CHECK_THROWS_AS(estimate_individual(y, book, -1), DomainError);
    }
    SECTION("other pilot indices stay out")
    {
        const auto ch = random_state(1, 2, 4096, 13);
        const auto book = make_pilot_book<double>(PilotAssignment::PerUser, 1, 2, 8, p_u);
        const auto y = uplink_rx(ch, book, 0, 0.0, 1);
        const auto est = estimate_individual(y, book, 0);
        const auto other = ch.g(0, 0, 1);
        // only the chance alignment of independent vectors remains
        CHECK(std::abs(est.normalized().dot(other.normalized())) < 0.05);
    }
}

TEST_CASE("composite estimate has no other-cell component")
{
    const int n = 7, k = 3;
    std::mt19937_64 rng(21);
    const auto beta = oracle::random_tensor(rng, n, k);
    const auto ch = draw_channels(beta, 64, 22);
    RMatrix<double> powers(n, k);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (Index i = 0; i < powers.size(); ++i)
        powers.data()[i] = u(rng);
    const auto book = make_pilot_book<double>(PilotAssignment::PerCell, n, k, 8, 1.0, powers);
    for (int cell = 0; cell < n; ++cell)
    {
        const auto y = uplink_rx(ch, book, cell, 0.0, 1);
        CVector<double> expected = CVector<double>::Zero(64);
        for (int u2 = 0; u2 < k; ++u2)
            expected += std::sqrt(powers(cell, u2) * 8.0) * ch.g(cell, cell, u2);
        CHECK((estimate_composite(y, book, cell) - expected).norm() <= 1e-10 * expected.norm());
    }
    CHECK_THROWS_AS(estimate_composite(uplink_rx(ch, book, 0, 0.0, 1), book, 7), DomainError);
}

TEST_CASE("composite estimate with optimal powers follows the optimal combining direction")
{
    const auto b = vec({4e-14, 1e-15, 2.5e-13});
    GainTensor beta(1, 3);
    for (int k = 0; k < 3; ++k)
        beta(0, 0, k) = b(k);
    const auto ch = draw_channels(beta, 32, 5);
    const double p_u = 1.5849, omega = 8.0;
    RMatrix<double> powers = optimal_pilot_powers(b, p_u).transpose();
    const auto book = make_pilot_book<double>(PilotAssignment::PerCell, 1, 3, 8, p_u, powers);
    const auto est = estimate_composite(uplink_rx(ch, book, 0, 0.0, 1), book, 0);
    CVector<double> expected = CVector<double>::Zero(32);
    for (int k = 0; k < 3; ++k)
        expected += ch.g(0, 0, k) * (b.minCoeff() / b(k)) * std::sqrt(p_u * omega);
    CHECK((est - expected).norm() <= 1e-12 * expected.norm());
}

TEST_CASE("optimal pilot powers")
{
    CHECK(optimal_pilot_powers(vec({2.0, 2.0, 2.0}), 1.5).isApprox(RVector<double>::Constant(3, 1.5)));
    const auto p = optimal_pilot_powers(vec({1.0, 4.0}), 1.0);
    CHECK(p(0) == 1.0);
    CHECK(p(1) == Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(optimal_pilot_powers(vec({3e-14}), 2.0)(0) == 2.0);
    CHECK_THROWS_AS(optimal_pilot_powers(vec({1.0, 0.0}), 1.0), DomainError);
    CHECK_THROWS_AS(optimal_pilot_powers(vec({1.0, 2.0}), 0.0), DomainError);
}

TEST_CASE("pilot power oracle")
{
    SECTION("symmetric gains use full power")
    {
        const auto p = maxmin_pilot_powers_oracle(vec({1.0, 1.0, 1.0}), 1.0, 0.1, 8.0, 0.05);
        for (int k = 0; k < 3; ++k)
            CHECK(p(k) == Approx(1.0).epsilon(1e-3));
    }
    SECTION("two-user case recovers 1 and 1/16")
    {
        const auto p = maxmin_pilot_powers_oracle(vec({1.0, 4.0}), 1.0, 0.1, 8.0, 0.05);
        CHECK(p(0) == Approx(1.0).epsilon(1e-3));
        CHECK(p(1) == Approx(1.0 / 16.0).epsilon(1e-3));
    }
    SECTION("more than four users is out of reach")
    {
        CHECK_THROWS_AS(maxmin_pilot_powers_oracle(RVector<double>::Ones(5), 1.0, 0.1, 8.0, 0.1), CapabilityError);
    }
    SECTION("closed form is never beaten")
    {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 60; ++t)
        {
            const int k = 2 + t % 2;
            const auto b = oracle::random_betas(rng, k);
            const double sigma_p2 = 8e-15, omega = 8.0, p_u = 1.5849;
            const auto q = maxmin_pilot_powers_oracle(b, p_u, sigma_p2, omega, 0.25);
            const double found = pilot_power_objective(b, q, sigma_p2, omega);
            const double closed = pilot_power_objective(b, optimal_pilot_powers(b, p_u), sigma_p2, omega);
            CHECK(found <= closed * (1 + 1e-9));
            CHECK(found >= closed * (1 - 1e-3));
        }
    }
}

TEST_CASE("optimal powers equalize the per-user kernel")
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 500; ++t)
    {
        const auto b = oracle::random_betas(rng, 1 + t % 6);
        const auto p = optimal_pilot_powers(b, 1.5849);
        Index worst;
        b.minCoeff(&worst);
        CHECK(p(worst) == 1.5849);
        CHECK((p.array() > 0).all());
        CHECK((p.array() <= 1.5849).all());
        const RVector<double> kernel = b.cwiseAbs2().cwiseProduct(p);
        CHECK((kernel.maxCoeff() - kernel.minCoeff()) / kernel.maxCoeff() < 1e-12);
    }
}

TEST_CASE("pulse correlation")
{
    const double T = 50e-9;
    CHECK(pulse_correlation(0.0, T) == 1.0);
    CHECK(pulse_correlation(T, T) == 0.0);
    CHECK(pulse_correlation(T / 2, T) == 0.5);
    for (double f : {0.1, 0.25, 0.5, 0.8})
        CHECK(pulse_correlation(f * T, T) == Approx(oracle::pulse_overlap(f * T, T)).margin(1e-4));
    CHECK_THROWS_AS(pulse_correlation(-1e-12, T), DomainError);
    CHECK_THROWS_AS(pulse_correlation(2 * T, T), DomainError);
    CHECK_THROWS_AS(pulse_correlation(0.0, 0.0), DomainError);
}

TEST_CASE("polluted pilot")
{
    const double T = 1.0;
    CRowVector<double> psi(4);
    psi << std::complex<double>(1, 0), std::complex<double>(2, 1), std::complex<double>(-1, 3),
        std::complex<double>(0.5, -2);
    CHECK(polluted_pilot(psi, 0.0, 0, T) == psi);

    const auto shifted = polluted_pilot(psi, 0.0, 1, T);
    for (Index m = 0; m < 3; ++m)
        CHECK(shifted(m) == psi(m + 1));
    CHECK(shifted(3) == std::complex<double>(0));

    const auto half = polluted_pilot(psi, T / 2, 0, T);
    CHECK(half(0) == 0.5 * psi(0));
    for (Index m = 1; m < 4; ++m)
        CHECK(std::abs(half(m) - 0.5 * (psi(m) + psi(m - 1))) < 1e-15);

    // agrees with integrating the misaligned pulse train for arbitrary arrival times
    AsyncProfile profile;
    profile.symbol_s = T;
    profile.delay = LinkTensor<double>(1, 1);
    profile.reference_delay = {0.0};
    for (double d : {0.0, 0.3, 0.999, 1.0, 1.7, 2.5, -0.4, -1.25})
    {
        profile.delay(0, 0, 0) = d;
        const auto mis = profile.misalignment(0, 0, 0);
        CHECK(mis.offset_s >= 0.0);
        CHECK(mis.offset_s < T);
        const auto got = polluted_pilot(psi, mis.offset_s, mis.shift, T);
        CHECK((got - polluted_by_delay(psi, d, T)).norm() < 1e-12);
    }
}

TEST_CASE("kappa coefficients")
{
    const int n = 3, k = 2;
    const auto book = make_pilot_book<double>(PilotAssignment::PerCell, n, k, 8, 1.0);
    const double T = 50e-9;

    SECTION("synchronous arrivals")
    {
        const auto kappas = async_kappas(book, make_async_profile(RMatrix<double>::Constant(n, k, 3e-9), T));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                for (int u = 0; u < k; ++u)
                    CHECK(std::abs(kappas(i, l, u) - (i == l ? 1.0 : 0.0)) < 1e-12);
    }
    SECTION("half-symbol misalignment in cell")
    {
        RMatrix<double> offsets = RMatrix<double>::Zero(n, k);
        offsets(0, 1) = T; // reference of cell 0 becomes T/2; each user is T/2 off
        const auto kappas = async_kappas(book, make_async_profile(offsets, T));
        CHECK(std::abs(kappas(0, 0, 1)) < 1.0);
        CHECK(std::abs(kappas(0, 0, 0)) < 1.0);
        for (int i = 0; i < n; ++i)
            for (int u = 0; u < k; ++u)
                CHECK(std::abs(kappas(i, i, u)) <= 1.0 + 1e-12);
    }
    SECTION("cross-cell offsets leak")
    {
        RMatrix<double> offsets = RMatrix<double>::Zero(n, k);
        offsets(1, 0) = 0.3 * T;
        const auto kappas = async_kappas(book, make_async_profile(offsets, T));
        CHECK(std::abs(kappas(0, 1, 0)) > 1e-3);
    }
    SECTION("direct inner product")
    {
        RMatrix<double> offsets(n, k);
        offsets << 0, 10e-9, 70e-9, 20e-9, 5e-9, 120e-9;
        const auto profile = make_async_profile(offsets, T);
        const auto kappas = async_kappas(book, profile);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l)
                for (int u = 0; u < k; ++u)
                {
                    const double d = offsets(l, u) - offsets.row(i).mean();
                    const auto seen = polluted_by_delay(book.sequences.row(l), d, T);
                    std::complex<double> ref = 0;
                    for (Index m = 0; m < 8; ++m)
                        ref += seen(m) * std::conj(book.sequences(i, m));
                    CHECK(std::abs(kappas(i, l, u) - ref) < 1e-12);
                }
    }
    SECTION("continuity at zero offset")
    {
        double previous = 1.0;
        for (int e = -1; e >= -12; --e)
        {
            RMatrix<double> offsets = RMatrix<double>::Zero(n, k);
            offsets(1, 1) = std::pow(10.0, e) * T;
            const auto kappas = async_kappas(book, make_async_profile(offsets, T));
            const double dist = std::abs(kappas(0, 1, 1));
            CHECK(dist <= previous);
            previous = dist;
        }
        CHECK(previous < 1e-10);
    }
    SECTION("per-user book is rejected")
    {
        const auto per_user = make_pilot_book<double>(PilotAssignment::PerUser, n, k, 8, 1.0);
        CHECK_THROWS_AS(async_kappas(per_user, make_async_profile(RMatrix<double>::Zero(n, k), T), 0), ConfigError);
    }
}

TEST_CASE("asynchronous received block uses the polluted rows")
{
    const int n = 2, k = 2;
    const auto ch = random_state(n, k, 12, 40);
    const auto book = make_pilot_book<double>(PilotAssignment::PerCell, n, k, 8, 1.0);
    RMatrix<double> offsets(n, k);
    offsets << 0.0, 20e-9, 35e-9, 60e-9;
    const auto profile = make_async_profile(offsets, 50e-9);
    const auto y = uplink_rx(ch, book, received_pilot_rows(book, profile, 0), 0, 0.0, 1);
    const auto kappa = async_kappas(book, profile, 0);
    CVector<double> expected = CVector<double>::Zero(12);
    for (int l = 0; l < n; ++l)
        for (int u = 0; u < k; ++u)
            expected += std::sqrt(8.0) * kappa(l, u) * ch.g(0, l, u);
    CHECK((estimate_composite(y, book, 0) - expected).norm() < 1e-12 * expected.norm());
}
