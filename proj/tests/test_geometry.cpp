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

#include "mmcast/geometry.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace mmcast;
using Catch::Approx;

TEST_CASE("single cell sits at the origin")
{
    const auto layout = build_hex_layout(1, 1000.0);
    REQUIRE(layout.centers.size() == 1);
    CHECK(layout.centers[0].x == 0.0);
    CHECK(layout.centers[0].y == 0.0);
    CHECK(layout.evaluated_cell == 0);
}

TEST_CASE("seven-cell cluster matches hand-computed centers")
{
    const double r = 1000.0;
    const auto layout = build_hex_layout(7, r);
    REQUIRE(layout.centers.size() == 7);
    // edge-sharing neighbours of a flat-top hexagon: (1.5r, +-sqrt3/2 r), (0, +-sqrt3 r), (-1.5r, +-sqrt3/2 r)
    const double h = std::sqrt(3.0) / 2.0 * r;
    const std::vector<Point> expected{{1.5 * r, h}, {0.0, 2 * h}, {-1.5 * r, h},
                                      {-1.5 * r, -h}, {0.0, -2 * h}, {1.5 * r, -h}};
    for (const auto &e : expected)
    {
        bool found = false;
        for (int i = 1; i < 7; ++i)
            found |= std::abs(layout.centers[i].x - e.x) < 1e-9 && std::abs(layout.centers[i].y - e.y) < 1e-9;
        CHECK(found);
    }
    for (int i = 1; i < 7; ++i)
        CHECK(distance_m(layout.centers[i], {0, 0}) == Approx(r * std::sqrt(3.0)).epsilon(1e-12));
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            CHECK(distance_m(layout.centers[i], layout.centers[j]) > r);
}

TEST_CASE("three-cell layout is valid")
{
    const auto layout = build_hex_layout(3, 500.0);
    REQUIRE(layout.centers.size() == 3);
    CHECK(distance_m(layout.centers[1], layout.centers[2]) == Approx(500.0 * std::sqrt(3.0)));
}

TEST_CASE("scaling the radius doubles center distances")
{
    const auto a = build_hex_layout(7, 700.0);
    const auto b = build_hex_layout(7, 1400.0);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            CHECK(distance_m(b.centers[i], b.centers[j]) ==
                  Approx(2.0 * distance_m(a.centers[i], a.centers[j])).margin(1e-9));
}

TEST_CASE("unsupported layouts are rejected")
{
    CHECK_THROWS_AS(build_hex_layout(2, 1000.0), ConfigError);
    CHECK_THROWS_AS(build_hex_layout(19, 1000.0), ConfigError);
    CHECK_THROWS_AS(build_hex_layout(7, 0.0), ConfigError);
}

TEST_CASE("distance basics")
{
    CHECK(distance_m({3, 4}, {3, 4}) == 0.0);
    CHECK(distance_m({0, 0}, {3, 4}) == 5.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e4, 1e4);
    for (int t = 0; t < 1000; ++t)
    {
        const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        CHECK(distance_m(a, b) == distance_m(b, a));
        CHECK(distance_m(a, c) <= distance_m(a, b) + distance_m(b, c) + 1e-9);
    }
}

TEST_CASE("drops respect hexagon and exclusion disk")
{
    const auto layout = build_hex_layout(7, 1000.0);
    const auto users = drop_users(layout, 50, 100.0, std::uint64_t{42});
    REQUIRE(users.num_cells() == 7);
    REQUIRE(users.users_per_cell() == 50);
    for (int i = 0; i < 7; ++i)
        for (const auto &p : users.pos[i])
        {
            CHECK(inside_hexagon(p, layout.centers[i], 1000.0));
            CHECK(distance_m(p, layout.centers[i]) >= 100.0);
        }
}

TEST_CASE("drops are deterministic per seed")
{
    const auto layout = build_hex_layout(7, 1000.0);
    const auto a = drop_users(layout, 3, 100.0, std::uint64_t{9});
    const auto b = drop_users(layout, 3, 100.0, std::uint64_t{9});
    const auto c = drop_users(layout, 3, 100.0, std::uint64_t{10});
    bool differs = false;
    for (int i = 0; i < 7; ++i)
        for (int k = 0; k < 3; ++k)
        {
            CHECK(a.pos[i][k].x == b.pos[i][k].x);
            CHECK(a.pos[i][k].y == b.pos[i][k].y);
            differs |= a.pos[i][k].x != c.pos[i][k].x;
        }
    CHECK(differs);
}

TEST_CASE("bad exclusion radius is a configuration error")
{
    const auto layout = build_hex_layout(1, 1000.0);
    CHECK_THROWS_AS(drop_users(layout, 3, 1000.0, std::uint64_t{1}), ConfigError);
    CHECK_THROWS_AS(drop_users(layout, 3, 1500.0, std::uint64_t{1}), ConfigError);
    CHECK_THROWS_AS(drop_users(layout, 0, 100.0, std::uint64_t{1}), ConfigError);
}

TEST_CASE("drops are uniform over the admissible region")
{
    const double r = 1000.0, r0 = 100.0;
    const auto layout = build_hex_layout(1, r);
    const int n = 100000;
    const auto users = drop_users(layout, n, r0, std::uint64_t{2024});

    // any line through the center splits the region in half
    for (double angle : {0.0, 0.3, 1.0, 2.2})
    {
        int upper = 0;
        for (const auto &p : users.pos[0])
            upper += (-std::sin(angle) * p.x + std::cos(angle) * p.y) > 0;
        CHECK(std::abs(double(upper) / n - 0.5) < 0.01);
    }

    // chi-square over the grid bins lying wholly inside the admissible region
    const int g = 10;
    const double hy = std::sqrt(3.0) / 2.0 * r;
    const double wx = 2 * r / g, wy = 2 * hy / g;
    const double region = 3.0 * std::sqrt(3.0) / 2.0 * r * r - M_PI * r0 * r0;
    std::vector<double> count(g * g, 0.0);
    for (const auto &p : users.pos[0])
    {
        const int bx = std::clamp(int((p.x + r) / wx), 0, g - 1);
        const int by = std::clamp(int((p.y + hy) / wy), 0, g - 1);
        count[by * g + bx] += 1.0;
    }
    double chi2 = 0.0;
    int dof = -1;
    for (int by = 0; by < g; ++by)
        for (int bx = 0; bx < g; ++bx)
        {
            const double x0 = -r + bx * wx, y0 = -hy + by * wy;
            bool whole = true;
            for (double cx : {x0, x0 + wx})
                for (double cy : {y0, y0 + wy})
                    whole &= inside_hexagon({cx, cy}, {0, 0}, r);
            const double nx = std::clamp(0.0, x0, x0 + wx), ny = std::clamp(0.0, y0, y0 + wy);
            whole &= std::hypot(nx, ny) >= r0;
            if (!whole)
                continue;
            const double expected = n * wx * wy / region;
            chi2 += (count[by * g + bx] - expected) * (count[by * g + bx] - expected) / expected;
            ++dof;
        }
    ++dof; // bins are not exhaustive, so no count constraint
    // p > 0.01 at this dof: Wilson-Hilferty upper 1% point
    const double z = 2.326;
    const double crit = dof * std::pow(1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof)), 3);
    INFO("chi2 = " << chi2 << " dof = " << dof << " crit = " << crit);
    CHECK(chi2 < crit);
}
