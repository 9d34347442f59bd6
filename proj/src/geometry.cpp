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

#include <cmath>
#include <numbers>
#include <string>

namespace mmcast
{
    double distance_m(Point a, Point b)
    {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    bool inside_hexagon(Point p, Point center, double radius_m)
    {
        const double dx = std::abs(p.x - center.x);
        const double dy = std::abs(p.y - center.y);
        const double s3 = std::numbers::sqrt3;
        return dy <= 0.5 * s3 * radius_m && s3 * dx + dy <= s3 * radius_m;
    }

    CellLayout build_hex_layout(int num_cells, double radius_m)
    {
        if (num_cells != 1 && num_cells != 3 && num_cells != 7)
            throw ConfigError("build_hex_layout: num_cells must be 1, 3 or 7 (got " + std::to_string(num_cells) + ")");
        if (!(radius_m > 0.0) || !std::isfinite(radius_m))
            throw ConfigError("build_hex_layout: radius_m must be positive");

        CellLayout layout;
        layout.num_cells = num_cells;
        layout.radius_m = radius_m;
        layout.evaluated_cell = 0;
        layout.centers.push_back({0.0, 0.0});

        const double spacing = std::numbers::sqrt3 * radius_m;
        for (int n = 1; n < num_cells; ++n)
        {
            const double angle = std::numbers::pi / 6.0 + (n - 1) * std::numbers::pi / 3.0;
            layout.centers.push_back({spacing * std::cos(angle), spacing * std::sin(angle)});
        }
        return layout;
    }

    UserPositions drop_users(const CellLayout &layout, int users_per_cell, double exclusion_radius_m, Rng &rng)
    {
        if (users_per_cell < 1)
            throw ConfigError("drop_users: users_per_cell must be positive");
        if (!(exclusion_radius_m >= 0.0) || exclusion_radius_m >= layout.radius_m)
            throw ConfigError("drop_users: exclusion radius must lie in [0, radius)");

        const double r = layout.radius_m;
        const double half_height = 0.5 * std::numbers::sqrt3 * r;
        std::uniform_real_distribution<double> ux(-r, r);
        std::uniform_real_distribution<double> uy(-half_height, half_height);

        UserPositions users;
        users.exclusion_radius_m = exclusion_radius_m;
        users.pos.resize(layout.centers.size());
        for (std::size_t cell = 0; cell < layout.centers.size(); ++cell)
        {
            const Point c = layout.centers[cell];
            auto &cell_users = users.pos[cell];
            cell_users.reserve(users_per_cell);
            while (static_cast<int>(cell_users.size()) < users_per_cell)
            {
                const Point offset{ux(rng), uy(rng)};
                if (!inside_hexagon(offset, {0.0, 0.0}, r) || std::hypot(offset.x, offset.y) < exclusion_radius_m)
                    continue;
                cell_users.push_back({c.x + offset.x, c.y + offset.y});
            }
        }
        return users;
    }

    UserPositions drop_users(const CellLayout &layout, int users_per_cell, double exclusion_radius_m,
                             std::uint64_t rng_seed)
    {
        Rng rng(rng_seed);
        return drop_users(layout, users_per_cell, exclusion_radius_m, rng);
    }
}
