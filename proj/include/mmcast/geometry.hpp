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

#ifndef MMCAST_GEOMETRY_HPP
#define MMCAST_GEOMETRY_HPP

#include "mmcast/random.hpp"

#include <cstdint>
#include <vector>

namespace mmcast
{
    struct Point
    {
        double x = 0.0;
        double y = 0.0;
    };

    double distance_m(Point a, Point b);

    /// Flat-top hexagon (vertices at 0°, 60°, ...) of the given center-to-vertex radius.
    bool inside_hexagon(Point p, Point center, double radius_m);

    /// Hexagonal cluster. Cell 0 sits at the origin; neighbours share an edge with it and
    /// are placed at distance sqrt(3)*radius, at 30° + n*60°.
    struct CellLayout
    {
        int num_cells = 0;
        double radius_m = 0.0;
        std::vector<Point> centers;
        int evaluated_cell = 0;
    };

    /// num_cells must be 1, 3 or 7.
    CellLayout build_hex_layout(int num_cells, double radius_m);

    struct UserPositions
    {
        std::vector<std::vector<Point>> pos; // pos[cell][user]
        double exclusion_radius_m = 0.0;

        int num_cells() const { return static_cast<int>(pos.size()); }
        int users_per_cell() const { return pos.empty() ? 0 : static_cast<int>(pos.front().size()); }
    };

    /// Uniform drop over (hexagon minus the exclusion disk) in every cell, by rejection
    /// sampling from the hexagon's bounding box.
    UserPositions drop_users(const CellLayout &layout, int users_per_cell, double exclusion_radius_m, Rng &rng);
    UserPositions drop_users(const CellLayout &layout, int users_per_cell, double exclusion_radius_m,
                             std::uint64_t rng_seed);
}

#endif
