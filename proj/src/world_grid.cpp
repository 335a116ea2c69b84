#include "swarmform/world_grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "swarmform/error.hpp"
#include "swarmform/shape_catalog.hpp"

namespace swarmform {

namespace {

std::string to_string(GridCoord c) {
    return "(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
}

}  // namespace

int chebyshev(GridCoord a, GridCoord b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

bool operator==(const Cell& a, const Cell& b) {
    return a.coord == b.coord && a.is_wall == b.is_wall && a.is_target == b.is_target &&
           a.occupant == b.occupant;
}

bool operator==(const WorldGrid& a, const WorldGrid& b) {
    return a.half_extent_ == b.half_extent_ && a.target_count_ == b.target_count_ &&
           a.cells_ == b.cells_;
}

WorldGrid WorldGrid::build(int half_extent) {
    if (half_extent < 2) {
        throw ConfigError("world half extent must be at least 2, got " +
                          std::to_string(half_extent));
    }
    WorldGrid world;
    world.half_extent_ = half_extent;
    const auto n = static_cast<std::size_t>(world.side());
    world.cells_.reserve(n * n);
    for (int y = -half_extent; y <= half_extent; ++y) {
        for (int x = -half_extent; x <= half_extent; ++x) {
            Cell cell;
            cell.coord = {x, y};
            cell.is_wall = !world.is_interior(cell.coord);
            world.cells_.push_back(cell);
        }
    }
    return world;
}

const Cell& WorldGrid::at(GridCoord c) const {
    if (!in_bounds(c)) throw ConfigError("coordinate " + to_string(c) + " is out of bounds");
    return cells_[index(c)];
}

Cell& WorldGrid::mut(GridCoord c) {
    if (!in_bounds(c)) throw ConfigError("coordinate " + to_string(c) + " is out of bounds");
    return cells_[index(c)];
}

std::vector<GridCoord> WorldGrid::neighbors8(GridCoord c) const {
    return cells_within_radius(c, 1);
}

std::vector<GridCoord> WorldGrid::cells_within_radius(GridCoord c, int r) const {
    if (!in_bounds(c)) throw ConfigError("coordinate " + to_string(c) + " is out of bounds");
    if (r < 1) throw ConfigError("radius must be positive, got " + std::to_string(r));
    std::vector<GridCoord> out;
    out.reserve(static_cast<std::size_t>((2 * r + 1) * (2 * r + 1) - 1));
    for (int y = c.y - r; y <= c.y + r; ++y) {
        for (int x = c.x - r; x <= c.x + r; ++x) {
            GridCoord n{x, y};
            if (n != c && in_bounds(n)) out.push_back(n);
        }
    }
    return out;
}

void WorldGrid::place(RobotId id, GridCoord c) {
    Cell& cell = mut(c);
    if (cell.is_wall) throw ConfigError("cannot place robot on wall cell " + to_string(c));
    if (cell.occupant) throw ConfigError("cell " + to_string(c) + " is already occupied");
    cell.occupant = id;
}

void WorldGrid::vacate(GridCoord c) { mut(c).occupant.reset(); }

void WorldGrid::move(GridCoord from, GridCoord to) {
    Cell& src = mut(from);
    if (!src.occupant) throw ConfigError("no robot to move at " + to_string(from));
    const RobotId id = *src.occupant;
    place(id, to);
    src.occupant.reset();
}

WorldGrid apply_shape_mask(WorldGrid world, const ShapeMask& mask) {
    for (GridCoord c : mask.cells()) {
        if (!world.is_interior(c)) {
            throw ConfigError("mask '" + mask.name() + "' cell " + to_string(c) +
                              " lies on or outside the wall ring");
        }
    }
    for (Cell& cell : world.cells_) cell.is_target = false;
    for (GridCoord c : mask.cells()) world.mut(c).is_target = true;
    world.target_count_ = mask.cells().size();
    return world;
}

}  // namespace swarmform
