#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace swarmform {

using RobotId = std::int32_t;

/// Integer cell coordinate. Ordering is row-major: by y, then by x.
struct GridCoord {
    int x = 0;
    int y = 0;

    friend bool operator==(const GridCoord&, const GridCoord&) = default;
    friend std::strong_ordering operator<=>(const GridCoord& a, const GridCoord& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

/// Chebyshev (king-move) distance.
int chebyshev(GridCoord a, GridCoord b);

struct Cell {
    GridCoord coord;
    bool is_wall = false;
    bool is_target = false;
    std::optional<RobotId> occupant;
};

class ShapeMask;

/// Bounded square lattice spanning -half_extent..+half_extent on both axes.
/// The outermost ring is wall. Occupancy changes go through place/vacate/move
/// so that at most one robot sits on any cell.
class WorldGrid {
public:
    /// Throws ConfigError when half_extent < 2.
    static WorldGrid build(int half_extent);

    int half_extent() const noexcept { return half_extent_; }
    int side() const noexcept { return 2 * half_extent_ + 1; }
    std::size_t target_count() const noexcept { return target_count_; }
    std::span<const Cell> cells() const noexcept { return cells_; }

    bool in_bounds(GridCoord c) const noexcept {
        return c.x >= -half_extent_ && c.x <= half_extent_ && c.y >= -half_extent_ &&
               c.y <= half_extent_;
    }
    /// Strictly inside the wall ring.
    bool is_interior(GridCoord c) const noexcept {
        return c.x > -half_extent_ && c.x < half_extent_ && c.y > -half_extent_ &&
               c.y < half_extent_;
    }

    /// Throws ConfigError when c is out of bounds.
    const Cell& at(GridCoord c) const;

    bool is_wall(GridCoord c) const { return at(c).is_wall; }
    bool is_target(GridCoord c) const { return at(c).is_target; }
    std::optional<RobotId> occupant(GridCoord c) const { return at(c).occupant; }
    bool is_free(GridCoord c) const {
        const Cell& cell = at(c);
        return !cell.is_wall && !cell.occupant;
    }

    /// In-bounds Moore neighbours of c in row-major order.
    std::vector<GridCoord> neighbors8(GridCoord c) const;
    /// In-bounds cells at Chebyshev distance 1..r from c, row-major order.
    std::vector<GridCoord> cells_within_radius(GridCoord c, int r) const;

    void place(RobotId id, GridCoord c);
    void vacate(GridCoord c);
    void move(GridCoord from, GridCoord to);

    friend bool operator==(const WorldGrid&, const WorldGrid&);

private:
    friend WorldGrid apply_shape_mask(WorldGrid world, const ShapeMask& mask);

    std::size_t index(GridCoord c) const noexcept {
        return static_cast<std::size_t>(c.y + half_extent_) * static_cast<std::size_t>(side()) +
               static_cast<std::size_t>(c.x + half_extent_);
    }
    Cell& mut(GridCoord c);

    int half_extent_ = 0;
    std::size_t target_count_ = 0;
    std::vector<Cell> cells_;
};

bool operator==(const Cell& a, const Cell& b);

/// Marks exactly the mask cells as targets. Throws ConfigError naming the
/// first mask cell that is on or outside the wall ring.
WorldGrid apply_shape_mask(WorldGrid world, const ShapeMask& mask);

}  // namespace swarmform
