#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "swarmform/rng.hpp"
#include "swarmform/shape_catalog.hpp"
#include "swarmform/world_grid.hpp"

namespace swarmform {

enum class RobotKind : std::uint8_t { seed, non_seed };

/// The 8 compass directions, counter-clockwise from east.
enum class Heading : std::uint8_t {
    east, north_east, north, north_west, west, south_west, south, south_east
};

GridCoord offset(Heading h);
inline GridCoord ahead(GridCoord from, Heading h) {
    GridCoord d = offset(h);
    return {from.x + d.x, from.y + d.y};
}
Heading random_heading(Rng& rng);

struct Robot {
    RobotId id = 0;
    RobotKind kind = RobotKind::non_seed;
    GridCoord pos;
    Heading heading = Heading::east;
    bool stationary = false;
    bool localize = false;
    bool position_inside = false;
    bool detached = false;

    bool is_seed() const noexcept { return kind == RobotKind::seed; }
    /// Still searching: neither localized nor detached.
    bool is_mover() const noexcept { return !stationary && !detached; }

    friend bool operator==(const Robot&, const Robot&) = default;
};

inline constexpr int kSeedCount = 4;

struct SimConfig {
    int num_robots = 0;
    int vision_radius = 3;
    /// Built-in shape name or path to a .mask file.
    std::string shape = "star";
    std::uint64_t rng_seed = 0;
    std::int64_t max_ticks = 100000;
    int world_half_extent = 32;
    /// Run the abstract-model monitor after every tick.
    bool check = false;

    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

/// Geodesic layer of every target cell, counted in 8-adjacent steps through
/// the shape from the nearest seed slot, and which target cells are filled.
class GrowthFront {
public:
    GrowthFront() = default;
    /// Seed slots start filled.
    GrowthFront(const WorldGrid& world, const ShapeMask& mask);

    /// -1 for cells off the shape or unreachable from the seeds.
    int layer(GridCoord c) const;
    bool filled(GridCoord c) const;
    void fill(GridCoord c);
    /// False when an unfilled target cell within Chebyshev distance `reach`
    /// of c lies more than `slack` layers below c.
    bool allows(GridCoord c, int slack, int reach) const;

    friend bool operator==(const GrowthFront&, const GrowthFront&) = default;

private:
    std::size_t index(GridCoord c) const noexcept;
    bool in_range(GridCoord c) const noexcept;

    int half_extent_ = 0;
    std::vector<int> layer_;
    std::vector<std::uint8_t> filled_;
};

struct SimState {
    WorldGrid world;
    std::vector<Robot> robots;
    std::int64_t tick = 0;
    Rng rng;
    GrowthFront front;
};

/// Places seeds on the mask's seed slots (ids 0..3) and the remaining robots
/// on distinct random free cells. `world` must already carry the mask; its
/// occupancy is updated. Throws ConfigError when there is not enough room.
std::vector<Robot> spawn_robots(WorldGrid& world, const ShapeMask& mask, const SimConfig& config,
                                Rng& rng);

enum class RobotEvent { enters_shape, exits_shape, localizes, detaches };
std::string_view to_string(RobotEvent e);

/// Applies one state-machine edge. Throws InvariantViolation (carrying the
/// robot id and `tick`) when the edge is not legal from the current flags.
Robot transition(Robot robot, RobotEvent event, std::int64_t tick = 0);

/// Empty when all per-robot flag invariants hold, else a description.
std::string check_robot_flags(const Robot& robot, const WorldGrid& world);

}  // namespace swarmform
