#include "swarmform/swarm_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "swarmform/error.hpp"

namespace swarmform {

GridCoord offset(Heading h) {
    static constexpr std::array<GridCoord, 8> kOffsets = {
        GridCoord{1, 0},  GridCoord{1, 1},   GridCoord{0, 1},  GridCoord{-1, 1},
        GridCoord{-1, 0}, GridCoord{-1, -1}, GridCoord{0, -1}, GridCoord{1, -1}};
    return kOffsets[static_cast<std::size_t>(h)];
}

Heading random_heading(Rng& rng) { return static_cast<Heading>(rng.below(8)); }

void SimConfig::validate() const {
    if (num_robots < kSeedCount + 1) {
        throw ConfigError("num_robots must be at least 5 (4 seeds + 1 mover), got " +
                          std::to_string(num_robots));
    }
    if (vision_radius < 1 || vision_radius > 3) {
        throw ConfigError("vision radius must be 1, 2 or 3, got " + std::to_string(vision_radius));
    }
    if (max_ticks < 1) throw ConfigError("max_ticks must be positive");
    if (world_half_extent < 2) throw ConfigError("world half extent must be at least 2");
}

std::vector<Robot> spawn_robots(WorldGrid& world, const ShapeMask& mask, const SimConfig& config,
                                Rng& rng) {
    config.validate();
    std::vector<Robot> robots;
    robots.reserve(static_cast<std::size_t>(config.num_robots));
    for (int i = 0; i < kSeedCount; ++i) {
        Robot seed;
        seed.id = i;
        seed.kind = RobotKind::seed;
        seed.pos = mask.seed_slots()[static_cast<std::size_t>(i)];
        seed.stationary = seed.localize = seed.position_inside = true;
        world.place(seed.id, seed.pos);
        robots.push_back(seed);
    }

    std::vector<GridCoord> free;
    for (const Cell& cell : world.cells()) {
        if (!cell.is_wall && !cell.occupant) free.push_back(cell.coord);
    }
    const auto movers = static_cast<std::size_t>(config.num_robots - kSeedCount);
    if (movers > free.size()) {
        throw ConfigError("cannot place " + std::to_string(movers) + " robots on " +
                          std::to_string(free.size()) + " free cells");
    }
    // Partial Fisher-Yates: the first `movers` entries become the placements.
    for (std::size_t i = 0; i < movers; ++i) {
        std::swap(free[i], free[i + rng.below(free.size() - i)]);
        Robot r;
        r.id = static_cast<RobotId>(kSeedCount + i);
        r.pos = free[i];
        r.heading = random_heading(rng);
        r.position_inside = world.is_target(r.pos);
        world.place(r.id, r.pos);
        robots.push_back(r);
    }
    return robots;
}

GrowthFront::GrowthFront(const WorldGrid& world, const ShapeMask& mask)
    : half_extent_(world.half_extent()),
      layer_(static_cast<std::size_t>(world.side()) * static_cast<std::size_t>(world.side()), -1),
      filled_(layer_.size(), 0) {
    std::deque<GridCoord> todo;
    for (GridCoord s : mask.seed_slots()) {
        layer_[index(s)] = 0;
        filled_[index(s)] = 1;
        todo.push_back(s);
    }
    while (!todo.empty()) {
        const GridCoord c = todo.front();
        todo.pop_front();
        for (GridCoord n : world.neighbors8(c)) {
            if (world.is_target(n) && layer_[index(n)] < 0) {
                layer_[index(n)] = layer_[index(c)] + 1;
                todo.push_back(n);
            }
        }
    }
}

std::size_t GrowthFront::index(GridCoord c) const noexcept {
    const auto side = static_cast<std::size_t>(2 * half_extent_ + 1);
    return static_cast<std::size_t>(c.y + half_extent_) * side +
           static_cast<std::size_t>(c.x + half_extent_);
}

bool GrowthFront::in_range(GridCoord c) const noexcept {
    return !layer_.empty() && std::abs(c.x) <= half_extent_ && std::abs(c.y) <= half_extent_;
}

int GrowthFront::layer(GridCoord c) const {
    return in_range(c) ? layer_[index(c)] : -1;
}

bool GrowthFront::filled(GridCoord c) const {
    return in_range(c) && filled_[index(c)] != 0;
}

void GrowthFront::fill(GridCoord c) {
    if (in_range(c)) filled_[index(c)] = 1;
}

bool GrowthFront::allows(GridCoord c, int slack, int reach) const {
    const int own = layer(c);
    if (own < 0) return false;
    for (int dy = -reach; dy <= reach; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
            const GridCoord n{c.x + dx, c.y + dy};
            if (!in_range(n)) continue;
            const int l = layer_[index(n)];
            if (l >= 0 && l < own - slack && !filled_[index(n)]) return false;
        }
    }
    return true;
}

std::string_view to_string(RobotEvent e) {
    switch (e) {
        case RobotEvent::enters_shape: return "enters_shape";
        case RobotEvent::exits_shape: return "exits_shape";
        case RobotEvent::localizes: return "localizes";
        case RobotEvent::detaches: return "detaches";
    }
    return "unknown";
}

Robot transition(Robot robot, RobotEvent event, std::int64_t tick) {
    auto refuse = [&](const std::string& why) {
        throw InvariantViolation(std::string("illegal ") + std::string(to_string(event)) + ": " +
                                     why,
                                 robot.id, tick);
    };
    if (robot.is_seed()) refuse("seeds accept no events");
    if (!robot.is_mover()) refuse("robot is no longer moving");
    switch (event) {
        case RobotEvent::enters_shape:
            if (robot.position_inside) refuse("already inside the shape");
            robot.position_inside = true;
            break;
        case RobotEvent::exits_shape:
            if (!robot.position_inside) refuse("already outside the shape");
            robot.position_inside = false;
            break;
        case RobotEvent::localizes:
            if (!robot.position_inside) refuse("robot is outside the shape");
            robot.stationary = true;
            robot.localize = true;
            break;
        case RobotEvent::detaches:
            if (robot.position_inside) refuse("robot is inside the shape");
            robot.stationary = true;
            robot.detached = true;
            break;
    }
    return robot;
}

std::string check_robot_flags(const Robot& r, const WorldGrid& world) {
    if (r.is_seed() && !(r.stationary && r.localize && r.position_inside)) {
        return "seed lost a stationary/localize/position_inside flag";
    }
    if (r.localize && !r.stationary) return "localized robot is not stationary";
    if (r.localize && !world.is_target(r.pos)) return "localized robot is off the shape";
    if (r.detached && !(r.stationary && !r.localize)) return "detached robot flags inconsistent";
    if (world.occupant(r.pos) != r.id) return "occupancy index disagrees with robot position";
    if (world.is_wall(r.pos)) return "robot on a wall cell";
    return {};
}

}  // namespace swarmform
