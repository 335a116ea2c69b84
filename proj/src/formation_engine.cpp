#include "swarmform/formation_engine.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include "swarmform/error.hpp"
#include "swarmform/formal_checker.hpp"

namespace swarmform {

namespace {


// Offsets within Chebyshev radius r lying strictly ahead of each heading.
const std::vector<GridCoord>& forward_offsets(Heading h, int r) {
    static const auto table = [] {
        std::array<std::array<std::vector<GridCoord>, 4>, 8> t;
        for (int hi = 0; hi < 8; ++hi) {
            const GridCoord f = offset(static_cast<Heading>(hi));
            for (int radius = 1; radius <= 3; ++radius) {
                for (int dy = -radius; dy <= radius; ++dy) {
                    for (int dx = -radius; dx <= radius; ++dx) {
                        if (dx * f.x + dy * f.y > 0) {
                            t[static_cast<std::size_t>(hi)][static_cast<std::size_t>(radius)]
                                .push_back({dx, dy});
                        }
                    }
                }
            }
        }
        return t;
    }();
    return table[static_cast<std::size_t>(h)][static_cast<std::size_t>(r)];
}

bool holds_stationary(const SimState& state, GridCoord c) {
    const auto occ = state.world.occupant(c);
    return occ && state.robots[static_cast<std::size_t>(*occ)].stationary;
}

bool next_to_localized(const SimState& state, GridCoord c) {
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            GridCoord n{c.x + dx, c.y + dy};
            if (n == c || !state.world.in_bounds(n)) continue;
            const auto occ = state.world.occupant(n);
            if (occ && state.robots[static_cast<std::size_t>(*occ)].localize) return true;
        }
    }
    return false;
}

void sync_inside(Robot& r, const WorldGrid& world, std::int64_t tick) {
    const bool inside = world.is_target(r.pos);
    if (inside && !r.position_inside) r = transition(r, RobotEvent::enters_shape, tick);
    if (!inside && r.position_inside) r = transition(r, RobotEvent::exits_shape, tick);
}

void move_robot(SimState& state, Robot& r, GridCoord to) {
    state.world.move(r.pos, to);
    r.pos = to;
}

// One cell along the heading, which first veers by one compass point with
// probability kTurnPercent/100; when blocked the robot stays and turns.
void random_move(SimState& state, Robot& r) {
    if (state.rng.below(100) < static_cast<std::uint64_t>(kTurnPercent)) {
        const int turn = state.rng.below(2) ? 1 : 7;
        r.heading = static_cast<Heading>((static_cast<int>(r.heading) + turn) % 8);
    }
    const GridCoord dest = ahead(r.pos, r.heading);
    if (state.world.in_bounds(dest) && state.world.is_free(dest)) {
        move_robot(state, r, dest);
    } else {
        r.heading = random_heading(state.rng);
    }
}

std::optional<Heading> heading_towards(GridCoord from, GridCoord to) {
    for (int h = 0; h < 8; ++h) {
        if (ahead(from, static_cast<Heading>(h)) == to) return static_cast<Heading>(h);
    }
    return std::nullopt;
}

// First step of a shortest 8-connected path over free cells to `goal`,
// searched within a window of Chebyshev radius `window` around the robot.
bool path_step(SimState& state, Robot& r, GridCoord goal, int window) {
    const int w = 2 * window + 1;
    auto local = [&](GridCoord c) {
        return static_cast<std::size_t>((c.y - r.pos.y + window) * w + (c.x - r.pos.x + window));
    };
    std::vector<int> parent(static_cast<std::size_t>(w * w), -1);
    std::vector<GridCoord> queue{r.pos};
    parent[local(r.pos)] = static_cast<int>(local(r.pos));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const GridCoord c = queue[head];
        for (GridCoord n : state.world.neighbors8(c)) {
            if (chebyshev(n, r.pos) > window || parent[local(n)] >= 0) continue;
            if (n != goal && !state.world.is_free(n)) continue;
            parent[local(n)] = static_cast<int>(local(c));
            if (n == goal) {
                GridCoord step = n;
                while (true) {
                    const int p = parent[local(step)];
                    const GridCoord prev{p % w - window + r.pos.x, p / w - window + r.pos.y};
                    if (prev == r.pos) break;
                    step = prev;
                }
                r.heading = *heading_towards(r.pos, step);
                move_robot(state, r, step);
                return true;
            }
            queue.push_back(n);
        }
    }
    return false;
}

}  // namespace

std::string_view to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::complete: return "complete";
        case TerminationReason::exhausted: return "exhausted";
        case TerminationReason::complete_with_detached: return "complete_with_detached";
        case TerminationReason::tick_budget: return "tick_budget";
    }
    return "unknown";
}

SimState setup(const SimConfig& config, const ShapeMask& mask) {
    config.validate();
    SimState state{apply_shape_mask(WorldGrid::build(config.world_half_extent), mask), {}, 0,
                   Rng(config.rng_seed), {}};
    state.robots = spawn_robots(state.world, mask, config, state.rng);
    state.front = GrowthFront(state.world, mask);
    return state;
}

TickMetrics measure(const SimState& state) {
    TickMetrics m;
    m.tick = state.tick;
    for (const Robot& r : state.robots) {
        m.stationary_count += r.stationary;
        m.localized_count += r.localize;
        m.inside_count += r.position_inside;
    }
    m.empty_target_cells = static_cast<int>(state.world.target_count()) - m.localized_count;
    return m;
}

Robot avoid_boundary(Robot robot, const WorldGrid& world, Rng& rng) {
    const GridCoord next = ahead(robot.pos, robot.heading);
    if (!world.in_bounds(next) || world.is_wall(next)) robot.heading = random_heading(rng);
    return robot;
}

Robot avoid_collision(Robot robot, const SimState& state, const SimConfig& config, Rng& rng) {
    for (GridCoord d : forward_offsets(robot.heading, config.vision_radius)) {
        const GridCoord c{robot.pos.x + d.x, robot.pos.y + d.y};
        if (!state.world.in_bounds(c)) continue;
        const auto occ = state.world.occupant(c);
        if (occ && *occ != robot.id && state.robots[static_cast<std::size_t>(*occ)].is_mover()) {
            robot.heading = random_heading(rng);
            break;
        }
    }
    return robot;
}

bool fill_keeps_reachability(const SimState& state, GridCoord cell, RobotId actor) {
    const WorldGrid& world = state.world;
    auto blocked = [&](GridCoord c) {
        return !world.in_bounds(c) || world.is_wall(c) || c == cell || holds_stationary(state, c);
    };
    auto adjacent4 = [](GridCoord a, GridCoord b) {
        return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1;
    };

    // Local test: the free 4-neighbours of `cell` stay 4-connected through
    // the rest of its Moore ring.
    std::vector<GridCoord> ring;
    for (GridCoord n : world.neighbors8(cell)) {
        if (!blocked(n)) ring.push_back(n);
    }
    std::vector<int> component(ring.size(), -1);
    int components = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        if (component[i] >= 0) continue;
        component[i] = components;
        std::vector<std::size_t> todo{i};
        while (!todo.empty()) {
            const std::size_t a = todo.back();
            todo.pop_back();
            for (std::size_t b = 0; b < ring.size(); ++b) {
                if (component[b] < 0 && adjacent4(ring[a], ring[b])) {
                    component[b] = components;
                    todo.push_back(b);
                }
            }
        }
        ++components;
    }
    std::vector<GridCoord> starts;
    std::vector<bool> touched(static_cast<std::size_t>(components), false);
    for (std::size_t i = 0; i < ring.size(); ++i) {
        auto k = static_cast<std::size_t>(component[i]);
        if (adjacent4(ring[i], cell) && !touched[k]) {
            touched[k] = true;
            starts.push_back(ring[i]);
        }
    }
    if (starts.size() <= 1) return true;

    // Locally split: flood the 4-connected free space from each side and
    // count the separated regions that still need a robot or still hold one.
    const auto side = static_cast<std::size_t>(world.side());
    const int h = world.half_extent();
    auto idx = [&](GridCoord c) {
        return static_cast<std::size_t>(c.y + h) * side + static_cast<std::size_t>(c.x + h);
    };
    static constexpr std::array<GridCoord, 4> kSteps = {
        GridCoord{1, 0}, GridCoord{-1, 0}, GridCoord{0, 1}, GridCoord{0, -1}};
    std::vector<std::uint8_t> seen(side * side, 0);
    int live_regions = 0;
    for (GridCoord start : starts) {
        if (seen[idx(start)]) continue;
        bool live = false;
        std::vector<GridCoord> todo{start};
        seen[idx(start)] = 1;
        while (!todo.empty()) {
            const GridCoord c = todo.back();
            todo.pop_back();
            const Cell& cc = world.at(c);
            if (cc.is_target) live = true;
            if (cc.occupant && *cc.occupant != actor) live = true;
            for (GridCoord d : kSteps) {
                const GridCoord n{c.x + d.x, c.y + d.y};
                if (!blocked(n) && !seen[idx(n)]) {
                    seen[idx(n)] = 1;
                    todo.push_back(n);
                }
            }
        }
        if (live && ++live_regions > 1) return false;
    }
    return true;
}

std::optional<GridCoord> try_localize(const Robot& robot, const SimState& state,
                                      const SimConfig& config) {
    auto candidate = [&](GridCoord c) {
        const Cell& cell = state.world.at(c);
        return cell.is_target && (!cell.occupant || *cell.occupant == robot.id) &&
               state.front.allows(c, kFrontSlack, kFrontReach) &&
               next_to_localized(state, c);
    };
    std::vector<GridCoord> found;
    if (candidate(robot.pos)) found.push_back(robot.pos);
    std::vector<GridCoord> around;
    for (GridCoord c : state.world.cells_within_radius(robot.pos, config.vision_radius)) {
        if (candidate(c)) around.push_back(c);
    }
    std::stable_sort(around.begin(), around.end(), [&](GridCoord a, GridCoord b) {
        return chebyshev(a, robot.pos) < chebyshev(b, robot.pos);
    });
    found.insert(found.end(), around.begin(), around.end());
    for (GridCoord c : found) {
        if (fill_keeps_reachability(state, c, robot.id)) return c;
    }
    return std::nullopt;
}

TickMetrics step(SimState& state, const SimConfig& config) {
    std::vector<RobotId> order;
    for (const Robot& r : state.robots) {
        if (r.is_mover()) order.push_back(r.id);
    }
    state.rng.shuffle(std::span<RobotId>(order));

    auto approach = [&](Robot& r, GridCoord goal) {
        if (chebyshev(goal, r.pos) <= 1) {
            if (goal != r.pos) {
                r.heading = *heading_towards(r.pos, goal);
                move_robot(state, r, goal);
                sync_inside(r, state.world, state.tick);
            }
            r = transition(r, RobotEvent::localizes, state.tick);
            state.front.fill(r.pos);
        } else if (!path_step(state, r, goal, config.vision_radius + 2)) {
            random_move(state, r);
        }
    };

    for (RobotId id : order) {
        Robot r = state.robots[static_cast<std::size_t>(id)];
        sync_inside(r, state.world, state.tick);
        if (!r.position_inside) r = avoid_boundary(r, state.world, state.rng);
        r = avoid_collision(r, state, config, state.rng);
        if (auto goal = try_localize(r, state, config)) {
            approach(r, *goal);
        } else {
            random_move(state, r);
        }
        if (r.is_mover()) sync_inside(r, state.world, state.tick);
        state.robots[static_cast<std::size_t>(id)] = r;
    }
    ++state.tick;
    return measure(state);
}

std::optional<TerminationReason> check_termination(SimState& state, const ShapeMask& mask,
                                                   const SimConfig& config) {
    if (target_cell_count(mask) != state.world.target_count()) {
        throw ConfigError("mask '" + mask.name() + "' does not match the world's target cells");
    }
    int localized = 0;
    int movers = 0;
    for (const Robot& r : state.robots) {
        localized += r.localize;
        movers += r.is_mover();
    }
    const auto target = static_cast<int>(state.world.target_count());
    if (localized == target) {
        if (movers == 0) return TerminationReason::complete;
        for (Robot& r : state.robots) {
            if (r.is_mover()) r = transition(r, RobotEvent::detaches, state.tick);
        }
        return TerminationReason::complete_with_detached;
    }
    if (movers == 0) return TerminationReason::exhausted;
    if (state.tick >= config.max_ticks) return TerminationReason::tick_budget;
    return std::nullopt;
}

RunRecord run_to_completion(const SimConfig& config, const ShapeMask& mask,
                            const TickObserver& observer) {
    RunRecord record{setup(config, mask), TerminationReason::tick_budget, {}, {}};
    SimState& state = record.final_state;
    std::optional<formal::RefinementMonitor> monitor;
    if (config.check) {
        monitor.emplace(mask);
        for (const auto& v : monitor->observe(state)) record.violations.push_back(v.describe(0));
    }
    while (true) {
        step(state, config);
        const auto reason = check_termination(state, mask, config);
        const TickMetrics m = measure(state);
        record.metrics.push_back(m);
        if (observer) observer(state, m);
        if (monitor) {
            for (const auto& v : monitor->observe(state)) {
                record.violations.push_back(v.describe(state.tick));
            }
        }
        if (reason) {
            record.reason = *reason;
            break;
        }
    }
    return record;
}

RunRecord run_to_completion(const SimConfig& config) {
    return run_to_completion(config, resolve_shape(config.shape));
}

}  // namespace swarmform
