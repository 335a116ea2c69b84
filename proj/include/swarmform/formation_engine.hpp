#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmform/shape_catalog.hpp"
#include "swarmform/swarm_model.hpp"

namespace swarmform {

enum class TerminationReason { complete, exhausted, complete_with_detached, tick_budget };
std::string_view to_string(TerminationReason r);

struct TickMetrics {
    std::int64_t tick = 0;
    int stationary_count = 0;
    int localized_count = 0;
    int inside_count = 0;
    int empty_target_cells = 0;

    friend bool operator==(const TickMetrics&, const TickMetrics&) = default;
};

struct RunRecord {
    SimState final_state;
    TerminationReason reason = TerminationReason::tick_budget;
    std::vector<TickMetrics> metrics;
    /// Abstract-model violations, populated only when SimConfig::check is set.
    std::vector<std::string> violations;
};

/// Called after every tick with the post-tick state.
using TickObserver = std::function<void(const SimState&, const TickMetrics&)>;

/// A target cell is not offered for localization while an unfilled cell
/// within kFrontReach of it sits more than kFrontSlack layers closer to the
/// seeds.
inline constexpr int kFrontSlack = 0;
inline constexpr int kFrontReach = 4;
/// Chance, in percent, that a random move first veers by one compass point.
inline constexpr int kTurnPercent = 15;

/// World + mask + spawned roster, tick 0.
SimState setup(const SimConfig& config, const ShapeMask& mask);

/// Counts over the current roster.
TickMetrics measure(const SimState& state);

/// One tick: every mover acts once, in an order reshuffled each tick. A mover
/// that sees a candidate cell (see try_localize) steps onto it and localizes
/// when it is adjacent, otherwise takes the first step of a shortest free path
/// towards it; with no candidate it moves randomly.
TickMetrics step(SimState& state, const SimConfig& config);

/// Outside-shape wall check: re-draws the heading when the cell ahead is wall.
Robot avoid_boundary(Robot robot, const WorldGrid& world, Rng& rng);

/// Re-draws the heading when another mover is within the vision radius in the
/// forward half-plane. Stationary robots never trigger avoidance.
Robot avoid_collision(Robot robot, const SimState& state, const SimConfig& config, Rng& rng);

/// Nearest empty target cell next to a localized robot within the vision
/// radius (the robot's own cell counts at distance 0), ties broken row-major.
/// Cells the growth front does not yet allow, and cells whose filling would
/// cut a mover or an empty target cell off from the rest, are skipped.
std::optional<GridCoord> try_localize(const Robot& robot, const SimState& state,
                                      const SimConfig& config);

/// True when stationing a robot on `cell` leaves at most one free region that
/// still holds movers (other than `actor`) or unfilled target cells.
bool fill_keeps_reachability(const SimState& state, GridCoord cell, RobotId actor);

/// Detaches the surplus movers when the shape is complete but movers remain.
std::optional<TerminationReason> check_termination(SimState& state, const ShapeMask& mask,
                                                   const SimConfig& config);

RunRecord run_to_completion(const SimConfig& config, const ShapeMask& mask,
                            const TickObserver& observer = {});
/// Resolves config.shape first.
RunRecord run_to_completion(const SimConfig& config);

}  // namespace swarmform
