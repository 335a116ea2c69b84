#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swarmform/shape_catalog.hpp"
#include "swarmform/swarm_model.hpp"

// Executable animation of the set-based shape model: robots partitioned into
// stationary / unLocalize / localize, a shape state that only moves forward,
// and the three join outcomes.
namespace swarmform::formal {

enum class ShapeState { empty, partial, complete };
enum class Report { success, already_complete, incomplete };

std::string_view to_string(ShapeState s);
std::string_view to_string(Report r);

struct AbstractShape {
    std::size_t shape_dimension = 0;
    std::size_t max_robot = 0;
    std::set<RobotId> stationary;
    std::set<RobotId> un_localize;
    std::set<RobotId> localize;
    /// Robots of seed type; the rest are non-seed.
    std::set<RobotId> seeds;
    ShapeState state = ShapeState::empty;

    friend bool operator==(const AbstractShape&, const AbstractShape&) = default;
    friend auto operator<=>(const AbstractShape&, const AbstractShape&) = default;
};

/// Empty shape with robots 0..max_robot-1 idle in `stationary`.
/// Throws SchemaViolation when shape_dimension is 0.
AbstractShape init_shape(std::size_t shape_dimension, std::size_t max_robot);

/// Idle non-seed robot starts moving. Throws SchemaViolation on a breached
/// precondition.
AbstractShape start_move(AbstractShape s, RobotId robot);
bool can_start_move(const AbstractShape& s, RobotId robot);

/// Total join: success moves the robot into `localize` (the final join also
/// completes the shape); otherwise the state is unchanged and the report is
/// alreadyComplete or incomplete.
std::pair<AbstractShape, Report> join_shape(AbstractShape s, RobotId robot);

/// The final join that completes the shape. Throws SchemaViolation unless
/// the shape is partial with exactly one cell left and the robot is moving.
AbstractShape shape_formation_step(AbstractShape s, RobotId robot);
bool can_finish_shape(const AbstractShape& s, RobotId robot);

struct Violation {
    std::string schema;
    std::string predicate;
    std::string detail;

    std::string describe(std::int64_t tick) const;
};

/// State predicates: partition, cardinality bounds, shape-state consistency.
std::vector<Violation> check_shape(const AbstractShape& s);

/// How the 4 pre-placed seeds enter the abstraction.
enum class SeedView {
    /// Seeds count toward |localize| but not toward the empty test.
    counted,
    /// Seeds are treated as any other localized robot.
    literal,
};

/// Projects robot flags onto the three sets. The views are computed
/// independently (localize flag; not stationary; stationary and not
/// localized) so corrupted flags surface as overlaps.
AbstractShape project(const SimState& state, const ShapeMask& mask,
                      SeedView view = SeedView::counted);

/// Initial-state predicate: empty shape state and no localized robots
/// (non-seed robots only under SeedView::counted).
bool satisfies_init_shape(const AbstractShape& s, SeedView view);

/// One-shot check of a concrete tick against the state predicates and the
/// coordinate bounds.
std::vector<Violation> monitor(const SimState& state, const ShapeMask& mask);

/// Tick-to-tick check: on top of monitor(), every newly localized robot must
/// have been moving with room left in the shape, localize only grows and the
/// shape state never regresses.
class RefinementMonitor {
public:
    explicit RefinementMonitor(ShapeMask mask) : mask_(std::move(mask)) {}
    std::vector<Violation> observe(const SimState& state);

private:
    ShapeMask mask_;
    std::optional<AbstractShape> previous_;
};

struct ExplorationReport {
    std::size_t shape_dimension = 0;
    std::size_t max_robot = 0;
    std::size_t reachable_states = 0;
    std::size_t checked_states = 0;
    std::size_t transitions = 0;
    std::size_t terminal_states = 0;
    std::size_t terminal_complete = 0;
    std::size_t terminal_incomplete = 0;
    std::size_t terminal_unmatched = 0;
    std::size_t state_regressions = 0;
    std::array<std::size_t, 3> report_counts{};
    std::vector<Violation> violations;

    bool ok() const {
        return terminal_unmatched == 0 && state_regressions == 0 && violations.empty() &&
               checked_states == reachable_states;
    }
    double coverage() const {
        return reachable_states == 0 ? 0.0
                                     : static_cast<double>(checked_states) /
                                           static_cast<double>(reachable_states);
    }
};

/// Exhaustive breadth-first enumeration of every abstract state reachable
/// from init_shape under all interleavings of start_move, join_shape and
/// shape_formation_step. Bounds: 1 <= shape_dimension <= 6, max_robot <= 8.
ExplorationReport explore(std::size_t shape_dimension, std::size_t max_robot);

std::string format_report(const ExplorationReport& report);

}  // namespace swarmform::formal
