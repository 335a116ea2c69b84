#include "swarmform/formal_checker.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "swarmform/error.hpp"

namespace swarmform::formal {

namespace {

int rank(ShapeState s) { return static_cast<int>(s); }

bool has(const std::set<RobotId>& set, RobotId r) { return set.count(r) != 0; }

std::size_t non_seed_localized(const AbstractShape& s) {
    return static_cast<std::size_t>(std::count_if(s.localize.begin(), s.localize.end(),
                                                  [&](RobotId r) { return !has(s.seeds, r); }));
}

void require(bool holds, const char* schema, const char* predicate) {
    if (!holds) throw SchemaViolation(schema, predicate);
}

}  // namespace

std::string_view to_string(ShapeState s) {
    switch (s) {
        case ShapeState::empty: return "empty";
        case ShapeState::partial: return "partial";
        case ShapeState::complete: return "complete";
    }
    return "unknown";
}

std::string_view to_string(Report r) {
    switch (r) {
        case Report::success: return "success";
        case Report::already_complete: return "alreadyComplete";
        case Report::incomplete: return "incomplete";
    }
    return "unknown";
}

std::string Violation::describe(std::int64_t tick) const {
    std::string out = "tick " + std::to_string(tick) + ": " + schema + ": " + predicate;
    if (!detail.empty()) out += " (" + detail + ")";
    return out;
}

AbstractShape init_shape(std::size_t shape_dimension, std::size_t max_robot) {
    require(shape_dimension >= 1, "InitShape", "shapeDimension >= 1");
    AbstractShape s;
    s.shape_dimension = shape_dimension;
    s.max_robot = max_robot;
    for (std::size_t i = 0; i < max_robot; ++i) s.stationary.insert(static_cast<RobotId>(i));
    return s;
}

bool can_start_move(const AbstractShape& s, RobotId robot) {
    return has(s.stationary, robot) && !has(s.seeds, robot) && !has(s.un_localize, robot);
}

AbstractShape start_move(AbstractShape s, RobotId robot) {
    require(has(s.stationary, robot), "StartMove", "robot? in stationary");
    require(!has(s.seeds, robot), "StartMove", "type = nonSeed");
    require(!has(s.un_localize, robot), "StartMove", "robot? notin unLocalize");
    s.stationary.erase(robot);
    s.un_localize.insert(robot);
    return s;
}

bool can_finish_shape(const AbstractShape& s, RobotId robot) {
    return s.state == ShapeState::partial && s.localize.size() + 1 == s.shape_dimension &&
           !has(s.localize, robot) && has(s.un_localize, robot);
}

AbstractShape shape_formation_step(AbstractShape s, RobotId robot) {
    require(s.state == ShapeState::partial, "ShapeFormation", "sState = partial");
    require(s.localize.size() + 1 == s.shape_dimension, "ShapeFormation",
            "#localize' = shapeDimension");
    require(!has(s.localize, robot), "ShapeFormation", "robot? notin localize");
    require(has(s.un_localize, robot), "ShapeFormation", "robot? in unLocalize");
    s.un_localize.erase(robot);
    s.localize.insert(robot);
    s.state = ShapeState::complete;
    return s;
}

std::pair<AbstractShape, Report> join_shape(AbstractShape s, RobotId robot) {
    if (s.localize.size() == s.shape_dimension) return {std::move(s), Report::already_complete};
    if (has(s.un_localize, robot) && !has(s.localize, robot)) {
        s.un_localize.erase(robot);
        s.localize.insert(robot);
        s.state = s.localize.size() == s.shape_dimension ? ShapeState::complete
                                                         : ShapeState::partial;
        return {std::move(s), Report::success};
    }
    return {std::move(s), Report::incomplete};
}

std::vector<Violation> check_shape(const AbstractShape& s) {
    std::vector<Violation> out;
    auto overlap = [&](const std::set<RobotId>& a, const std::set<RobotId>& b, const char* pred) {
        std::vector<RobotId> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        for (RobotId r : both) out.push_back({"Shape", pred, "robot " + std::to_string(r)});
    };
    overlap(s.stationary, s.un_localize, "stationary and unLocalize are disjoint");
    overlap(s.stationary, s.localize, "stationary and localize are disjoint");
    overlap(s.un_localize, s.localize, "unLocalize and localize are disjoint");

    const std::size_t n = s.localize.size();
    if (n > s.max_robot) {
        out.push_back({"Shape", "localize <= maxRobot",
                       std::to_string(n) + " > " + std::to_string(s.max_robot)});
    }
    if (n > s.shape_dimension) {
        out.push_back({"Shape", "localize <= shapeDimension",
                       std::to_string(n) + " > " + std::to_string(s.shape_dimension)});
    }
    if ((s.state == ShapeState::complete) != (n == s.shape_dimension)) {
        out.push_back({"ShapeFormation", "sState = complete iff #localize = shapeDimension",
                       std::string(to_string(s.state)) + " with #localize " + std::to_string(n)});
    }
    if (s.state == ShapeState::empty && non_seed_localized(s) != 0) {
        out.push_back({"InitShape", "sState = empty implies no robot has joined", ""});
    }
    if (s.state == ShapeState::partial && non_seed_localized(s) == 0) {
        out.push_back({"JoinShape", "sState = partial implies some robot has joined", ""});
    }
    return out;
}

AbstractShape project(const SimState& state, const ShapeMask& mask, SeedView view) {
    AbstractShape s;
    s.shape_dimension = target_cell_count(mask);
    s.max_robot = state.robots.size();
    for (const Robot& r : state.robots) {
        if (r.localize) s.localize.insert(r.id);
        if (!r.stationary) s.un_localize.insert(r.id);
        if (r.stationary && !r.localize) s.stationary.insert(r.id);
        if (r.is_seed() && view == SeedView::counted) s.seeds.insert(r.id);
    }
    if (s.localize.size() == s.shape_dimension) {
        s.state = ShapeState::complete;
    } else if (non_seed_localized(s) != 0) {
        s.state = ShapeState::partial;
    }
    return s;
}

bool satisfies_init_shape(const AbstractShape& s, SeedView view) {
    if (s.state != ShapeState::empty) return false;
    if (view == SeedView::literal) return s.localize.empty();
    return non_seed_localized(s) == 0;
}

std::vector<Violation> monitor(const SimState& state, const ShapeMask& mask) {
    std::vector<Violation> out = check_shape(project(state, mask));
    const int h = state.world.half_extent();
    for (const Robot& r : state.robots) {
        const std::string who = "robot " + std::to_string(r.id);
        if (r.pos.x < -h || r.pos.x > h) out.push_back({"Robot", "min-xcor <= x <= max-xcor", who});
        if (r.pos.y < -h || r.pos.y > h) out.push_back({"Robot", "min-ycor <= y <= max-ycor", who});
        if (r.localize && !mask.contains(r.pos)) {
            out.push_back({"Shape", "localized robots lie inside the shape", who});
        }
        if (r.is_seed() && !r.localize) out.push_back({"Robot", "type = seed implies localized", who});
    }
    return out;
}

std::vector<Violation> RefinementMonitor::observe(const SimState& state) {
    std::vector<Violation> out = monitor(state, mask_);
    AbstractShape now = project(state, mask_);
    if (previous_) {
        const AbstractShape& prev = *previous_;
        for (RobotId r : prev.localize) {
            if (!has(now.localize, r)) {
                out.push_back({"JoinShape", "localize' contains localize",
                               "robot " + std::to_string(r) + " left localize"});
            }
        }
        std::size_t joined = prev.localize.size();
        for (RobotId r : now.localize) {
            if (has(prev.localize, r)) continue;
            if (!has(prev.un_localize, r)) {
                out.push_back({"JoinShape", "robot? in unLocalize", "robot " + std::to_string(r)});
            }
            if (joined >= prev.shape_dimension) {
                out.push_back({"JoinShape", "#localize < shapeDimension",
                               "robot " + std::to_string(r)});
            }
            ++joined;
        }
        if (rank(now.state) < rank(prev.state)) {
            out.push_back({"ShapeState", "no regression",
                           std::string(to_string(prev.state)) + " -> " +
                               std::string(to_string(now.state))});
        }
    }
    previous_ = std::move(now);
    return out;
}

ExplorationReport explore(std::size_t shape_dimension, std::size_t max_robot) {
    if (shape_dimension < 1 || shape_dimension > 6 || max_robot > 8) {
        throw ConfigError("explore bounds are 1 <= dimension <= 6 and max robots <= 8");
    }
    ExplorationReport rep;
    rep.shape_dimension = shape_dimension;
    rep.max_robot = max_robot;

    std::set<AbstractShape> seen;
    std::deque<AbstractShape> frontier;
    auto visit = [&](AbstractShape s) {
        if (seen.insert(s).second) frontier.push_back(std::move(s));
    };
    visit(init_shape(shape_dimension, max_robot));

    while (!frontier.empty()) {
        AbstractShape s = std::move(frontier.front());
        frontier.pop_front();
        ++rep.checked_states;
        for (auto& v : check_shape(s)) rep.violations.push_back(std::move(v));

        std::vector<AbstractShape> next;
        std::vector<Report> reports;
        for (std::size_t i = 0; i < max_robot; ++i) {
            const auto r = static_cast<RobotId>(i);
            if (can_start_move(s, r)) next.push_back(start_move(s, r));
            if (can_finish_shape(s, r)) next.push_back(shape_formation_step(s, r));
            auto [after, report] = join_shape(s, r);
            ++rep.report_counts[static_cast<std::size_t>(report)];
            reports.push_back(report);
            if (after != s) next.push_back(std::move(after));
        }

        for (AbstractShape& n : next) {
            ++rep.transitions;
            if (rank(n.state) < rank(s.state)) ++rep.state_regressions;
            visit(std::move(n));
        }
        if (!next.empty()) continue;

        ++rep.terminal_states;
        const bool all_localized = s.localize.size() == s.max_robot;
        const bool filled = s.localize.size() == s.shape_dimension &&
                            s.state == ShapeState::complete;
        const bool starved = s.max_robot < s.shape_dimension && all_localized &&
                             s.localize.size() < s.shape_dimension;
        auto all_report = [&](Report want) {
            return std::all_of(reports.begin(), reports.end(),
                               [&](Report r) { return r == want; });
        };
        if (filled && !starved && all_report(Report::already_complete)) {
            ++rep.terminal_complete;
        } else if (starved && !filled && all_report(Report::incomplete)) {
            ++rep.terminal_incomplete;
        } else {
            ++rep.terminal_unmatched;
        }
    }
    rep.reachable_states = seen.size();
    return rep;
}

std::string format_report(const ExplorationReport& r) {
    std::ostringstream out;
    out << "dimension=" << r.shape_dimension << " max_robot=" << r.max_robot
        << " states=" << r.reachable_states << " checked=" << r.checked_states
        << " transitions=" << r.transitions << " terminals=" << r.terminal_states
        << " complete=" << r.terminal_complete << " incomplete=" << r.terminal_incomplete
        << " unmatched=" << r.terminal_unmatched << " regressions=" << r.state_regressions
        << " violations=" << r.violations.size() << " reports[success="
        << r.report_counts[0] << " alreadyComplete=" << r.report_counts[1]
        << " incomplete=" << r.report_counts[2] << "]"
        << (r.ok() ? " OK" : " FAIL");
    return out.str();
}

}  // namespace swarmform::formal
