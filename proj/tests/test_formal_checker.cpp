#include <doctest.h>

#include "swarmform/error.hpp"
#include "swarmform/formal_checker.hpp"
#include "swarmform/formation_engine.hpp"

using namespace swarmform;
using namespace swarmform::formal;

namespace {

/// Robots 0..k-1 started and joined in order.
AbstractShape joined(std::size_t dim, std::size_t max_robot, std::size_t k) {
    AbstractShape s = init_shape(dim, max_robot);
    for (std::size_t i = 0; i < k; ++i) {
        const auto r = static_cast<RobotId>(i);
        s = start_move(s, r);
        auto [next, report] = join_shape(s, r);
        REQUIRE(report == Report::success);
        s = next;
    }
    return s;
}

std::string schema_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const SchemaViolation& v) {
        return v.what();
    }
    return "";
}

SimConfig tiny(int robots, std::uint64_t seed) {
    SimConfig cfg;
    cfg.num_robots = robots;
    cfg.world_half_extent = 5;
    cfg.rng_seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("init_shape") {
    const AbstractShape s = init_shape(8, 12);
    CHECK(s.localize.empty());
    CHECK(s.un_localize.empty());
    CHECK(s.stationary.size() == 12);
    CHECK(s.state == ShapeState::empty);
    CHECK(check_shape(s).empty());
    CHECK(init_shape(1036, 1036).state == ShapeState::empty);
    CHECK_THROWS_AS(init_shape(0, 5), SchemaViolation);
}

TEST_CASE("start_move") {
    AbstractShape s = init_shape(8, 6);
    s.stationary = {5};
    const AbstractShape after = start_move(s, 5);
    CHECK(after.un_localize == std::set<RobotId>{5});
    CHECK(after.stationary.empty());
    CHECK(after.localize == s.localize);
    CHECK(after.state == s.state);

    CHECK(schema_of([&] { start_move(after, 5); }).find("StartMove") != std::string::npos);
    AbstractShape with_seed = init_shape(8, 6);
    with_seed.seeds = {0};
    const std::string msg = schema_of([&] { start_move(with_seed, 0); });
    CHECK(msg.find("type = nonSeed") != std::string::npos);
    CHECK_FALSE(can_start_move(with_seed, 0));
    CHECK(can_start_move(with_seed, 1));
}

TEST_CASE("join_shape outcomes") {
    SUBCASE("success with room left") {
        AbstractShape s = start_move(joined(8, 10, 7), 7);
        auto [after, report] = join_shape(s, 7);
        CHECK(report == Report::success);
        CHECK(after.localize.size() == 8);
        CHECK(after.un_localize.empty());
        CHECK(after.state == ShapeState::complete);
        CHECK(check_shape(after).empty());
    }
    SUBCASE("a non-final join leaves the shape partial") {
        const AbstractShape s = joined(8, 10, 3);
        CHECK(s.state == ShapeState::partial);
        CHECK(check_shape(s).empty());
    }
    SUBCASE("already complete") {
        AbstractShape s = start_move(joined(8, 10, 8), 9);
        auto [after, report] = join_shape(s, 9);
        CHECK(report == Report::already_complete);
        CHECK(after == s);
    }
    SUBCASE("too few robots: incomplete") {
        const AbstractShape s = joined(8, 6, 6);
        for (RobotId r = 0; r < 6; ++r) {
            auto [after, report] = join_shape(s, r);
            CHECK(report == Report::incomplete);
            CHECK(after == s);
        }
    }
    CHECK(to_string(Report::already_complete) == "alreadyComplete");
}

TEST_CASE("shape_formation_step") {
    const AbstractShape last = start_move(joined(3, 4, 2), 2);
    const AbstractShape done = shape_formation_step(last, 2);
    CHECK(done.state == ShapeState::complete);
    CHECK(done.localize.size() == 3);
    CHECK(can_finish_shape(last, 2));

    const AbstractShape early = start_move(joined(3, 4, 1), 1);
    CHECK_FALSE(can_finish_shape(early, 1));
    CHECK(schema_of([&] { shape_formation_step(early, 1); }).find("ShapeFormation") !=
          std::string::npos);

    AbstractShape big = init_shape(1036, 1036);
    for (RobotId r = 0; r < 1035; ++r) big.localize.insert(r);
    big.stationary.clear();
    big.stationary.insert(1035);
    big.state = ShapeState::partial;
    big = start_move(big, 1035);
    CHECK(shape_formation_step(big, 1035).state == ShapeState::complete);
}

TEST_CASE("check_shape catches injected faults") {
    AbstractShape s = joined(4, 6, 2);
    REQUIRE(check_shape(s).empty());
    SUBCASE("robot in two sets") {
        s.un_localize.insert(0);
        const auto v = check_shape(s);
        REQUIRE(v.size() == 1);
        CHECK(v[0].predicate.find("disjoint") != std::string::npos);
    }
    SUBCASE("more localized than the shape holds") {
        for (RobotId r = 2; r < 6; ++r) {
            s.stationary.erase(r);
            s.localize.insert(r);
        }
        s.state = ShapeState::complete;
        bool named = false;
        for (const auto& v : check_shape(s)) named |= v.predicate == "localize <= shapeDimension";
        CHECK(named);
    }
    SUBCASE("state inconsistent with the count") {
        s.state = ShapeState::complete;
        CHECK_FALSE(check_shape(s).empty());
    }
}

TEST_CASE("projection of a fresh run and the InitShape reading of the seeds") {
    const ShapeMask m = parse_mask("SS##\nSS##\n");
    const SimState s = setup(tiny(8, 1), m);
    const AbstractShape counted = project(s, m, SeedView::counted);
    const AbstractShape literal = project(s, m, SeedView::literal);
    CHECK(counted.localize.size() == 4);
    CHECK(counted.un_localize.size() == 4);
    CHECK(counted.state == ShapeState::empty);
    CHECK(satisfies_init_shape(counted, SeedView::counted));
    // Taken literally, 4 pre-localized seeds contradict an empty localize set.
    CHECK_FALSE(satisfies_init_shape(literal, SeedView::literal));
    CHECK(monitor(s, m).empty());
}

TEST_CASE("monitor reports corrupted flags") {
    const ShapeMask m = parse_mask("SS##\nSS##\n");
    SimState s = setup(tiny(8, 1), m);
    s.robots[5].localize = true;  // localized but still moving
    CHECK(monitor(s, m).size() >= 1);

    SimState t = setup(tiny(8, 1), m);
    t.robots[1].localize = false;
    bool seed_rule = false;
    for (const auto& v : monitor(t, m)) seed_rule |= v.predicate == "type = seed implies localized";
    CHECK(seed_rule);
}

TEST_CASE("refinement monitor over whole runs") {
    const ShapeMask m = parse_mask("SS###\nSS###\n.###.\n");
    for (int robots : {9, 13, 16}) {
        SimConfig cfg = tiny(robots, 7);
        cfg.check = true;
        const RunRecord rec = run_to_completion(cfg, m);
        CHECK(rec.violations.empty());
    }
}

TEST_CASE("refinement monitor flags a localized robot that leaves localize") {
    const ShapeMask m = parse_mask("SS##\nSS##\n");
    SimState s = setup(tiny(8, 1), m);
    RefinementMonitor mon(m);
    CHECK(mon.observe(s).empty());
    s.robots[2].localize = false;
    s.robots[2].stationary = false;
    bool flagged = false;
    for (const auto& v : mon.observe(s)) flagged |= v.schema == "JoinShape";
    CHECK(flagged);
}

TEST_CASE("explorer") {
    SUBCASE("enough robots: every terminal is complete") {
        const ExplorationReport r = explore(2, 3);
        CHECK(r.ok());
        CHECK(r.coverage() == 1.0);
        CHECK(r.terminal_states > 0);
        CHECK(r.terminal_complete == r.terminal_states);
    }
    SUBCASE("too few robots: every terminal is incomplete") {
        const ExplorationReport r = explore(3, 2);
        CHECK(r.ok());
        CHECK(r.terminal_incomplete == r.terminal_states);
    }
    SUBCASE("single robot, single cell") {
        const ExplorationReport r = explore(1, 1);
        CHECK(r.ok());
        CHECK(r.reachable_states == 3);  // empty idle, empty moving, complete
        CHECK(r.terminal_states == 1);
    }
    SUBCASE("all bounded instances") {
        for (std::size_t dim = 1; dim <= 4; ++dim) {
            for (std::size_t robots = 0; robots <= 5; ++robots) {
                CAPTURE(dim);
                CAPTURE(robots);
                CHECK(explore(dim, robots).ok());
            }
        }
    }
    CHECK_THROWS_AS(explore(7, 3), ConfigError);
    CHECK_THROWS_AS(explore(3, 9), ConfigError);
    CHECK(format_report(explore(2, 2)).find(" OK") != std::string::npos);
}
