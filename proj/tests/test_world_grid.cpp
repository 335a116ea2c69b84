#include <doctest.h>

#include <algorithm>
#include <set>

#include "swarmform/error.hpp"
#include "swarmform/shape_catalog.hpp"
#include "swarmform/world_grid.hpp"
#include "test_support.hpp"

using namespace swarmform;

namespace {

// Brute force: a cell is on the perimeter when fewer than 8 of its Moore
// neighbours fall inside the coordinate square.
int perimeter_count(int h) {
    int count = 0;
    for (int y = -h; y <= h; ++y) {
        for (int x = -h; x <= h; ++x) {
            int inside = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if ((dx || dy) && std::abs(x + dx) <= h && std::abs(y + dy) <= h) ++inside;
                }
            }
            count += inside < 8;
        }
    }
    return count;
}

int wall_count(const WorldGrid& w) {
    return static_cast<int>(std::count_if(w.cells().begin(), w.cells().end(),
                                          [](const Cell& c) { return c.is_wall; }));
}

}  // namespace

TEST_CASE("world of half extent 32 has 65x65 cells") {
    const WorldGrid w = WorldGrid::build(32);
    CHECK(w.side() == 65);
    CHECK(w.cells().size() == 4225);
    CHECK(w.target_count() == 0);
}

TEST_CASE("wall ring matches brute-force perimeter count") {
    for (int h : {2, 3, 7, 32}) {
        const WorldGrid w = WorldGrid::build(h);
        CHECK(wall_count(w) == perimeter_count(h));
        for (const Cell& c : w.cells()) {
            const bool ring = std::abs(c.coord.x) == h || std::abs(c.coord.y) == h;
            CHECK(c.is_wall == ring);
            CHECK_FALSE(c.occupant.has_value());
        }
    }
    CHECK(perimeter_count(32) == 256);
}

TEST_CASE("smallest world") {
    const WorldGrid w = WorldGrid::build(2);
    CHECK(w.cells().size() == 25);
    CHECK(wall_count(w) == 16);
    CHECK(25 - wall_count(w) == 9);
}

TEST_CASE("too small world is rejected") {
    CHECK_THROWS_AS(WorldGrid::build(1), ConfigError);
    CHECK_THROWS_AS(WorldGrid::build(0), ConfigError);
    CHECK_THROWS_AS(WorldGrid::build(-4), ConfigError);
}

TEST_CASE("neighbors8 counts at interior, edge and corner") {
    const WorldGrid w = WorldGrid::build(32);
    CHECK(w.neighbors8({0, 0}).size() == 8);
    CHECK(w.neighbors8({-32, -32}).size() == 3);
    CHECK(w.neighbors8({32, 32}).size() == 3);
    CHECK(w.neighbors8({0, 32}).size() == 5);
    CHECK(w.neighbors8({-32, 5}).size() == 5);
    CHECK_THROWS_AS(w.neighbors8({33, 0}), ConfigError);
}

TEST_CASE("neighbors8 is row-major and symmetric") {
    const WorldGrid w = WorldGrid::build(5);
    const auto n = w.neighbors8({1, 1});
    CHECK(std::is_sorted(n.begin(), n.end()));
    CHECK(n.front() == GridCoord{0, 0});
    CHECK(n.back() == GridCoord{2, 2});
    for (const Cell& a : w.cells()) {
        for (GridCoord b : w.neighbors8(a.coord)) {
            const auto back = w.neighbors8(b);
            CHECK(std::find(back.begin(), back.end(), a.coord) != back.end());
        }
    }
}

TEST_CASE("cells_within_radius") {
    const WorldGrid w = WorldGrid::build(32);
    CHECK(w.cells_within_radius({0, 0}, 1).size() == 8);
    for (int r = 1; r <= 3; ++r) {
        const auto cells = w.cells_within_radius({4, -7}, r);
        CHECK(cells.size() == static_cast<std::size_t>((2 * r + 1) * (2 * r + 1) - 1));
        for (GridCoord c : cells) {
            CHECK(chebyshev(c, {4, -7}) <= r);
            CHECK(c != GridCoord{4, -7});
        }
    }
    CHECK(w.cells_within_radius({0, 0}, 3).size() == 48);
    CHECK(w.cells_within_radius({-32, -32}, 1).size() == 3);
    CHECK_THROWS_AS(w.cells_within_radius({0, 0}, 0), ConfigError);
}

TEST_CASE("chebyshev distance") {
    CHECK(chebyshev({0, 0}, {3, -2}) == 3);
    CHECK(chebyshev({-1, 4}, {-1, 4}) == 0);
    CHECK(chebyshev({2, 2}, {-2, 1}) == 4);
}

TEST_CASE("grid coordinates order row-major") {
    CHECK(GridCoord{5, 0} < GridCoord{0, 1});
    CHECK(GridCoord{-1, 2} < GridCoord{0, 2});
}

TEST_CASE("apply_shape_mask marks exactly the mask cells") {
    const ShapeMask block = parse_mask("SS\nSS\n", "block");
    const WorldGrid w = apply_shape_mask(WorldGrid::build(4), block);
    CHECK(w.target_count() == 4);
    int targets = 0;
    for (const Cell& c : w.cells()) {
        targets += c.is_target;
        CHECK(c.is_target == block.contains(c.coord));
        CHECK_FALSE((c.is_target && c.is_wall));
    }
    CHECK(targets == 4);
}

TEST_CASE("apply_shape_mask is idempotent") {
    const ShapeMask mask = parse_mask("###\n#SS\n#SS\n", "m");
    const WorldGrid once = apply_shape_mask(WorldGrid::build(6), mask);
    const WorldGrid twice = apply_shape_mask(once, mask);
    CHECK(once == twice);
}

TEST_CASE("bundled star on the default world") {
    const auto text = testing::read_text(testing::bundled_dir() / "star.mask");
    const auto counts = testing::char_counts(text);
    const ShapeMask star = load_mask_file(testing::bundled_dir() / "star.mask");
    const WorldGrid w = apply_shape_mask(WorldGrid::build(32), star);
    CHECK(w.target_count() == static_cast<std::size_t>(counts.at('#') + counts.at('S')));
    CHECK(w.target_count() == 1036);
}

TEST_CASE("mask cell on the wall ring is rejected with its coordinate") {
    // Seeds centre on x = 0, so a row of 32 cells right of them reaches x = 32.
    const std::string text = "SS" + std::string(32, '#') + "\nSS" + std::string(32, '.') + "\n";
    const ShapeMask wide = parse_mask(text, "wide");
    bool reaches = std::any_of(wide.cells().begin(), wide.cells().end(),
                               [](GridCoord c) { return c.x >= 32; });
    REQUIRE(reaches);
    try {
        apply_shape_mask(WorldGrid::build(32), wide);
        FAIL("expected rejection");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("(32,") != std::string::npos);
    }
}

TEST_CASE("occupancy updates") {
    WorldGrid w = WorldGrid::build(3);
    w.place(7, {0, 0});
    CHECK(w.occupant({0, 0}) == 7);
    CHECK_FALSE(w.is_free({0, 0}));
    CHECK_THROWS_AS(w.place(8, {0, 0}), ConfigError);
    CHECK_THROWS_AS(w.place(8, {3, 0}), ConfigError);
    w.move({0, 0}, {1, 1});
    CHECK(w.is_free({0, 0}));
    CHECK(w.occupant({1, 1}) == 7);
    CHECK_THROWS_AS(w.move({0, 0}, {1, 0}), ConfigError);
    w.vacate({1, 1});
    CHECK(w.is_free({1, 1}));
}
