#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>

#include "swarmform/error.hpp"
#include "swarmform/shape_catalog.hpp"
#include "test_support.hpp"

using namespace swarmform;
namespace fs = std::filesystem;

namespace {

const std::map<ShapeId, int> kTableCounts = {
    {ShapeId::star, 1036}, {ShapeId::k_letter, 1352}, {ShapeId::wrench, 566},
    {ShapeId::rectangle, 438}, {ShapeId::tyre, 1282}, {ShapeId::spinner, 1040}};

MaskParseError parse_error(const std::string& text) {
    try {
        parse_mask(text);
    } catch (const MaskParseError& e) {
        return e;
    }
    FAIL("mask was accepted: " << text);
    return MaskParseError("", 0, 0);
}

}  // namespace

TEST_CASE("a single seed marker is rejected") {
    const auto e = parse_error("###\n#S#\n###\n");
    CHECK(e.detail().find("found 1") != std::string::npos);
}

TEST_CASE("2x4 block with four seeds") {
    const ShapeMask m = parse_mask("#SS#\n#SS#\n", "block");
    CHECK(target_cell_count(m) == 8);
    CHECK(m.cells().size() == 8);
    CHECK(m.seed_slots().size() == 4);
    CHECK(std::is_sorted(m.cells().begin(), m.cells().end()));
    for (GridCoord s : m.seed_slots()) CHECK(m.contains(s));
    CHECK(m.name() == "block");
}

TEST_CASE("the top line holds the largest y") {
    const ShapeMask m = parse_mask("#..\nSS.\nSS.\n");
    // '#' sits one row above the seed block's upper row.
    const GridCoord top = m.cells().back();
    int seed_top = INT32_MIN;
    for (GridCoord s : m.seed_slots()) seed_top = std::max(seed_top, s.y);
    CHECK(top.y == seed_top + 1);
}

TEST_CASE("seed centroid lands nearest the origin") {
    for (const char* text : {"SS\nSS\n", "####\n#SS#\n#SS#\n####\n", ".S.\nSSS\n"}) {
        const ShapeMask m = parse_mask(text);
        double sx = 0, sy = 0;
        for (GridCoord s : m.seed_slots()) {
            sx += s.x;
            sy += s.y;
        }
        CHECK(std::abs(sx / 4) <= 0.5);
        CHECK(std::abs(sy / 4) <= 0.5);
    }
}

TEST_CASE("structural errors carry line and column") {
    SUBCASE("ragged line") {
        const auto e = parse_error("SS#\nSS\n");
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    SUBCASE("unknown character") {
        const auto e = parse_error("SS.\nSSx\n");
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
        CHECK(std::string(e.what()) == "mask:2:3: unknown character 'x'");
    }
    SUBCASE("fifth seed marker") {
        const auto e = parse_error("SSS\nSS.\n");
        CHECK(e.line() == 2);
        CHECK(e.column() == 2);
    }
    SUBCASE("disconnected target cell") {
        const auto e = parse_error("SS..#\nSS...\n");
        CHECK(e.line() == 1);
        CHECK(e.column() == 5);
    }
    SUBCASE("seed markers apart") {
        const auto e = parse_error("S#S\nS#S\n");
        CHECK(e.detail().find("seed") != std::string::npos);
    }
    SUBCASE("no target cells") {
        CHECK(parse_error("...\n...\n").detail().find("no target") != std::string::npos);
        CHECK_THROWS_AS(parse_mask(""), MaskParseError);
    }
}

TEST_CASE("bundled masks match the published swarm sizes") {
    for (auto [id, count] : kTableCounts) {
        CAPTURE(to_string(id));
        const auto path = testing::bundled_dir() / (std::string(to_string(id)) + ".mask");
        const auto chars = testing::char_counts(testing::read_text(path));
        CHECK(chars.at('S') == 4);
        CHECK(chars.at('#') + chars.at('S') == count);
        CHECK(static_cast<int>(target_cell_count(load_builtin(id))) == count);
    }
}

TEST_CASE("bundled masks are connected and hole-free except tyre and spinner") {
    for (ShapeId id : kAllShapes) {
        CAPTURE(to_string(id));
        const ShapeMask m = load_builtin(id);
        const auto cells = testing::as_set(m.cells());
        CHECK(testing::components8(cells) == 1);
        const int holes = testing::enclosed_regions(cells);
        if (id == ShapeId::tyre || id == ShapeId::spinner) {
            CHECK(holes >= 1);
        } else {
            CHECK(holes == 0);
        }
    }
}

TEST_CASE("bundled masks fit the default world") {
    for (ShapeId id : kAllShapes) {
        for (GridCoord c : load_builtin(id).cells()) {
            CHECK(std::abs(c.x) < 32);
            CHECK(std::abs(c.y) < 32);
        }
    }
}

TEST_CASE("bundled seed slots are the four cells nearest the centroid") {
    for (ShapeId id : kAllShapes) {
        CAPTURE(to_string(id));
        const ShapeMask m = load_builtin(id);
        double cx = 0, cy = 0;
        for (GridCoord c : m.cells()) {
            cx += c.x;
            cy += c.y;
        }
        cx /= static_cast<double>(m.cells().size());
        cy /= static_cast<double>(m.cells().size());
        std::vector<GridCoord> order = m.cells();
        auto d2 = [&](GridCoord c) { return (c.x - cx) * (c.x - cx) + (c.y - cy) * (c.y - cy); };
        std::stable_sort(order.begin(), order.end(),
                         [&](GridCoord a, GridCoord b) { return d2(a) < d2(b); });
        std::vector<GridCoord> nearest(order.begin(), order.begin() + 4);
        std::sort(nearest.begin(), nearest.end());
        CHECK(std::equal(nearest.begin(), nearest.end(), m.seed_slots().begin()));
        CHECK(testing::components8(testing::as_set({m.seed_slots().begin(), m.seed_slots().end()})) == 1);
    }
}

TEST_CASE("serialize then parse round-trips") {
    for (ShapeId id : kAllShapes) {
        const ShapeMask m = load_builtin(id);
        CHECK(parse_mask(serialize_mask(m), m.name()) == m);
    }
}

TEST_CASE("property: random masks round-trip and stay connected") {
    Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        const std::string text = testing::random_mask_text(rng, static_cast<int>(rng.below(40)), 6);
        const ShapeMask m = parse_mask(text, "r");
        CHECK(serialize_mask(m) == text);
        CHECK(parse_mask(serialize_mask(m), "r") == m);
        CHECK(testing::components8(testing::as_set(m.cells())) == 1);
        auto counts = testing::char_counts(text);
        CHECK(m.cells().size() == static_cast<std::size_t>(counts['#'] + counts['S']));
    }
}

TEST_CASE("shape ids") {
    CHECK(parse_shape_id("star") == ShapeId::star);
    CHECK(parse_shape_id("k_letter") == ShapeId::k_letter);
    CHECK(parse_shape_id("k-letter") == ShapeId::k_letter);
    CHECK_FALSE(parse_shape_id("hexagon").has_value());
    CHECK_FALSE(parse_shape_id("Star").has_value());
    for (ShapeId id : kAllShapes) CHECK(parse_shape_id(to_string(id)) == id);
}

TEST_CASE("resolve_shape accepts names and mask paths") {
    CHECK(resolve_shape("rectangle").cells().size() == 438);
    const auto fixture = testing::fixtures_dir() / "fixture_12.mask";
    CHECK(resolve_shape(fixture.string()).cells().size() == 16);
    CHECK_THROWS_AS(resolve_shape("hexagon"), ConfigError);
    CHECK_THROWS_AS(resolve_shape("/nonexistent/x.mask"), IoError);
}

TEST_CASE("file parse errors name the file") {
    const fs::path dir = fs::temp_directory_path() / "swarmform_catalog_test";
    fs::create_directories(dir);
    const fs::path bad = dir / "bad.mask";
    {
        std::ofstream(bad) << "SS\nS?\n";
    }
    try {
        load_mask_file(bad);
        FAIL("expected parse error");
    } catch (const MaskParseError& e) {
        CHECK(std::string(e.what()).rfind(bad.string() + ":2:2:", 0) == 0);
    }
    fs::remove_all(dir);
}

TEST_CASE("shapes directory can be overridden from the environment") {
    const fs::path dir = fs::temp_directory_path() / "swarmform_shapes_env";
    fs::create_directories(dir);
    {
        std::ofstream(dir / "star.mask") << "#SS#\n#SS#\n";
    }
    ::setenv("SWARM_SIM_SHAPES_DIR", dir.c_str(), 1);
    CHECK(shapes_dir() == dir);
    CHECK(load_builtin(ShapeId::star).cells().size() == 8);
    CHECK_THROWS_AS(load_builtin(ShapeId::tyre), IoError);
    ::unsetenv("SWARM_SIM_SHAPES_DIR");
    CHECK(load_builtin(ShapeId::star).cells().size() == 1036);
    fs::remove_all(dir);
}
