#include "swarmform/shape_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "swarmform/error.hpp"

#ifndef SWARMFORM_SHAPES_DIR
#define SWARMFORM_SHAPES_DIR "shapes"
#endif

namespace swarmform {

namespace {

struct RawCell {
    GridCoord coord;
    int line;
    int column;
};

bool contains_sorted(const std::vector<GridCoord>& cells, GridCoord c) {
    return std::binary_search(cells.begin(), cells.end(), c);
}

// Cells of `cells` reachable from `start` through 8-adjacent members.
std::vector<bool> reachable(const std::vector<GridCoord>& cells, GridCoord start) {
    std::vector<bool> seen(cells.size(), false);
    std::vector<GridCoord> todo{start};
    auto mark = [&](GridCoord c) {
        auto it = std::lower_bound(cells.begin(), cells.end(), c);
        if (it == cells.end() || *it != c) return false;
        auto i = static_cast<std::size_t>(it - cells.begin());
        if (seen[i]) return false;
        seen[i] = true;
        return true;
    };
    mark(start);
    while (!todo.empty()) {
        GridCoord c = todo.back();
        todo.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                GridCoord n{c.x + dx, c.y + dy};
                if (n != c && mark(n)) todo.push_back(n);
            }
        }
    }
    return seen;
}

}  // namespace

std::string_view to_string(ShapeId id) {
    switch (id) {
        case ShapeId::star: return "star";
        case ShapeId::wrench: return "wrench";
        case ShapeId::k_letter: return "k_letter";
        case ShapeId::rectangle: return "rectangle";
        case ShapeId::tyre: return "tyre";
        case ShapeId::spinner: return "spinner";
    }
    return "unknown";
}

std::optional<ShapeId> parse_shape_id(std::string_view name) {
    if (name == "k-letter") return ShapeId::k_letter;
    for (ShapeId id : kAllShapes) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

bool ShapeMask::contains(GridCoord c) const { return contains_sorted(cells_, c); }

ShapeMask parse_mask(std::string_view text, std::string name) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    if (lines.empty()) throw MaskParseError("empty mask", 0, 0);

    const std::size_t width = lines.front().size();
    const int height = static_cast<int>(lines.size());
    std::vector<RawCell> raw;
    std::vector<RawCell> seeds;
    for (int row = 0; row < height; ++row) {
        std::string_view line = lines[static_cast<std::size_t>(row)];
        if (line.size() != width) {
            throw MaskParseError("line length " + std::to_string(line.size()) +
                                     " differs from first line length " + std::to_string(width),
                                 row + 1, static_cast<int>(std::min(line.size(), width)) + 1);
        }
        for (std::size_t col = 0; col < line.size(); ++col) {
            const char ch = line[col];
            RawCell cell{{static_cast<int>(col), height - 1 - row}, row + 1,
                         static_cast<int>(col) + 1};
            switch (ch) {
                case '.': break;
                case '#': raw.push_back(cell); break;
                case 'S':
                    raw.push_back(cell);
                    seeds.push_back(cell);
                    if (seeds.size() > 4) {
                        throw MaskParseError("more than 4 seed markers", cell.line, cell.column);
                    }
                    break;
                default:
                    throw MaskParseError(std::string("unknown character '") + ch + "'", row + 1,
                                         static_cast<int>(col) + 1);
            }
        }
    }
    if (raw.empty()) throw MaskParseError("mask has no target cells", 0, 0);
    if (seeds.size() != 4) {
        throw MaskParseError("expected 4 seed markers, found " + std::to_string(seeds.size()), 0,
                             0);
    }

    int sx = 0;
    int sy = 0;
    for (const RawCell& s : seeds) {
        sx += s.coord.x;
        sy += s.coord.y;
    }
    const int ox = static_cast<int>(std::floor(sx / 4.0 + 0.5));
    const int oy = static_cast<int>(std::floor(sy / 4.0 + 0.5));
    auto shift = [&](GridCoord c) { return GridCoord{c.x - ox, c.y - oy}; };

    ShapeMask mask;
    mask.name_ = std::move(name);
    for (const RawCell& r : raw) mask.cells_.push_back(shift(r.coord));
    std::sort(mask.cells_.begin(), mask.cells_.end());
    std::vector<GridCoord> seed_cells;
    for (const RawCell& s : seeds) seed_cells.push_back(shift(s.coord));
    std::sort(seed_cells.begin(), seed_cells.end());
    std::copy(seed_cells.begin(), seed_cells.end(), mask.seed_slots_.begin());

    auto seed_group = reachable(seed_cells, seed_cells.front());
    if (std::find(seed_group.begin(), seed_group.end(), false) != seed_group.end()) {
        const RawCell& s = seeds.back();
        throw MaskParseError("seed markers are not mutually 8-connected", s.line, s.column);
    }
    auto covered = reachable(mask.cells_, mask.seed_slots_.front());
    for (const RawCell& r : raw) {
        auto it = std::lower_bound(mask.cells_.begin(), mask.cells_.end(), shift(r.coord));
        if (!covered[static_cast<std::size_t>(it - mask.cells_.begin())]) {
            throw MaskParseError("target cell not 8-connected to the seed slots", r.line,
                                 r.column);
        }
    }
    return mask;
}

std::string serialize_mask(const ShapeMask& mask) {
    int x0 = mask.cells().front().x, x1 = x0;
    int y0 = mask.cells().front().y, y1 = y0;
    for (GridCoord c : mask.cells()) {
        x0 = std::min(x0, c.x);
        x1 = std::max(x1, c.x);
        y0 = std::min(y0, c.y);
        y1 = std::max(y1, c.y);
    }
    const auto& seeds = mask.seed_slots();
    std::string out;
    for (int y = y1; y >= y0; --y) {
        for (int x = x0; x <= x1; ++x) {
            GridCoord c{x, y};
            if (std::find(seeds.begin(), seeds.end(), c) != seeds.end()) {
                out += 'S';
            } else {
                out += mask.contains(c) ? '#' : '.';
            }
        }
        out += '\n';
    }
    return out;
}

std::filesystem::path shapes_dir() {
    if (const char* env = std::getenv("SWARM_SIM_SHAPES_DIR"); env && *env) return env;
    return SWARMFORM_SHAPES_DIR;
}

ShapeMask load_mask_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open mask file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_mask(buf.str(), path.stem().string());
    } catch (const MaskParseError& e) {
        throw MaskParseError(e.detail(), e.line(), e.column(), path.string());
    }
}

ShapeMask load_builtin(ShapeId id) {
    return load_mask_file(shapes_dir() / (std::string(to_string(id)) + ".mask"));
}

ShapeMask resolve_shape(const std::string& id_or_path) {
    if (auto id = parse_shape_id(id_or_path)) return load_builtin(*id);
    std::filesystem::path path(id_or_path);
    if (path.extension() != ".mask") {
        throw ConfigError("unknown shape '" + id_or_path +
                          "' (expected a built-in name or a .mask path)");
    }
    return load_mask_file(path);
}

std::size_t target_cell_count(const ShapeMask& mask) { return mask.cells().size(); }

}  // namespace swarmform
