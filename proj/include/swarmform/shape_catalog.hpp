#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmform/world_grid.hpp"

namespace swarmform {

enum class ShapeId { star, wrench, k_letter, rectangle, tyre, spinner };

inline constexpr std::array<ShapeId, 6> kAllShapes = {
    ShapeId::star, ShapeId::wrench,  ShapeId::k_letter,
    ShapeId::rectangle, ShapeId::tyre, ShapeId::spinner};

std::string_view to_string(ShapeId id);
/// Accepts the canonical names plus "k-letter"; nullopt for anything else.
std::optional<ShapeId> parse_shape_id(std::string_view name);

/// A validated target shape: a non-empty 8-connected cell set with 4 mutually
/// adjacent seed slots. Cells are sorted row-major.
class ShapeMask {
public:
    const std::string& name() const noexcept { return name_; }
    const std::vector<GridCoord>& cells() const noexcept { return cells_; }
    const std::array<GridCoord, 4>& seed_slots() const noexcept { return seed_slots_; }
    bool contains(GridCoord c) const;

    friend bool operator==(const ShapeMask&, const ShapeMask&) = default;

private:
    friend ShapeMask parse_mask(std::string_view text, std::string name);

    std::string name_;
    std::vector<GridCoord> cells_;
    std::array<GridCoord, 4> seed_slots_{};
};

/// Parses the '#', '.', 'S' character-grid format. The top line is the
/// largest y. Coordinates are shifted so the seed-slot centroid lands on the
/// cell nearest the origin. Throws MaskParseError.
ShapeMask parse_mask(std::string_view text, std::string name = "mask");

/// Inverse of parse_mask up to translation.
std::string serialize_mask(const ShapeMask& mask);

/// Directory holding the bundled .mask files; SWARM_SIM_SHAPES_DIR overrides.
std::filesystem::path shapes_dir();

ShapeMask load_mask_file(const std::filesystem::path& path);
ShapeMask load_builtin(ShapeId id);
/// A built-in name or a path to a .mask file.
ShapeMask resolve_shape(const std::string& id_or_path);

std::size_t target_cell_count(const ShapeMask& mask);

}  // namespace swarmform
