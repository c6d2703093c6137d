#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdisj/grid.hpp"
#include "kdisj/superclass.hpp"

namespace kdisj {

struct MapCell {
  std::vector<std::string> modalities;
  std::size_t count = 0;
  std::vector<std::size_t> split;  // empty unless a split variable is used
};

struct MapRender {
  GridSpec spec;
  std::vector<MapCell> cells;  // one per unit, row-major
  bool has_split = false;
};

/// Split breakdown of each individual: index of its modality within the split
/// variable, and the number of modalities of that variable.
struct SplitValues {
  std::vector<std::size_t> values;
  std::size_t levels = 0;
};

/// Places each modality label in the cell of its unit and counts individuals
/// per cell. Split counts always sum to the cell count.
MapRender build_map(const GridSpec& spec, std::span<const UnitId> individual_units,
                    std::span<const UnitId> modality_units, std::span<const std::string> modality_labels,
                    const std::optional<SplitValues>& split = std::nullopt);

/// "13(12,1)" with a split, "13" without, "0" for an empty cell.
std::string count_text(const MapCell& cell);

/// Fixed-width text grid. With super classes, each cell starts with its
/// 1-based class number in brackets.
std::string render_text(const MapRender& map, const SuperClassification* superclasses = nullptr);

/// Self-contained SVG; super classes are filled with distinct colours.
std::string render_svg(const MapRender& map, const SuperClassification* superclasses = nullptr);

}  // namespace kdisj
