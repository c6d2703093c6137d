#include "kdisj/grid.hpp"

#include <algorithm>
#include <string>

#include "kdisj/error.hpp"

namespace kdisj {

namespace {

std::size_t axis_distance(std::size_t a, std::size_t b, std::size_t extent, bool wraps) {
  const std::size_t d = a > b ? a - b : b - a;
  return wraps ? std::min(d, extent - d) : d;
}

}  // namespace

std::string_view to_string(Topology topology) noexcept {
  switch (topology) {
    case Topology::string: return "string";
    case Topology::rectangle: return "rectangle";
    case Topology::cylinder: return "cylinder";
    case Topology::torus: return "torus";
  }
  return "rectangle";
}

Topology parse_topology(std::string_view name) {
  if (name == "string") return Topology::string;
  if (name == "rectangle") return Topology::rectangle;
  if (name == "cylinder") return Topology::cylinder;
  if (name == "torus") return Topology::torus;
  throw Error(Errc::config, "unknown topology '" + std::string(name) + "'");
}

GridSpec::GridSpec(std::size_t rows, std::size_t cols, Topology topology)
    : rows_(rows), cols_(cols), topology_(topology) {
  if (rows == 0 || cols == 0) throw Error(Errc::invalid_argument, "grid must have at least one unit");
  if (topology == Topology::string && rows != 1 && cols != 1)
    throw Error(Errc::invalid_argument, "string topology needs a single row or column");
}

UnitId GridSpec::unit(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_)
    throw Error(Errc::invalid_unit,
                "unit (" + std::to_string(row) + "," + std::to_string(col) + ") is outside the grid");
  return UnitId{row * cols_ + col};
}

void GridSpec::check(UnitId u) const {
  if (u.index >= unit_count())
    throw Error(Errc::invalid_unit, "unit " + std::to_string(u.index) + " is outside a grid of " +
                                        std::to_string(unit_count()) + " units");
}

std::size_t grid_distance(const GridSpec& spec, UnitId u, UnitId v) {
  spec.check(u);
  spec.check(v);
  const bool wrap_rows = spec.topology() == Topology::torus;
  const bool wrap_cols = spec.topology() == Topology::torus || spec.topology() == Topology::cylinder;
  return std::max(axis_distance(spec.row_of(u), spec.row_of(v), spec.rows(), wrap_rows),
                  axis_distance(spec.col_of(u), spec.col_of(v), spec.cols(), wrap_cols));
}

std::vector<UnitId> neighbors(const GridSpec& spec, UnitId u, std::size_t radius) {
  spec.check(u);
  std::vector<UnitId> out;
  for (std::size_t i = 0; i < spec.unit_count(); ++i) {
    if (grid_distance(spec, u, UnitId{i}) <= radius) out.push_back(UnitId{i});
  }
  return out;
}

bool is_connected(const GridSpec& spec, std::span<const UnitId> units) {
  if (units.empty()) throw Error(Errc::invalid_argument, "connectivity of an empty unit set");
  for (UnitId u : units) spec.check(u);

  std::vector<UnitId> nodes(units.begin(), units.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<bool> seen(nodes.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (!seen[k] && grid_distance(spec, nodes[cur], nodes[k]) <= 1) {
        seen[k] = true;
        ++reached;
        stack.push_back(k);
      }
    }
  }
  return reached == nodes.size();
}

}  // namespace kdisj
