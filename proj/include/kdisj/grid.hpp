#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kdisj {

/// Lattice shapes. A cylinder wraps its columns; a torus wraps both axes.
enum class Topology { string, rectangle, cylinder, torus };

std::string_view to_string(Topology topology) noexcept;
Topology parse_topology(std::string_view name);

/// Row-major unit index: index = row * cols + col.
struct UnitId {
  std::size_t index = 0;

  auto operator<=>(const UnitId&) const = default;
};

class GridSpec {
 public:
  /// Throws Errc::invalid_argument for an empty grid or a string that is not
  /// a single row or column.
  GridSpec(std::size_t rows, std::size_t cols, Topology topology);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Topology topology() const noexcept { return topology_; }
  std::size_t unit_count() const noexcept { return rows_ * cols_; }

  UnitId unit(std::size_t row, std::size_t col) const;
  std::size_t row_of(UnitId u) const noexcept { return u.index / cols_; }
  std::size_t col_of(UnitId u) const noexcept { return u.index % cols_; }

  /// Throws Errc::invalid_unit when u is outside [0, unit_count()).
  void check(UnitId u) const;

  bool operator==(const GridSpec&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Topology topology_;
};

/// Chebyshev distance between unit coordinates, with wrap-around on the
/// periodic axes.
std::size_t grid_distance(const GridSpec& spec, UnitId u, UnitId v);

/// All units within `radius` of u, in increasing index order. Always holds u.
std::vector<UnitId> neighbors(const GridSpec& spec, UnitId u, std::size_t radius);

/// True iff the units form a single component under radius-1 adjacency.
bool is_connected(const GridSpec& spec, std::span<const UnitId> units);

}  // namespace kdisj
