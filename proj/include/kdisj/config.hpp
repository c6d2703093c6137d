#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kdisj/dataset.hpp"
#include "kdisj/disjunctive.hpp"
#include "kdisj/grid.hpp"
#include "kdisj/som.hpp"
#include "kdisj/superclass.hpp"

namespace kdisj {

enum class ClusterOn { full, individual };

/// Every pipeline setting. Read from `key=value` lines; unknown keys are
/// rejected.
struct RunConfig {
  std::size_t rows = 7;
  std::size_t cols = 7;
  Topology topology = Topology::rectangle;
  std::size_t steps = 0;                // 0: 20 x (number of drawable items)
  double eps0 = 0.5;
  double eps_min = 0.01;
  std::optional<std::size_t> radius0;   // unset: max(rows, cols) / 2
  std::optional<std::uint64_t> seed;
  std::size_t superclasses = 10;
  Linkage linkage = Linkage::ward;
  ClusterOn cluster_on = ClusterOn::individual;
  EmptyModalityPolicy empty_modality = EmptyModalityPolicy::error;
  RecordPolicy incomplete_records = RecordPolicy::error;
  std::string split_variable;

  /// Throws Errc::config on an unknown key or a value out of range.
  void set(std::string_view key, std::string_view value);

  GridSpec grid() const;
  /// Schedule for a run drawing from `drawable` items.
  Schedule schedule(std::size_t drawable) const;

  /// Sorted `key=value` lines; the hash covers exactly this text.
  std::string canonical() const;
  std::uint64_t hash() const;

  static const std::vector<std::string>& keys();
};

RunConfig read_config(std::istream& is);
RunConfig load_config(const std::string& path);

}  // namespace kdisj
