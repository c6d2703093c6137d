#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "kdisj/grid.hpp"
#include "kdisj/som.hpp"

namespace kdisj {

enum class Linkage { ward, complete, average };

std::string_view to_string(Linkage linkage) noexcept;
Linkage parse_linkage(std::string_view name);

/// Clusters are numbered like the leaves: 0..U-1 are units, the cluster made
/// by merge s gets number U + s.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  Linkage linkage = Linkage::ward;
  std::vector<Merge> merges;
};

/// Agglomerative clustering of the code vectors. Ward heights are the
/// increase in within-cluster sum of squares caused by each merge; complete
/// and average linkage use Euclidean distances. Ties go to the pair with the
/// smallest cluster numbers. `range` restricts the components compared.
Dendrogram hierarchical_cluster(const Codebook& cb, Linkage linkage = Linkage::ward,
                                std::optional<ComponentRange> range = std::nullopt);

struct SuperClassification {
  std::size_t count = 0;
  std::vector<std::size_t> labels;  // super class per unit

  std::vector<UnitId> members(std::size_t k) const;
};

/// Undo the last S-1 merges. Classes are numbered by their smallest unit.
SuperClassification cut(const Dendrogram& dendrogram, std::size_t classes);

struct ContiguityReport {
  std::vector<bool> contiguous;
  std::size_t violations = 0;
};

ContiguityReport contiguity_report(const SuperClassification& sc, const GridSpec& spec);

struct ElbowEntry {
  std::size_t classes = 0;  // class count before the merge
  double height = 0.0;      // height of the merge going to classes - 1
  double gap = 0.0;         // height minus the height of the previous merge
};

/// Merge-height gaps, from U classes down to 2.
std::vector<ElbowEntry> elbow_report(const Dendrogram& dendrogram);

void write_dendrogram(std::ostream& os, const Dendrogram& dendrogram);

}  // namespace kdisj
