#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kdisj/config.hpp"
#include "kdisj/dataset.hpp"
#include "kdisj/disjunctive.hpp"
#include "kdisj/joint_map.hpp"
#include "kdisj/render.hpp"
#include "kdisj/superclass.hpp"

namespace kdisj {

/// Writes artifacts into one directory, each opened by a provenance header,
/// and remembers them so a failed run can remove what it wrote.
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, std::uint64_t config_hash, std::uint64_t seed);

  void write(const std::string& name, std::string_view stage, const std::function<void(std::ostream&)>& body);
  void write_svg(const std::string& name, std::string_view stage, const std::string& svg);
  void write_model(const std::string& name, std::string_view stage, const KdisjModel& model);

  const std::vector<std::filesystem::path>& files() const noexcept { return files_; }
  void discard() noexcept;

 private:
  std::filesystem::path dir_;
  std::uint64_t config_hash_;
  std::uint64_t seed_;
  std::vector<std::filesystem::path> files_;
};

struct Encoded {
  DisjunctiveTable table;
  AdjustedTable adjusted;
};

Encoded encode_dataset(const Dataset& dataset, EmptyModalityPolicy policy);

/// Modality label as shown on maps: the bare label when it is unique in the
/// schema, VARIABLE.label otherwise.
std::vector<std::string> display_labels(const CategoricalSchema& schema, std::span<const std::size_t> columns);

/// Throws Errc::config when the variable is not categorical in the schema.
SplitValues split_values(const Dataset& dataset, const std::string& variable);

Dendrogram cluster_model(const KdisjModel& model, const RunConfig& config);

struct PipelineResult {
  KdisjModel model;
  std::vector<UnitId> individual_units;
  std::vector<UnitId> modality_units;
  Dendrogram dendrogram;
  SuperClassification superclasses;
  ContiguityReport contiguity;
  std::vector<std::size_t> sizes;
  double positive_deviation_rate = 0.0;
  std::vector<std::filesystem::path> artifacts;
};

/// encode, adjust, train, classify, cluster, cut, profile and render,
/// writing every artifact under `out_dir`. A failing stage removes the files
/// already written and rethrows with the stage name.
PipelineResult run_pipeline(const RunConfig& config, const Dataset& dataset, const std::filesystem::path& out_dir);

}  // namespace kdisj
