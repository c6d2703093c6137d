#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kdisj/dataset.hpp"

namespace kdisj {

struct PlanCluster {
  std::string name;
  std::size_t size = 0;
  std::vector<std::vector<double>> probs;  // per categorical variable, per modality
  std::vector<std::pair<double, double>> normals;  // per quantitative variable: mean, sd
};

/// Cluster plan for synthetic data with planted structure. Text form:
///   categorical NAME MOD1 MOD2 ...
///   quantitative NAME
///   cluster NAME SIZE
///   probs CLUSTER VARIABLE P1 P2 ...
///   mean CLUSTER VARIABLE MEAN SD
/// Distributions left out are uniform (categorical) or N(0, 1).
struct SyntheticPlan {
  SchemaFile schema;
  std::vector<PlanCluster> clusters;
};

SyntheticPlan read_plan(std::istream& is);
SyntheticPlan load_plan(const std::filesystem::path& path);

struct SyntheticData {
  Dataset dataset;
  std::vector<std::size_t> truth;  // cluster index per row
  std::vector<std::string> cluster_names;
};

/// Exact cluster sizes, rows shuffled, ids r0001, r0002, ...
SyntheticData generate_synthetic(const SyntheticPlan& plan, std::uint64_t seed);

void write_truth(std::ostream& os, const SyntheticData& data);

}  // namespace kdisj
