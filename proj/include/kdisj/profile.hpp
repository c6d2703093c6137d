#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kdisj/disjunctive.hpp"
#include "kdisj/grid.hpp"
#include "kdisj/matrix.hpp"
#include "kdisj/superclass.hpp"

namespace kdisj {

class KdisjModel;

/// Super class of each individual, from its unit.
std::vector<std::size_t> row_labels(std::span<const UnitId> individual_units, const SuperClassification& sc);

/// Individuals per super class; sums to N.
std::vector<std::size_t> class_sizes(std::span<const UnitId> individual_units, const SuperClassification& sc);

/// pct(k, j) = 100 * share of class k holding modality j. Rows of empty
/// classes are zero and flagged in `empty`.
struct PercentTable {
  Matrix pct;               // S x M
  std::vector<double> total;  // whole-population percentage per modality
  std::vector<bool> empty;
};

PercentTable modality_percentages(const DisjunctiveTable& table, std::span<const std::size_t> labels,
                                  std::size_t classes);

struct MeansTable {
  Matrix means;               // S x Q
  std::vector<double> grand;  // Q
  std::vector<bool> empty;
};

MeansTable class_means(const Matrix& quantitative, std::span<const std::size_t> labels, std::size_t classes);

struct FisherResult {
  double f = 0.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  bool infinite = false;  // zero within-class sum of squares
};

/// One-way analysis of variance over the classes present in `labels`.
FisherResult fisher_f(std::span<const double> values, std::span<const std::size_t> labels);

/// count(m, k) - n_m * n_k / n
double deviation(std::size_t m, std::size_t k, const DisjunctiveTable& table,
                 std::span<const std::size_t> labels);

/// M x S table of deviation(m, k).
Matrix deviation_table(const DisjunctiveTable& table, std::span<const std::size_t> labels, std::size_t classes);

/// Share of modalities whose own super class (the class of the unit they are
/// classified to) gives them a strictly positive deviation. `modality_units`
/// and `modality_columns` run in parallel; the latter holds global modality
/// indices into `table`.
double positive_deviation_rate(std::span<const UnitId> modality_units,
                               std::span<const std::size_t> modality_columns, const SuperClassification& sc,
                               const DisjunctiveTable& table, std::span<const std::size_t> labels);

double positive_deviation_rate(const KdisjModel& model, const AdjustedTable& adjusted,
                               const SuperClassification& sc, const DisjunctiveTable& table,
                               std::span<const std::size_t> labels);

}  // namespace kdisj
