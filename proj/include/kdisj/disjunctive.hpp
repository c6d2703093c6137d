#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdisj/matrix.hpp"

namespace kdisj {

struct Variable {
  std::string name;
  std::vector<std::string> modalities;

  bool operator==(const Variable&) const = default;
};

/// K qualitative variables plus Q quantitative variable names. Global modality
/// indices run over the categorical variables in declaration order.
class CategoricalSchema {
 public:
  CategoricalSchema() = default;
  CategoricalSchema(std::vector<Variable> categorical, std::vector<std::string> quantitative = {});

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::vector<std::string>& quantitative() const noexcept { return quantitative_; }

  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t modality_count() const noexcept { return labels_.size(); }

  /// Global index of the first modality of variable k.
  std::size_t offset(std::size_t k) const { return offsets_.at(k); }
  std::optional<std::size_t> find_variable(std::string_view name) const;
  std::optional<std::size_t> global_index(std::size_t k, std::string_view label) const;

  std::size_t variable_of(std::size_t j) const { return owner_.at(j); }
  const std::string& label(std::size_t j) const { return labels_.at(j); }
  /// "VARIABLE.label"
  std::string modality_name(std::size_t j) const;

  std::uint64_t hash() const;

  bool operator==(const CategoricalSchema& other) const {
    return variables_ == other.variables_ && quantitative_ == other.quantitative_;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<std::string> quantitative_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> owner_;
  std::vector<std::string> labels_;
};

/// One modality label per categorical variable; an empty string is missing.
using CategoricalRecord = std::vector<std::string>;

/// N x M 0/1 table with exactly one 1 per variable block in every row.
class DisjunctiveTable {
 public:
  DisjunctiveTable(CategoricalSchema schema, std::size_t rows);

  const CategoricalSchema& schema() const noexcept { return schema_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return schema_.modality_count(); }

  bool at(std::size_t i, std::size_t j) const { return cells_[i * cols() + j] != 0; }
  void set(std::size_t i, std::size_t j) { cells_[i * cols() + j] = 1; }

 private:
  CategoricalSchema schema_;
  std::size_t rows_;
  std::vector<std::uint8_t> cells_;
};

DisjunctiveTable encode(std::span<const CategoricalRecord> records, const CategoricalSchema& schema);

/// Inverse of encode: the chosen label of each block.
std::vector<CategoricalRecord> decode(const DisjunctiveTable& table);

/// d_.j: number of individuals holding modality j.
std::vector<std::size_t> column_counts(const DisjunctiveTable& table);

enum class EmptyModalityPolicy { error, drop };

/// d^c_ij = d_ij / sqrt(K * d_.j) over the retained (non-empty) columns.
struct AdjustedTable {
  Matrix values;                       // N x M'
  Matrix columns;                      // M' x N, transpose of values
  std::vector<std::size_t> counts;     // d_.j per retained column
  std::vector<std::size_t> retained;   // global modality index per retained column
  std::vector<std::size_t> dropped;    // global indices of empty modalities removed
  std::size_t row_sum = 0;             // K

  std::size_t rows() const noexcept { return values.rows(); }
  std::size_t cols() const noexcept { return values.cols(); }
};

AdjustedTable adjust(const DisjunctiveTable& table, EmptyModalityPolicy policy);

/// Retained column of the rarest modality held by individual i; ties go to
/// the smallest column.
std::size_t rarest_modality(const AdjustedTable& adjusted, std::size_t i);

}  // namespace kdisj
