#include "kdisj/disjunctive.hpp"

#include <cmath>
#include <set>

#include "kdisj/error.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

CategoricalSchema::CategoricalSchema(std::vector<Variable> categorical,
                                     std::vector<std::string> quantitative)
    : variables_(std::move(categorical)), quantitative_(std::move(quantitative)) {
  std::set<std::string> names;
  for (const auto& var : variables_) {
    if (var.name.empty()) throw Error(Errc::config, "variable with an empty name");
    if (!names.insert(var.name).second) throw Error(Errc::config, "duplicate variable '" + var.name + "'");
    if (var.modalities.empty()) throw Error(Errc::config, "variable '" + var.name + "' has no modalities");
    std::set<std::string> labels;
    offsets_.push_back(labels_.size());
    for (const auto& label : var.modalities) {
      if (label.empty()) throw Error(Errc::config, "empty modality label in '" + var.name + "'");
      if (!labels.insert(label).second)
        throw Error(Errc::config, "duplicate modality '" + label + "' in '" + var.name + "'");
      owner_.push_back(offsets_.size() - 1);
      labels_.push_back(label);
    }
  }
  for (const auto& q : quantitative_) {
    if (q.empty() || !names.insert(q).second)
      throw Error(Errc::config, "duplicate or empty variable name '" + q + "'");
  }
}

std::optional<std::size_t> CategoricalSchema::find_variable(std::string_view name) const {
  for (std::size_t k = 0; k < variables_.size(); ++k) {
    if (variables_[k].name == name) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> CategoricalSchema::global_index(std::size_t k, std::string_view label) const {
  const auto& mods = variables_.at(k).modalities;
  for (std::size_t m = 0; m < mods.size(); ++m) {
    if (mods[m] == label) return offsets_[k] + m;
  }
  return std::nullopt;
}

std::string CategoricalSchema::modality_name(std::size_t j) const {
  return variables_.at(owner_.at(j)).name + "." + labels_.at(j);
}

std::uint64_t CategoricalSchema::hash() const {
  std::string canon;
  for (const auto& var : variables_) {
    canon += "c:" + var.name;
    for (const auto& m : var.modalities) canon += "|" + m;
    canon += "\n";
  }
  for (const auto& q : quantitative_) canon += "q:" + q + "\n";
  return fnv1a64(canon);
}

DisjunctiveTable::DisjunctiveTable(CategoricalSchema schema, std::size_t rows)
    : schema_(std::move(schema)), rows_(rows), cells_(rows * schema_.modality_count(), 0) {}

DisjunctiveTable encode(std::span<const CategoricalRecord> records, const CategoricalSchema& schema) {
  DisjunctiveTable table(schema, records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.size() != schema.variable_count())
      throw Error(Errc::incomplete_record, "row " + std::to_string(i) + " has " +
                                               std::to_string(rec.size()) + " values, expected " +
                                               std::to_string(schema.variable_count()));
    for (std::size_t k = 0; k < schema.variable_count(); ++k) {
      const auto& name = schema.variables()[k].name;
      if (rec[k].empty())
        throw Error(Errc::incomplete_record,
                    "row " + std::to_string(i) + " is missing variable '" + name + "'");
      const auto j = schema.global_index(k, rec[k]);
      if (!j)
        throw Error(Errc::schema_violation, "row " + std::to_string(i) + ", variable '" + name +
                                                "': unknown modality '" + rec[k] + "'");
      table.set(i, *j);
    }
  }
  return table;
}

std::vector<CategoricalRecord> decode(const DisjunctiveTable& table) {
  const auto& schema = table.schema();
  std::vector<CategoricalRecord> out(table.rows());
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t k = 0; k < schema.variable_count(); ++k) {
      const auto& mods = schema.variables()[k].modalities;
      for (std::size_t m = 0; m < mods.size(); ++m) {
        if (table.at(i, schema.offset(k) + m)) {
          out[i].push_back(mods[m]);
          break;
        }
      }
    }
  }
  return out;
}

std::vector<std::size_t> column_counts(const DisjunctiveTable& table) {
  std::vector<std::size_t> counts(table.cols(), 0);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.cols(); ++j) counts[j] += table.at(i, j) ? 1 : 0;
  }
  return counts;
}

AdjustedTable adjust(const DisjunctiveTable& table, EmptyModalityPolicy policy) {
  const auto counts = column_counts(table);
  const auto& schema = table.schema();
  AdjustedTable out;
  out.row_sum = schema.variable_count();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] > 0) {
      out.retained.push_back(j);
      out.counts.push_back(counts[j]);
    } else if (policy == EmptyModalityPolicy::error) {
      throw Error(Errc::empty_modality, "modality '" + schema.modality_name(j) + "' is never chosen");
    } else {
      out.dropped.push_back(j);
    }
  }

  const std::size_t n = table.rows();
  const std::size_t m = out.retained.size();
  out.values = Matrix(n, m);
  out.columns = Matrix(m, n);
  for (std::size_t c = 0; c < m; ++c) {
    const double value =
        1.0 / std::sqrt(static_cast<double>(out.row_sum) * static_cast<double>(out.counts[c]));
    for (std::size_t i = 0; i < n; ++i) {
      if (table.at(i, out.retained[c])) {
        out.values(i, c) = value;
        out.columns(c, i) = value;
      }
    }
  }
  return out;
}

std::size_t rarest_modality(const AdjustedTable& adjusted, std::size_t i) {
  if (i >= adjusted.rows()) throw Error(Errc::invalid_argument, "row " + std::to_string(i) + " out of range");
  const auto row = adjusted.values.row(i);
  std::size_t best = adjusted.cols();
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == 0.0) continue;
    if (best == adjusted.cols() || adjusted.counts[j] < adjusted.counts[best]) best = j;
  }
  if (best == adjusted.cols())
    throw Error(Errc::invalid_argument, "row " + std::to_string(i) + " holds no modality");
  return best;
}

}  // namespace kdisj
