#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kdisj/disjunctive.hpp"
#include "kdisj/matrix.hpp"

namespace kdisj {

/// Parsed schema file. Each non-comment line reads
///   NAME categorical MOD1 MOD2 ...
///   NAME quantitative
///   NAME id
/// Modality order on the line fixes the global modality order.
struct SchemaFile {
  CategoricalSchema schema;
  std::string id_column = "id";
};

SchemaFile read_schema(std::istream& is);
SchemaFile load_schema(const std::filesystem::path& path);
void write_schema(std::ostream& os, const SchemaFile& schema);

enum class RecordPolicy { error, drop };

struct DroppedRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;
};

struct Dataset {
  SchemaFile schema;
  std::vector<std::string> ids;
  std::vector<CategoricalRecord> records;
  Matrix quantitative;  // N x Q
  std::vector<DroppedRow> dropped;

  std::size_t size() const noexcept { return records.size(); }
};

/// Comma-delimited rows under a header naming every schema variable. Empty,
/// "NA" and "?" fields count as missing. Rows that are incomplete or violate
/// the schema abort the load under RecordPolicy::error and are skipped and
/// logged under RecordPolicy::drop.
Dataset read_dataset(std::istream& is, const SchemaFile& schema, RecordPolicy policy);
Dataset load(const std::filesystem::path& data_path, const std::filesystem::path& schema_path,
             RecordPolicy policy);

void write_dataset(std::ostream& os, const Dataset& dataset);

/// Numeric table for quantitative training: header row then numbers only.
Matrix read_numeric_csv(std::istream& is, std::vector<std::string>* header = nullptr);

}  // namespace kdisj
