#include "kdisj/dataset.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "kdisj/error.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

namespace {

bool is_missing(const std::string& field) { return field.empty() || field == "NA" || field == "?"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SchemaFile read_schema(std::istream& is) {
  std::vector<Variable> categorical;
  std::vector<std::string> quantitative;
  std::optional<std::string> id_column;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto tokens = split_whitespace(body);
    const auto where = "schema line " + std::to_string(line_no);
    if (tokens.size() < 2) throw Error(Errc::config, where + ": expected 'NAME ROLE ...'");
    const std::string& role = tokens[1];
    if (role == "categorical") {
      if (tokens.size() < 3) throw Error(Errc::config, where + ": categorical variable without modalities");
      categorical.push_back({tokens[0], std::vector<std::string>(tokens.begin() + 2, tokens.end())});
    } else if (role == "quantitative" && tokens.size() == 2) {
      quantitative.push_back(tokens[0]);
    } else if (role == "id" && tokens.size() == 2) {
      if (id_column) throw Error(Errc::config, where + ": second id column");
      id_column = tokens[0];
    } else {
      throw Error(Errc::config, where + ": unknown role '" + role + "'");
    }
  }
  if (categorical.empty()) throw Error(Errc::config, "schema declares no categorical variable");
  SchemaFile out{CategoricalSchema(std::move(categorical), std::move(quantitative)), id_column.value_or("id")};
  if (out.schema.find_variable(out.id_column) ||
      std::find(out.schema.quantitative().begin(), out.schema.quantitative().end(), out.id_column) !=
          out.schema.quantitative().end())
    throw Error(Errc::config, "id column '" + out.id_column + "' clashes with a variable");
  return out;
}

SchemaFile load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read schema " + path.string());
  return read_schema(in);
}

void write_schema(std::ostream& os, const SchemaFile& schema) {
  os << schema.id_column << " id\n";
  for (const auto& var : schema.schema.variables()) {
    os << var.name << " categorical";
    for (const auto& m : var.modalities) os << ' ' << m;
    os << '\n';
  }
  for (const auto& q : schema.schema.quantitative()) os << q << " quantitative\n";
}

Dataset read_dataset(std::istream& is, const SchemaFile& schema, RecordPolicy policy) {
  const auto& cat = schema.schema;
  const std::size_t k_vars = cat.variable_count();
  const std::size_t q_vars = cat.quantitative().size();

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!trim(line).empty() && trim(line).front() != '#') break;
  }
  if (trim(line).empty()) throw Error(Errc::io, "data file has no header row");
  const auto header = split_csv(line);
  const std::size_t header_line = line_no;

  std::map<std::string, std::size_t> column_of;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!column_of.emplace(header[c], c).second)
      throw Error(Errc::io, "header repeats column '" + header[c] + "'");
  }
  auto require = [&](const std::string& name) {
    const auto it = column_of.find(name);
    if (it == column_of.end()) throw Error(Errc::io, "header lacks column '" + name + "'");
    return it->second;
  };
  std::vector<std::size_t> cat_cols, quant_cols;
  for (const auto& var : cat.variables()) cat_cols.push_back(require(var.name));
  for (const auto& q : cat.quantitative()) quant_cols.push_back(require(q));
  std::optional<std::size_t> id_col;
  if (const auto it = column_of.find(schema.id_column); it != column_of.end()) id_col = it->second;
  if (header.size() != k_vars + q_vars + (id_col ? 1 : 0))
    throw Error(Errc::io, "header has columns the schema does not declare");

  Dataset ds;
  ds.schema = schema;
  std::vector<double> quant_values;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    try {
      if (fields.size() != header.size())
        throw Error(Errc::incomplete_record, "expected " + std::to_string(header.size()) + " fields, found " +
                                                 std::to_string(fields.size()));
      CategoricalRecord rec;
      for (std::size_t k = 0; k < k_vars; ++k) {
        const auto& value = fields[cat_cols[k]];
        const auto& name = cat.variables()[k].name;
        if (is_missing(value)) throw Error(Errc::incomplete_record, "missing value for '" + name + "'");
        if (!cat.global_index(k, value))
          throw Error(Errc::schema_violation, "unknown modality '" + value + "' for '" + name + "'");
        rec.push_back(value);
      }
      std::vector<double> qs;
      for (std::size_t q = 0; q < q_vars; ++q) {
        const auto& value = fields[quant_cols[q]];
        if (is_missing(value))
          throw Error(Errc::incomplete_record, "missing value for '" + cat.quantitative()[q] + "'");
        qs.push_back(parse_real(value));
      }
      ds.ids.push_back(id_col ? fields[*id_col] : std::to_string(line_no - header_line));
      ds.records.push_back(std::move(rec));
      quant_values.insert(quant_values.end(), qs.begin(), qs.end());
    } catch (const Error& e) {
      if (policy == RecordPolicy::error)
        throw Error(e.code(), "data line " + std::to_string(line_no) + ": " + e.what());
      ds.dropped.push_back({line_no, e.what()});
    }
  }
  if (ds.records.empty()) throw Error(Errc::incomplete_record, "no usable rows in the data file");

  ds.quantitative = Matrix(ds.records.size(), q_vars);
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    for (std::size_t q = 0; q < q_vars; ++q) ds.quantitative(i, q) = quant_values[i * q_vars + q];
  }
  return ds;
}

Dataset load(const std::filesystem::path& data_path, const std::filesystem::path& schema_path,
             RecordPolicy policy) {
  const auto schema = load_schema(schema_path);
  std::ifstream in(data_path);
  if (!in) throw Error(Errc::io, "cannot read data " + data_path.string());
  return read_dataset(in, schema, policy);
}

void write_dataset(std::ostream& os, const Dataset& dataset) {
  const auto& cat = dataset.schema.schema;
  os << csv_field(dataset.schema.id_column);
  for (const auto& var : cat.variables()) os << ',' << csv_field(var.name);
  for (const auto& q : cat.quantitative()) os << ',' << csv_field(q);
  os << '\n';
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    os << csv_field(dataset.ids[i]);
    for (const auto& v : dataset.records[i]) os << ',' << csv_field(v);
    for (std::size_t q = 0; q < cat.quantitative().size(); ++q) os << ',' << format_real(dataset.quantitative(i, q));
    os << '\n';
  }
}

Matrix read_numeric_csv(std::istream& is, std::vector<std::string>* header) {
  std::string line;
  while (std::getline(is, line) && (trim(line).empty() || trim(line).front() == '#')) {
  }
  const auto names = split_csv(line);
  if (trim(line).empty()) throw Error(Errc::io, "numeric file has no header row");
  if (header) *header = names;
  std::vector<double> values;
  std::size_t rows = 0, line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != names.size())
      throw Error(Errc::incomplete_record, "numeric line " + std::to_string(line_no) + " has " +
                                               std::to_string(fields.size()) + " fields");
    for (const auto& f : fields) {
      try {
        values.push_back(parse_real(f));
      } catch (const Error& e) {
        throw Error(e.code(), "numeric line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    ++rows;
  }
  Matrix out(rows, names.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < names.size(); ++c) out(r, c) = values[r * names.size() + c];
  }
  return out;
}

}  // namespace kdisj
