#include "kdisj/reports.hpp"

#include <cmath>
#include <ostream>
#include <set>

#include "kdisj/error.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

void write_disjunctive(std::ostream& os, const DisjunctiveTable& table) {
  const auto& schema = table.schema();
  for (std::size_t j = 0; j < table.cols(); ++j) os << (j ? "," : "") << schema.modality_name(j);
  os << '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.cols(); ++j) os << (j ? "," : "") << (table.at(i, j) ? '1' : '0');
    os << '\n';
  }
}

void write_adjusted(std::ostream& os, const AdjustedTable& adjusted, const CategoricalSchema& schema) {
  for (std::size_t c = 0; c < adjusted.cols(); ++c) os << (c ? "," : "") << schema.modality_name(adjusted.retained[c]);
  os << '\n';
  for (std::size_t i = 0; i < adjusted.rows(); ++i) {
    for (std::size_t c = 0; c < adjusted.cols(); ++c) os << (c ? "," : "") << format_real(adjusted.values(i, c));
    os << '\n';
  }
}

void write_dropped_rows(std::ostream& os, std::span<const DroppedRow> dropped) {
  os << "line\treason\n";
  for (const auto& d : dropped) os << d.line << '\t' << d.reason << '\n';
}

void write_dropped_modalities(std::ostream& os, const AdjustedTable& adjusted, const CategoricalSchema& schema) {
  os << "modality\n";
  for (std::size_t j : adjusted.dropped) os << schema.modality_name(j) << '\n';
}

void write_individuals(std::ostream& os, std::span<const std::string> ids, std::span<const UnitId> units,
                       const GridSpec& spec, const SuperClassification* sc) {
  os << "id\tunit\trow\tcol" << (sc ? "\tsuperclass" : "") << '\n';
  for (std::size_t i = 0; i < units.size(); ++i) {
    os << ids[i] << '\t' << units[i].index << '\t' << spec.row_of(units[i]) << '\t' << spec.col_of(units[i]);
    if (sc) os << '\t' << sc->labels.at(units[i].index) + 1;
    os << '\n';
  }
}

void write_modalities(std::ostream& os, const CategoricalSchema& schema, std::span<const std::size_t> columns,
                      std::span<const UnitId> units, const GridSpec& spec, const SuperClassification* sc) {
  os << "modality\tunit\trow\tcol" << (sc ? "\tsuperclass" : "") << '\n';
  for (std::size_t c = 0; c < units.size(); ++c) {
    os << schema.modality_name(columns[c]) << '\t' << units[c].index << '\t' << spec.row_of(units[c]) << '\t'
       << spec.col_of(units[c]);
    if (sc) os << '\t' << sc->labels.at(units[c].index) + 1;
    os << '\n';
  }
}

void write_superclasses(std::ostream& os, const SuperClassification& sc, const GridSpec& spec) {
  os << "unit\trow\tcol\tsuperclass\n";
  for (std::size_t u = 0; u < sc.labels.size(); ++u)
    os << u << '\t' << spec.row_of(UnitId{u}) << '\t' << spec.col_of(UnitId{u}) << '\t' << sc.labels[u] + 1 << '\n';
}

void write_contiguity(std::ostream& os, const SuperClassification& sc, const ContiguityReport& report) {
  os << "# violations=" << report.violations << '\n';
  os << "superclass\tunits\tcontiguous\n";
  for (std::size_t k = 0; k < sc.count; ++k)
    os << k + 1 << '\t' << sc.members(k).size() << '\t' << (report.contiguous[k] ? "yes" : "no") << '\n';
}

void write_elbow(std::ostream& os, std::span<const ElbowEntry> elbow) {
  os << "classes\theight\tgap\n";
  for (const auto& e : elbow) os << e.classes << '\t' << format_real(e.height) << '\t' << format_real(e.gap) << '\n';
}

void write_sizes(std::ostream& os, std::span<const std::size_t> sizes) {
  os << "class\tsize\n";
  for (std::size_t k = 0; k < sizes.size(); ++k) os << k + 1 << '\t' << sizes[k] << '\n';
}

void write_modality_pct(std::ostream& os, const CategoricalSchema& schema, const PercentTable& pct) {
  os << "modality";
  for (std::size_t k = 0; k < pct.pct.rows(); ++k) os << '\t' << k + 1;
  os << "\tTot\n";
  for (std::size_t j = 0; j < pct.pct.cols(); ++j) {
    os << schema.modality_name(j);
    for (std::size_t k = 0; k < pct.pct.rows(); ++k) {
      if (pct.empty[k]) os << "\tNA";
      else os << '\t' << std::lround(pct.pct(k, j));
    }
    os << '\t' << std::lround(pct.total[j]) << '\n';
  }
}

void write_means(std::ostream& os, std::span<const std::string> names, const MeansTable& means) {
  os << "variable";
  for (std::size_t k = 0; k < means.means.rows(); ++k) os << '\t' << k + 1;
  os << "\tTotal\n";
  for (std::size_t q = 0; q < names.size(); ++q) {
    os << names[q];
    for (std::size_t k = 0; k < means.means.rows(); ++k) {
      if (means.empty[k]) os << "\tNA";
      else os << '\t' << format_real(means.means(k, q));
    }
    os << '\t' << format_real(means.grand[q]) << '\n';
  }
}

void write_fstats(std::ostream& os, std::span<const std::string> names, const Matrix& quantitative,
                  std::span<const std::size_t> labels) {
  os << "variable\tF\tdf_between\tdf_within\n";
  const std::size_t groups = std::set<std::size_t>(labels.begin(), labels.end()).size();
  for (std::size_t q = 0; q < names.size(); ++q) {
    os << names[q];
    if (groups < 2 || labels.size() <= groups) {
      os << "\tNA\tNA\tNA\n";
      continue;
    }
    std::vector<double> column(quantitative.rows());
    for (std::size_t i = 0; i < column.size(); ++i) column[i] = quantitative(i, q);
    const auto f = fisher_f(column, labels);
    os << '\t' << (f.infinite ? std::string("inf") : format_real(f.f)) << '\t' << f.df_between << '\t' << f.df_within
       << '\n';
  }
}

void write_deviations(std::ostream& os, const CategoricalSchema& schema, const Matrix& deviations) {
  os << "modality";
  for (std::size_t k = 0; k < deviations.cols(); ++k) os << '\t' << k + 1;
  os << '\n';
  for (std::size_t j = 0; j < deviations.rows(); ++j) {
    os << schema.modality_name(j);
    for (std::size_t k = 0; k < deviations.cols(); ++k) os << '\t' << format_real(deviations(j, k));
    os << '\n';
  }
}

}  // namespace kdisj
