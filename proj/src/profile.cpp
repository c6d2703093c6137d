#include "kdisj/profile.hpp"

#include <limits>
#include <map>

#include "kdisj/error.hpp"
#include "kdisj/joint_map.hpp"

namespace kdisj {

namespace {

void check_labels(std::span<const std::size_t> labels, std::size_t rows, std::size_t classes) {
  if (labels.size() != rows)
    throw Error(Errc::shape, std::to_string(labels.size()) + " labels for " + std::to_string(rows) + " rows");
  for (std::size_t l : labels) {
    if (l >= classes) throw Error(Errc::invalid_argument, "label " + std::to_string(l) + " out of range");
  }
}

}  // namespace

std::vector<std::size_t> row_labels(std::span<const UnitId> individual_units, const SuperClassification& sc) {
  std::vector<std::size_t> out;
  out.reserve(individual_units.size());
  for (UnitId u : individual_units) out.push_back(sc.labels.at(u.index));
  return out;
}

std::vector<std::size_t> class_sizes(std::span<const UnitId> individual_units, const SuperClassification& sc) {
  std::vector<std::size_t> sizes(sc.count, 0);
  for (UnitId u : individual_units) ++sizes[sc.labels.at(u.index)];
  return sizes;
}

PercentTable modality_percentages(const DisjunctiveTable& table, std::span<const std::size_t> labels,
                                  std::size_t classes) {
  check_labels(labels, table.rows(), classes);
  PercentTable out{Matrix(classes, table.cols()), std::vector<double>(table.cols(), 0.0),
                   std::vector<bool>(classes, false)};
  std::vector<std::size_t> sizes(classes, 0);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    ++sizes[labels[i]];
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (table.at(i, j)) {
        out.pct(labels[i], j) += 1.0;
        out.total[j] += 1.0;
      }
    }
  }
  for (std::size_t k = 0; k < classes; ++k) {
    out.empty[k] = sizes[k] == 0;
    if (out.empty[k]) continue;
    for (std::size_t j = 0; j < table.cols(); ++j) out.pct(k, j) *= 100.0 / static_cast<double>(sizes[k]);
  }
  if (table.rows() > 0) {
    for (double& t : out.total) t *= 100.0 / static_cast<double>(table.rows());
  }
  return out;
}

MeansTable class_means(const Matrix& quantitative, std::span<const std::size_t> labels, std::size_t classes) {
  check_labels(labels, quantitative.rows(), classes);
  const std::size_t q = quantitative.cols();
  MeansTable out{Matrix(classes, q), std::vector<double>(q, 0.0), std::vector<bool>(classes, false)};
  std::vector<std::size_t> sizes(classes, 0);
  for (std::size_t i = 0; i < quantitative.rows(); ++i) {
    ++sizes[labels[i]];
    for (std::size_t c = 0; c < q; ++c) {
      out.means(labels[i], c) += quantitative(i, c);
      out.grand[c] += quantitative(i, c);
    }
  }
  for (std::size_t k = 0; k < classes; ++k) {
    out.empty[k] = sizes[k] == 0;
    if (out.empty[k]) continue;
    for (std::size_t c = 0; c < q; ++c) out.means(k, c) /= static_cast<double>(sizes[k]);
  }
  if (quantitative.rows() > 0) {
    for (double& g : out.grand) g /= static_cast<double>(quantitative.rows());
  }
  return out;
}

FisherResult fisher_f(std::span<const double> values, std::span<const std::size_t> labels) {
  if (values.size() != labels.size()) throw Error(Errc::shape, "one label per value required");
  std::map<std::size_t, std::pair<double, std::size_t>> groups;  // sum, count
  double grand = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto& g = groups[labels[i]];
    g.first += values[i];
    ++g.second;
    grand += values[i];
  }
  const std::size_t n = values.size();
  const std::size_t g = groups.size();
  if (g < 2) throw Error(Errc::invalid_argument, "analysis of variance needs at least two classes");
  if (n <= g) throw Error(Errc::invalid_argument, "analysis of variance needs more values than classes");
  grand /= static_cast<double>(n);

  std::map<std::size_t, double> means;
  double ss_between = 0.0;
  for (const auto& [label, sc] : groups) {
    const double mean = sc.first / static_cast<double>(sc.second);
    means[label] = mean;
    ss_between += static_cast<double>(sc.second) * (mean - grand) * (mean - grand);
  }
  double ss_within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - means[labels[i]];
    ss_within += d * d;
  }

  FisherResult out;
  out.df_between = g - 1;
  out.df_within = n - g;
  if (ss_within == 0.0) {
    out.infinite = true;
    out.f = std::numeric_limits<double>::infinity();
    return out;
  }
  out.f = (ss_between / static_cast<double>(out.df_between)) / (ss_within / static_cast<double>(out.df_within));
  return out;
}

double deviation(std::size_t m, std::size_t k, const DisjunctiveTable& table, std::span<const std::size_t> labels) {
  if (m >= table.cols()) throw Error(Errc::invalid_argument, "modality out of range");
  if (labels.size() != table.rows()) throw Error(Errc::shape, "one label per row required");
  std::size_t n_m = 0, n_k = 0, both = 0;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const bool has = table.at(i, m);
    const bool in = labels[i] == k;
    n_m += has;
    n_k += in;
    both += has && in;
  }
  const double n = static_cast<double>(table.rows());
  return static_cast<double>(both) - static_cast<double>(n_m) * static_cast<double>(n_k) / n;
}

Matrix deviation_table(const DisjunctiveTable& table, std::span<const std::size_t> labels, std::size_t classes) {
  check_labels(labels, table.rows(), classes);
  Matrix counts(table.cols(), classes);
  std::vector<double> n_m(table.cols(), 0.0), n_k(classes, 0.0);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    n_k[labels[i]] += 1.0;
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (table.at(i, j)) {
        counts(j, labels[i]) += 1.0;
        n_m[j] += 1.0;
      }
    }
  }
  const double n = static_cast<double>(table.rows());
  for (std::size_t j = 0; j < table.cols(); ++j) {
    for (std::size_t k = 0; k < classes; ++k) counts(j, k) -= n_m[j] * n_k[k] / n;
  }
  return counts;
}

double positive_deviation_rate(std::span<const UnitId> modality_units,
                               std::span<const std::size_t> modality_columns, const SuperClassification& sc,
                               const DisjunctiveTable& table, std::span<const std::size_t> labels) {
  if (modality_units.size() != modality_columns.size())
    throw Error(Errc::shape, "one unit per modality column required");
  if (modality_units.empty()) return 0.0;
  const Matrix dev = deviation_table(table, labels, sc.count);
  std::size_t positive = 0;
  for (std::size_t c = 0; c < modality_units.size(); ++c) {
    const std::size_t k = sc.labels.at(modality_units[c].index);
    if (dev(modality_columns[c], k) > 0.0) ++positive;
  }
  return static_cast<double>(positive) / static_cast<double>(modality_units.size());
}

double positive_deviation_rate(const KdisjModel& model, const AdjustedTable& adjusted,
                               const SuperClassification& sc, const DisjunctiveTable& table,
                               std::span<const std::size_t> labels) {
  const auto units = classify_modalities(model, adjusted);
  return positive_deviation_rate(units, adjusted.retained, sc, table, labels);
}

}  // namespace kdisj
