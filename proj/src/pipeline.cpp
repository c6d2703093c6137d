#include "kdisj/pipeline.hpp"

#include <fstream>
#include <map>

#include "kdisj/error.hpp"
#include "kdisj/profile.hpp"
#include "kdisj/reports.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

ArtifactWriter::ArtifactWriter(std::filesystem::path dir, std::uint64_t config_hash, std::uint64_t seed)
    : dir_(std::move(dir)), config_hash_(config_hash), seed_(seed) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(Errc::io, "cannot create output directory " + dir_.string());
}

void ArtifactWriter::write(const std::string& name, std::string_view stage,
                           const std::function<void(std::ostream&)>& body) {
  const auto path = dir_ / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  files_.push_back(path);
  out << provenance_line(config_hash_, seed_, stage) << '\n';
  body(out);
  if (!out) throw Error(Errc::io, "failed writing " + path.string());
}

void ArtifactWriter::write_svg(const std::string& name, std::string_view stage, const std::string& svg) {
  const auto path = dir_ / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  files_.push_back(path);
  out << "<!-- " << provenance_line(config_hash_, seed_, stage).substr(2) << " -->\n" << svg;
}

void ArtifactWriter::write_model(const std::string& name, std::string_view stage, const KdisjModel& model) {
  const auto path = dir_ / name;
  files_.push_back(path);
  files_.push_back(path.string() + ".meta");
  save_model(path, model, provenance_line(config_hash_, seed_, stage));
}

void ArtifactWriter::discard() noexcept {
  for (const auto& f : files_) {
    std::error_code ec;
    std::filesystem::remove(f, ec);
  }
  files_.clear();
}

Encoded encode_dataset(const Dataset& dataset, EmptyModalityPolicy policy) {
  auto table = encode(dataset.records, dataset.schema.schema);
  auto adjusted = adjust(table, policy);
  return {std::move(table), std::move(adjusted)};
}

std::vector<std::string> display_labels(const CategoricalSchema& schema, std::span<const std::size_t> columns) {
  std::map<std::string, std::size_t> uses;
  for (std::size_t j = 0; j < schema.modality_count(); ++j) ++uses[schema.label(j)];
  std::vector<std::string> out;
  for (std::size_t j : columns) out.push_back(uses[schema.label(j)] == 1 ? schema.label(j) : schema.modality_name(j));
  return out;
}

SplitValues split_values(const Dataset& dataset, const std::string& variable) {
  const auto& schema = dataset.schema.schema;
  const auto k = schema.find_variable(variable);
  if (!k) throw Error(Errc::config, "split variable '" + variable + "' is not a categorical variable of the schema");
  SplitValues out;
  out.levels = schema.variables()[*k].modalities.size();
  for (const auto& rec : dataset.records) out.values.push_back(*schema.global_index(*k, rec[*k]) - schema.offset(*k));
  return out;
}

Dendrogram cluster_model(const KdisjModel& model, const RunConfig& config) {
  std::optional<ComponentRange> range;
  if (config.cluster_on == ClusterOn::individual) range = model.individual_part();
  return hierarchical_cluster(model.codebook(), config.linkage, range);
}

namespace {

template <class F>
auto stage(std::string_view name, ArtifactWriter& writer, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    writer.discard();
    throw Error(e.code(), "stage '" + std::string(name) + "': " + e.what());
  } catch (const std::exception& e) {
    writer.discard();
    throw Error(Errc::io, "stage '" + std::string(name) + "': " + e.what());
  }
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config, const Dataset& dataset, const std::filesystem::path& out_dir) {
  if (!config.seed) throw Error(Errc::config, "the pipeline needs a seed");
  const std::uint64_t seed = *config.seed;
  const GridSpec spec = config.grid();
  if (config.superclasses > spec.unit_count())
    throw Error(Errc::config, "superclasses exceeds the number of grid units");
  std::optional<SplitValues> split;
  if (!config.split_variable.empty()) split = split_values(dataset, config.split_variable);

  ArtifactWriter writer(out_dir, config.hash(), seed);
  const auto& schema = dataset.schema.schema;

  stage("config", writer, [&] {
    writer.write("config.txt", "config", [&](std::ostream& os) { os << config.canonical(); });
    writer.write("dropped_rows.tsv", "load", [&](std::ostream& os) { write_dropped_rows(os, dataset.dropped); });
  });

  const Encoded enc = stage("encode", writer, [&] {
    auto e = encode_dataset(dataset, config.empty_modality);
    writer.write("disjunctive.csv", "encode", [&](std::ostream& os) { write_disjunctive(os, e.table); });
    writer.write("adjusted.csv", "encode", [&](std::ostream& os) { write_adjusted(os, e.adjusted, schema); });
    writer.write("dropped_modalities.tsv", "encode",
                 [&](std::ostream& os) { write_dropped_modalities(os, e.adjusted, schema); });
    return e;
  });

  KdisjModel model = stage("train", writer, [&] {
    const Schedule sched = config.schedule(enc.adjusted.rows() + enc.adjusted.cols());
    auto m = train(enc.adjusted, spec, sched, seed);
    m.schema_hash = schema.hash();
    writer.write_model("model.txt", "train", m);
    return m;
  });

  auto [individual_units, modality_units] = stage("classify", writer, [&] {
    return std::make_pair(classify_individuals(model, enc.adjusted), classify_modalities(model, enc.adjusted));
  });

  auto [dendrogram, sc, contiguity] = stage("superclass", writer, [&] {
    auto d = cluster_model(model, config);
    auto s = cut(d, config.superclasses);
    auto c = contiguity_report(s, spec);
    writer.write("dendrogram.txt", "superclass", [&](std::ostream& os) { write_dendrogram(os, d); });
    writer.write("elbow.tsv", "superclass", [&](std::ostream& os) { write_elbow(os, elbow_report(d)); });
    writer.write("superclasses.tsv", "superclass", [&](std::ostream& os) { write_superclasses(os, s, spec); });
    writer.write("contiguity.tsv", "superclass", [&](std::ostream& os) { write_contiguity(os, s, c); });
    writer.write("individuals.tsv", "classify",
                 [&](std::ostream& os) { write_individuals(os, dataset.ids, individual_units, spec, &s); });
    writer.write("modalities.tsv", "classify", [&](std::ostream& os) {
      write_modalities(os, schema, enc.adjusted.retained, modality_units, spec, &s);
    });
    return std::make_tuple(std::move(d), std::move(s), std::move(c));
  });

  const auto labels = row_labels(individual_units, sc);
  const auto [sizes, rate] = stage("profile", writer, [&] {
    const auto sz = class_sizes(individual_units, sc);
    const double r = positive_deviation_rate(modality_units, enc.adjusted.retained, sc, enc.table, labels);
    const auto& qnames = schema.quantitative();
    writer.write("sizes.tsv", "profile", [&](std::ostream& os) { write_sizes(os, sz); });
    writer.write("modality_pct.tsv", "profile", [&](std::ostream& os) {
      write_modality_pct(os, schema, modality_percentages(enc.table, labels, sc.count));
    });
    writer.write("means.tsv", "profile", [&](std::ostream& os) {
      write_means(os, qnames, class_means(dataset.quantitative, labels, sc.count));
    });
    writer.write("fstats.tsv", "profile",
                 [&](std::ostream& os) { write_fstats(os, qnames, dataset.quantitative, labels); });
    writer.write("deviations.tsv", "profile", [&](std::ostream& os) {
      write_deviations(os, schema, deviation_table(enc.table, labels, sc.count));
    });
    writer.write("summary.txt", "profile", [&](std::ostream& os) {
      os << "individuals=" << enc.adjusted.rows() << '\n'
         << "modalities=" << enc.adjusted.cols() << '\n'
         << "variables=" << schema.variable_count() << '\n'
         << "units=" << spec.unit_count() << '\n'
         << "superclasses=" << sc.count << '\n'
         << "contiguity_violations=" << contiguity.violations << '\n'
         << "positive_deviation_rate=" << format_real(r) << '\n'
         << "quantization_error="
         << format_real(quantization_error(model.codebook(), enc.adjusted.values, model.individual_part())) << '\n';
    });
    return std::make_pair(sz, r);
  });

  stage("render", writer, [&] {
    const auto map = build_map(spec, individual_units, modality_units,
                               display_labels(schema, enc.adjusted.retained), split);
    writer.write("map.txt", "render", [&](std::ostream& os) { os << render_text(map); });
    writer.write("superclass_map.txt", "render", [&](std::ostream& os) { os << render_text(map, &sc); });
    writer.write_svg("map.svg", "render", render_svg(map, &sc));
  });

  return PipelineResult{std::move(model), std::move(individual_units), std::move(modality_units),
                        std::move(dendrogram), std::move(sc), std::move(contiguity), sizes, rate, writer.files()};
}

}  // namespace kdisj
