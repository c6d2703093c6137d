// Batch command line front end: encode, train, superclass, profile, render,
// pipeline and synth.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kdisj/config.hpp"
#include "kdisj/dataset.hpp"
#include "kdisj/error.hpp"
#include "kdisj/joint_map.hpp"
#include "kdisj/pipeline.hpp"
#include "kdisj/profile.hpp"
#include "kdisj/reports.hpp"
#include "kdisj/synthetic.hpp"
#include "kdisj/text_io.hpp"

namespace {

using namespace kdisj;

struct CommonOptions {
  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::string data;
  std::string schema;
  std::string out = ".";
};

// One --key option per RunConfig key; the values override the config file.
void add_config_flags(CLI::App* app, CommonOptions& opts) {
  app->add_option("--config", opts.config_path, "key=value configuration file");
  for (const auto& key : RunConfig::keys()) {
    std::string flag = "--" + key;
    for (auto& ch : flag) {
      if (ch == '_') ch = '-';
    }
    app->add_option_function<std::string>(
        flag, [&opts, key](const std::string& v) { opts.overrides[key] = v; }, "configuration key " + key);
  }
}

RunConfig resolve_config(const CommonOptions& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig{} : load_config(opts.config_path);
  for (const auto& [k, v] : opts.overrides) cfg.set(k, v);
  return cfg;
}

void require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw Error(Errc::config, "--seed is required");
}

Dataset load_dataset(const CommonOptions& opts, const RunConfig& cfg) {
  if (opts.data.empty() || opts.schema.empty()) throw Error(Errc::config, "--data and --schema are required");
  return load(opts.data, opts.schema, cfg.incomplete_records);
}

KdisjModel load_checked_model(const std::string& path, const Dataset& dataset, const Encoded& enc) {
  auto model = load_model(path);
  if (model.schema_hash != dataset.schema.schema.hash())
    throw Error(Errc::shape, "model was trained on a different schema");
  if (model.individuals() != enc.adjusted.rows() || model.modalities() != enc.adjusted.cols())
    throw Error(Errc::shape, "model shape does not match the data");
  return model;
}

int run_encode(const CommonOptions& opts) {
  const auto cfg = resolve_config(opts);
  const auto ds = load_dataset(opts, cfg);
  const auto enc = encode_dataset(ds, cfg.empty_modality);
  ArtifactWriter w(opts.out, cfg.hash(), cfg.seed.value_or(0));
  const auto& schema = ds.schema.schema;
  w.write("disjunctive.csv", "encode", [&](std::ostream& os) { write_disjunctive(os, enc.table); });
  w.write("adjusted.csv", "encode", [&](std::ostream& os) { write_adjusted(os, enc.adjusted, schema); });
  w.write("dropped_rows.tsv", "load", [&](std::ostream& os) { write_dropped_rows(os, ds.dropped); });
  w.write("dropped_modalities.tsv", "encode",
          [&](std::ostream& os) { write_dropped_modalities(os, enc.adjusted, schema); });
  std::cout << "encoded " << enc.table.rows() << " rows into " << enc.adjusted.cols() << " modality columns\n";
  return 0;
}

int run_train(const CommonOptions& opts, const std::string& mode) {
  const auto cfg = resolve_config(opts);
  require_seed(cfg);
  ArtifactWriter w(opts.out, cfg.hash(), *cfg.seed);
  const GridSpec spec = cfg.grid();
  if (mode == "quantitative") {
    if (opts.data.empty()) throw Error(Errc::config, "--data is required");
    std::ifstream in(opts.data);
    if (!in) throw Error(Errc::io, "cannot read " + opts.data);
    const Matrix data = read_numeric_csv(in);
    const auto cb = train_quantitative(data, spec, cfg.schedule(data.rows()), *cfg.seed);
    const auto units = classify(cb, data, ComponentRange::full(cb.dim()));
    w.write("codebook.txt", "train", [&](std::ostream& os) { write_codebook(os, cb); });
    w.write("assignments.tsv", "classify", [&](std::ostream& os) {
      os << "row\tunit\n";
      for (std::size_t r = 0; r < units.size(); ++r) os << r << '\t' << units[r].index << '\n';
    });
    std::cout << "quantization error "
              << format_real(quantization_error(cb, data, ComponentRange::full(cb.dim()))) << '\n';
    return 0;
  }
  if (mode != "kdisj") throw Error(Errc::config, "unknown training mode '" + mode + "'");
  const auto ds = load_dataset(opts, cfg);
  const auto enc = encode_dataset(ds, cfg.empty_modality);
  auto model = train(enc.adjusted, spec, cfg.schedule(enc.adjusted.rows() + enc.adjusted.cols()), *cfg.seed);
  model.schema_hash = ds.schema.schema.hash();
  w.write_model("model.txt", "train", model);
  const auto ind = classify_individuals(model, enc.adjusted);
  const auto mod = classify_modalities(model, enc.adjusted);
  w.write("individuals.tsv", "classify", [&](std::ostream& os) { write_individuals(os, ds.ids, ind, spec); });
  w.write("modalities.tsv", "classify", [&](std::ostream& os) {
    write_modalities(os, ds.schema.schema, enc.adjusted.retained, mod, spec);
  });
  return 0;
}

int run_superclass(const CommonOptions& opts, const std::string& model_path) {
  const auto cfg = resolve_config(opts);
  const auto model = load_model(model_path);
  const auto& spec = model.codebook().spec();
  const auto d = cluster_model(model, cfg);
  const auto sc = cut(d, cfg.superclasses);
  const auto c = contiguity_report(sc, spec);
  ArtifactWriter w(opts.out, cfg.hash(), model.seed);
  w.write("dendrogram.txt", "superclass", [&](std::ostream& os) { write_dendrogram(os, d); });
  w.write("elbow.tsv", "superclass", [&](std::ostream& os) { write_elbow(os, elbow_report(d)); });
  w.write("superclasses.tsv", "superclass", [&](std::ostream& os) { write_superclasses(os, sc, spec); });
  w.write("contiguity.tsv", "superclass", [&](std::ostream& os) { write_contiguity(os, sc, c); });
  std::cout << sc.count << " super classes, " << c.violations << " not contiguous\n";
  return 0;
}

int run_profile(const CommonOptions& opts, const std::string& model_path) {
  const auto cfg = resolve_config(opts);
  const auto ds = load_dataset(opts, cfg);
  const auto enc = encode_dataset(ds, cfg.empty_modality);
  const auto model = load_checked_model(model_path, ds, enc);
  const auto sc = cut(cluster_model(model, cfg), cfg.superclasses);
  const auto ind = classify_individuals(model, enc.adjusted);
  const auto mod = classify_modalities(model, enc.adjusted);
  const auto labels = row_labels(ind, sc);
  const auto& schema = ds.schema.schema;
  ArtifactWriter w(opts.out, cfg.hash(), model.seed);
  w.write("sizes.tsv", "profile", [&](std::ostream& os) { write_sizes(os, class_sizes(ind, sc)); });
  w.write("modality_pct.tsv", "profile", [&](std::ostream& os) {
    write_modality_pct(os, schema, modality_percentages(enc.table, labels, sc.count));
  });
  w.write("means.tsv", "profile", [&](std::ostream& os) {
    write_means(os, schema.quantitative(), class_means(ds.quantitative, labels, sc.count));
  });
  w.write("fstats.tsv", "profile",
          [&](std::ostream& os) { write_fstats(os, schema.quantitative(), ds.quantitative, labels); });
  w.write("deviations.tsv", "profile", [&](std::ostream& os) {
    write_deviations(os, schema, deviation_table(enc.table, labels, sc.count));
  });
  std::cout << "positive deviation rate "
            << format_real(positive_deviation_rate(mod, enc.adjusted.retained, sc, enc.table, labels)) << '\n';
  return 0;
}

int run_render(const CommonOptions& opts, const std::string& model_path, bool with_superclasses) {
  const auto cfg = resolve_config(opts);
  const auto ds = load_dataset(opts, cfg);
  const auto enc = encode_dataset(ds, cfg.empty_modality);
  const auto model = load_checked_model(model_path, ds, enc);
  std::optional<SplitValues> split;
  if (!cfg.split_variable.empty()) split = split_values(ds, cfg.split_variable);
  const auto map = build_map(model.codebook().spec(), classify_individuals(model, enc.adjusted),
                             classify_modalities(model, enc.adjusted),
                             display_labels(ds.schema.schema, enc.adjusted.retained), split);
  std::optional<SuperClassification> sc;
  if (with_superclasses) sc = cut(cluster_model(model, cfg), cfg.superclasses);
  const SuperClassification* scp = sc ? &*sc : nullptr;
  ArtifactWriter w(opts.out, cfg.hash(), model.seed);
  w.write("map.txt", "render", [&](std::ostream& os) { os << render_text(map, scp); });
  w.write_svg("map.svg", "render", render_svg(map, scp));
  std::cout << render_text(map, scp);
  return 0;
}

int run_pipeline_cmd(const CommonOptions& opts) {
  const auto cfg = resolve_config(opts);
  require_seed(cfg);
  const auto ds = load_dataset(opts, cfg);
  const auto result = run_pipeline(cfg, ds, opts.out);
  std::cout << "wrote " << result.artifacts.size() << " artifacts to " << opts.out << "; "
            << result.superclasses.count << " super classes, " << result.contiguity.violations
            << " not contiguous, positive deviation rate " << format_real(result.positive_deviation_rate) << '\n';
  return 0;
}

int run_synth(const std::string& plan_path, std::optional<std::uint64_t> seed, const std::string& out) {
  if (!seed) throw Error(Errc::config, "--seed is required");
  std::ifstream in(plan_path);
  if (!in) throw Error(Errc::io, "cannot read " + plan_path);
  const std::string plan_text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::istringstream plan_stream(plan_text);
  const auto data = generate_synthetic(read_plan(plan_stream), *seed);
  ArtifactWriter w(out, fnv1a64(plan_text), *seed);
  w.write("data.csv", "synth", [&](std::ostream& os) { write_dataset(os, data.dataset); });
  w.write("schema.txt", "synth", [&](std::ostream& os) { write_schema(os, data.dataset.schema); });
  w.write("truth.csv", "synth", [&](std::ostream& os) { write_truth(os, data); });
  std::cout << "generated " << data.dataset.size() << " records\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint Kohonen maps of individuals and modalities for categorical data"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string mode = "kdisj";
  std::string model_path;
  bool with_superclasses = false;
  std::string plan_path;
  std::optional<std::uint64_t> synth_seed;

  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--data", opts.data, "comma-delimited data file");
    sub->add_option("--schema", opts.schema, "schema file");
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", opts.out, "output directory"); };

  auto* encode_cmd = app.add_subcommand("encode", "build the disjunctive and adjusted tables");
  add_config_flags(encode_cmd, opts);
  add_data(encode_cmd);
  add_out(encode_cmd);

  auto* train_cmd = app.add_subcommand("train", "train a map");
  add_config_flags(train_cmd, opts);
  add_data(train_cmd);
  add_out(train_cmd);
  train_cmd->add_option("--mode", mode, "quantitative | kdisj")->check(CLI::IsMember({"quantitative", "kdisj"}));

  auto* super_cmd = app.add_subcommand("superclass", "regroup the units of a trained map");
  add_config_flags(super_cmd, opts);
  add_out(super_cmd);
  super_cmd->add_option("--model", model_path, "model file written by train")->required();

  auto* profile_cmd = app.add_subcommand("profile", "class profiles of the super classes");
  add_config_flags(profile_cmd, opts);
  add_data(profile_cmd);
  add_out(profile_cmd);
  profile_cmd->add_option("--model", model_path, "model file written by train")->required();

  auto* render_cmd = app.add_subcommand("render", "draw the map");
  add_config_flags(render_cmd, opts);
  add_data(render_cmd);
  add_out(render_cmd);
  render_cmd->add_option("--model", model_path, "model file written by train")->required();
  render_cmd->add_flag("--with-superclasses", with_superclasses, "number and colour cells by super class");

  auto* pipeline_cmd = app.add_subcommand("pipeline", "run every stage end to end");
  add_config_flags(pipeline_cmd, opts);
  add_data(pipeline_cmd);
  add_out(pipeline_cmd);

  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset from a cluster plan");
  synth_cmd->add_option("--plan", plan_path, "cluster plan file")->required();
  synth_cmd->add_option("--seed", synth_seed, "random seed");
  add_out(synth_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*encode_cmd) return run_encode(opts);
    if (*train_cmd) return run_train(opts, mode);
    if (*super_cmd) return run_superclass(opts, model_path);
    if (*profile_cmd) return run_profile(opts, model_path);
    if (*render_cmd) return run_render(opts, model_path, with_superclasses);
    if (*pipeline_cmd) return run_pipeline_cmd(opts);
    if (*synth_cmd) return run_synth(plan_path, synth_seed, opts.out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
