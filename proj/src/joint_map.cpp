#include "kdisj/joint_map.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <string>

#include "kdisj/error.hpp"
#include "seeding.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

KdisjModel::KdisjModel(Codebook codebook, std::size_t individuals, std::size_t modalities)
    : codebook_(std::move(codebook)), individuals_(individuals), modalities_(modalities) {
  if (individuals == 0 || modalities == 0)
    throw Error(Errc::invalid_argument, "model needs at least one individual and one modality");
  if (codebook_.dim() != individuals + modalities)
    throw Error(Errc::shape, "code vectors must have M + N components");
}

namespace {

void check_shape(const KdisjModel& model, const AdjustedTable& adjusted) {
  if (adjusted.rows() != model.individuals() || adjusted.cols() != model.modalities())
    throw Error(Errc::shape, "table is " + std::to_string(adjusted.rows()) + "x" +
                                 std::to_string(adjusted.cols()) + " but the model expects " +
                                 std::to_string(model.individuals()) + "x" +
                                 std::to_string(model.modalities()));
}

// Builds a full-length vector whose modality part holds column j.
std::vector<double> modality_vector(const KdisjModel& model, const AdjustedTable& adjusted,
                                    std::size_t j) {
  std::vector<double> x(model.codebook().dim(), 0.0);
  const auto col = adjusted.columns.row(j);
  std::copy(col.begin(), col.end(), x.begin() + static_cast<std::ptrdiff_t>(model.modalities()));
  return x;
}

}  // namespace

std::vector<double> extended_vector(const AdjustedTable& adjusted, std::size_t i) {
  const std::size_t j = rarest_modality(adjusted, i);
  const auto row = adjusted.values.row(i);
  const auto col = adjusted.columns.row(j);
  std::vector<double> out;
  out.reserve(row.size() + col.size());
  out.insert(out.end(), row.begin(), row.end());
  out.insert(out.end(), col.begin(), col.end());
  return out;
}

void step_individual(KdisjModel& model, const AdjustedTable& adjusted, std::size_t i, std::size_t t,
                     const Schedule& sched) {
  check_shape(model, adjusted);
  const auto x = extended_vector(adjusted, i);
  const UnitId u = winner(model.codebook(), x, model.individual_part()).unit;
  update_step(model.codebook(), x, u, t, sched, ComponentRange::full(x.size()));
}

void step_modality(KdisjModel& model, const AdjustedTable& adjusted, std::size_t j, std::size_t t,
                   const Schedule& sched) {
  check_shape(model, adjusted);
  if (j >= adjusted.cols()) throw Error(Errc::invalid_argument, "modality column out of range");
  const auto x = modality_vector(model, adjusted, j);
  const UnitId u = winner(model.codebook(), x, model.modality_part()).unit;
  update_step(model.codebook(), x, u, t, sched, model.modality_part());
}

KdisjModel train(const AdjustedTable& adjusted, const GridSpec& spec, const Schedule& sched,
                 std::uint64_t seed) {
  const std::size_t n = adjusted.rows();
  const std::size_t m = adjusted.cols();
  if (n == 0 || m == 0) throw Error(Errc::invalid_argument, "adjusted table is empty");
  sched.validate();

  const double top = *std::max_element(adjusted.values.values().begin(), adjusted.values.values().end());
  const std::vector<double> lower(n + m, 0.0);
  const std::vector<double> upper(n + m, top);
  KdisjModel model(init_codebook(spec, n + m, lower, upper, seed), n, m);
  model.seed = seed;
  model.schedule = sched;

  auto engine = detail::draw_engine(seed);
  std::uniform_int_distribution<std::size_t> pick_row(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_col(0, m - 1);
  for (std::size_t t = 0; t < sched.total_steps; ++t) {
    step_individual(model, adjusted, pick_row(engine), t, sched);
    step_modality(model, adjusted, pick_col(engine), t, sched);
  }
  model.codebook().check_finite();
  return model;
}

std::vector<UnitId> classify_individuals(const KdisjModel& model, const AdjustedTable& adjusted) {
  check_shape(model, adjusted);
  std::vector<UnitId> out;
  out.reserve(adjusted.rows());
  for (std::size_t i = 0; i < adjusted.rows(); ++i)
    out.push_back(winner(model.codebook(), adjusted.values.row(i), model.individual_part()).unit);
  return out;
}

std::vector<UnitId> classify_modalities(const KdisjModel& model, const AdjustedTable& adjusted) {
  check_shape(model, adjusted);
  std::vector<UnitId> out;
  out.reserve(adjusted.cols());
  for (std::size_t j = 0; j < adjusted.cols(); ++j) {
    const auto x = modality_vector(model, adjusted, j);
    out.push_back(winner(model.codebook(), x, model.modality_part()).unit);
  }
  return out;
}

void write_model_meta(std::ostream& os, const KdisjModel& model) {
  os << "individuals=" << model.individuals() << '\n'
     << "modalities=" << model.modalities() << '\n'
     << "schema_hash=" << hex64(model.schema_hash) << '\n'
     << "seed=" << model.seed << '\n'
     << "steps=" << model.schedule.total_steps << '\n'
     << "eps0=" << format_real(model.schedule.eps0) << '\n'
     << "eps_min=" << format_real(model.schedule.eps_min) << '\n'
     << "radius0=" << model.schedule.radius0 << '\n';
}

void save_model(const std::filesystem::path& path, const KdisjModel& model,
                const std::string& provenance) {
  std::ofstream cb_out(path);
  std::ofstream meta_out(path.string() + ".meta");
  if (!cb_out || !meta_out) throw Error(Errc::io, "cannot write model to " + path.string());
  if (!provenance.empty()) {
    cb_out << provenance << '\n';
    meta_out << provenance << '\n';
  }
  write_codebook(cb_out, model.codebook());
  write_model_meta(meta_out, model);
}

KdisjModel load_model(const std::filesystem::path& path) {
  std::ifstream cb_in(path);
  std::ifstream meta_in(path.string() + ".meta");
  if (!cb_in) throw Error(Errc::io, "cannot read model " + path.string());
  if (!meta_in) throw Error(Errc::io, "missing model sidecar " + path.string() + ".meta");

  std::map<std::string, std::string> meta;
  std::string line;
  while (std::getline(meta_in, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::io, "malformed sidecar line '" + line + "'");
    meta[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
  }
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = meta.find(key);
    if (it == meta.end()) throw Error(Errc::io, "model sidecar lacks '" + key + "'");
    return it->second;
  };
  try {
    KdisjModel model(read_codebook(cb_in), std::stoull(get("individuals")),
                     std::stoull(get("modalities")));
    model.schema_hash = std::stoull(get("schema_hash"), nullptr, 16);
    model.seed = std::stoull(get("seed"));
    model.schedule.total_steps = std::stoull(get("steps"));
    model.schedule.eps0 = parse_real(get("eps0"));
    model.schedule.eps_min = parse_real(get("eps_min"));
    model.schedule.radius0 = std::stoull(get("radius0"));
    return model;
  } catch (const std::logic_error&) {
    throw Error(Errc::io, "model sidecar holds a malformed number");
  }
}

}  // namespace kdisj
