#include "kdisj/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "kdisj/error.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

namespace {

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end)
    throw Error(Errc::config, std::string(key) + ": expected a non-negative integer, got '" + std::string(value) + "'");
  return out;
}

double parse_config_real(std::string_view key, std::string_view value) {
  try {
    return parse_real(value);
  } catch (const Error&) {
    throw Error(Errc::config, std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  }
}

template <class T>
T choose(std::string_view key, std::string_view value, std::initializer_list<std::pair<const char*, T>> options) {
  for (const auto& [name, v] : options) {
    if (value == name) return v;
  }
  throw Error(Errc::config, std::string(key) + ": unsupported value '" + std::string(value) + "'");
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k{
      "cluster_on", "cols",    "empty_modality", "eps0",  "eps_min",        "incomplete_records",
      "linkage",    "radius0", "rows",           "seed",  "split_variable", "steps",
      "superclasses", "topology"};
  return k;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "rows") {
    rows = parse_unsigned(key, value);
    if (rows == 0) throw Error(Errc::config, "rows must be positive");
  } else if (key == "cols") {
    cols = parse_unsigned(key, value);
    if (cols == 0) throw Error(Errc::config, "cols must be positive");
  } else if (key == "topology") {
    topology = parse_topology(value);
  } else if (key == "steps") {
    steps = parse_unsigned(key, value);
  } else if (key == "eps0") {
    eps0 = parse_config_real(key, value);
    if (!(eps0 > 0.0 && eps0 <= 1.0)) throw Error(Errc::config, "eps0 must lie in (0, 1]");
  } else if (key == "eps_min") {
    eps_min = parse_config_real(key, value);
    if (!(eps_min > 0.0 && eps_min <= 1.0)) throw Error(Errc::config, "eps_min must lie in (0, 1]");
  } else if (key == "radius0") {
    if (value == "auto") radius0.reset();
    else radius0 = parse_unsigned(key, value);
  } else if (key == "seed") {
    seed = parse_unsigned(key, value);
  } else if (key == "superclasses") {
    superclasses = parse_unsigned(key, value);
    if (superclasses == 0) throw Error(Errc::config, "superclasses must be positive");
  } else if (key == "linkage") {
    linkage = parse_linkage(value);
  } else if (key == "cluster_on") {
    cluster_on = choose<ClusterOn>(key, value, {{"full", ClusterOn::full}, {"individual", ClusterOn::individual}});
  } else if (key == "empty_modality") {
    empty_modality = choose<EmptyModalityPolicy>(
        key, value, {{"error", EmptyModalityPolicy::error}, {"drop", EmptyModalityPolicy::drop}});
  } else if (key == "incomplete_records") {
    incomplete_records =
        choose<RecordPolicy>(key, value, {{"error", RecordPolicy::error}, {"drop", RecordPolicy::drop}});
  } else if (key == "split_variable") {
    split_variable = std::string(value);
  } else {
    throw Error(Errc::config, "unknown configuration key '" + std::string(key) + "'");
  }
}

GridSpec RunConfig::grid() const {
  try {
    return GridSpec(rows, cols, topology);
  } catch (const Error& e) {
    throw Error(Errc::config, e.what());
  }
}

Schedule RunConfig::schedule(std::size_t drawable) const {
  Schedule s;
  s.total_steps = steps ? steps : default_steps(drawable);
  s.eps0 = eps0;
  s.eps_min = eps_min;
  s.radius0 = radius0.value_or(std::max(rows, cols) / 2);
  s.validate();
  return s;
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "cluster_on=" << (cluster_on == ClusterOn::full ? "full" : "individual") << '\n'
     << "cols=" << cols << '\n'
     << "empty_modality=" << (empty_modality == EmptyModalityPolicy::error ? "error" : "drop") << '\n'
     << "eps0=" << format_real(eps0) << '\n'
     << "eps_min=" << format_real(eps_min) << '\n'
     << "incomplete_records=" << (incomplete_records == RecordPolicy::error ? "error" : "drop") << '\n'
     << "linkage=" << to_string(linkage) << '\n'
     << "radius0=" << (radius0 ? std::to_string(*radius0) : std::string("auto")) << '\n'
     << "rows=" << rows << '\n'
     << "seed=" << (seed ? std::to_string(*seed) : std::string("none")) << '\n'
     << "split_variable=" << split_variable << '\n'
     << "steps=" << steps << '\n'
     << "superclasses=" << superclasses << '\n'
     << "topology=" << to_string(topology) << '\n';
  return os.str();
}

std::uint64_t RunConfig::hash() const { return fnv1a64(canonical()); }

RunConfig read_config(std::istream& is) {
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::config, "config line " + std::to_string(line_no) + ": expected key=value");
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (key == "seed" && value == "none") {
      cfg.seed.reset();
      continue;
    }
    cfg.set(key, value);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config, "cannot read config " + path);
  return read_config(in);
}

}  // namespace kdisj
