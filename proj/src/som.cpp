#include "kdisj/som.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "kdisj/error.hpp"
#include "seeding.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

double Schedule::learning_rate(std::size_t t) const noexcept {
  if (total_steps <= 1) return eps0;
  return eps0 + (eps_min - eps0) * static_cast<double>(t) / static_cast<double>(total_steps - 1);
}

std::size_t Schedule::radius(std::size_t t) const noexcept {
  const double frac = 1.0 - static_cast<double>(t) / static_cast<double>(total_steps);
  const long r = std::lround(static_cast<double>(radius0) * frac);
  return r > 0 ? static_cast<std::size_t>(r) : 0;
}

void Schedule::validate() const {
  if (total_steps == 0) throw Error(Errc::config, "schedule needs at least one step");
  if (!(eps_min > 0.0)) throw Error(Errc::config, "eps_min must be positive");
  if (!(eps0 >= eps_min)) throw Error(Errc::config, "eps0 must be at least eps_min");
  if (!std::isfinite(eps0)) throw Error(Errc::config, "eps0 must be finite");
}

std::size_t default_steps(std::size_t drawable) noexcept { return 20 * drawable; }

Codebook::Codebook(GridSpec spec, std::size_t dim)
    : spec_(spec), dim_(dim), values_(spec.unit_count() * dim, 0.0) {
  if (dim == 0) throw Error(Errc::invalid_argument, "codebook dimension must be positive");
}

void Codebook::check_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(Errc::numeric, "codebook holds a non-finite component");
  }
}

Codebook init_codebook(const GridSpec& spec, std::size_t dim, std::span<const double> lower,
                       std::span<const double> upper, std::uint64_t seed) {
  if (lower.size() != dim || upper.size() != dim)
    throw Error(Errc::shape, "initialization bounds must have one entry per component");
  for (std::size_t c = 0; c < dim; ++c) {
    if (!(lower[c] <= upper[c]) || !std::isfinite(lower[c]) || !std::isfinite(upper[c]))
      throw Error(Errc::invalid_bounds,
                  "invalid initialization bounds at component " + std::to_string(c));
  }
  Codebook cb(spec, dim);
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
  for (std::size_t u = 0; u < spec.unit_count(); ++u) {
    auto v = cb.vector(UnitId{u});
    for (std::size_t c = 0; c < dim; ++c) {
      const double draw = unit_interval(engine);
      v[c] = lower[c] == upper[c] ? lower[c] : lower[c] + (upper[c] - lower[c]) * draw;
    }
  }
  return cb;
}

BestMatch winner(const Codebook& cb, std::span<const double> x, ComponentRange range) {
  if (range.length == 0 || range.end() > cb.dim() || x.size() < range.end())
    throw Error(Errc::shape, "input of length " + std::to_string(x.size()) +
                                 " does not cover components [" + std::to_string(range.start) + ", " +
                                 std::to_string(range.end()) + ")");
  BestMatch best{UnitId{0}, std::numeric_limits<double>::infinity()};
  for (std::size_t u = 0; u < cb.unit_count(); ++u) {
    const auto v = cb.vector(UnitId{u});
    double d = 0.0;
    for (std::size_t c = range.start; c < range.end(); ++c) {
      const double diff = x[c] - v[c];
      d += diff * diff;
    }
    if (d < best.sq_distance) best = {UnitId{u}, d};
  }
  return best;
}

void pull_toward(Codebook& cb, std::span<const double> x, UnitId center, std::size_t radius,
                 double rate, ComponentRange range) {
  if (range.end() > cb.dim() || x.size() < range.end())
    throw Error(Errc::shape, "update range exceeds the code vector or the input");
  for (UnitId v : neighbors(cb.spec(), center, radius)) {
    auto w = cb.vector(v);
    for (std::size_t c = range.start; c < range.end(); ++c) w[c] = std::lerp(w[c], x[c], rate);
  }
}

void update_step(Codebook& cb, std::span<const double> x, UnitId winner_unit, std::size_t t,
                 const Schedule& sched, ComponentRange range) {
  pull_toward(cb, x, winner_unit, sched.radius(t), sched.learning_rate(t), range);
}

Codebook train_quantitative(const Matrix& data, const GridSpec& spec, const Schedule& sched,
                            std::uint64_t seed) {
  if (data.rows() == 0 || data.cols() == 0)
    throw Error(Errc::invalid_argument, "training data is empty");
  for (double v : data.values()) {
    if (!std::isfinite(v)) throw Error(Errc::schema_violation, "training data holds NaN or infinity");
  }
  sched.validate();

  const std::size_t dim = data.cols();
  std::vector<double> lower(data.row(0).begin(), data.row(0).end());
  std::vector<double> upper = lower;
  for (std::size_t r = 1; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      lower[c] = std::min(lower[c], data(r, c));
      upper[c] = std::max(upper[c], data(r, c));
    }
  }

  Codebook cb = init_codebook(spec, dim, lower, upper, seed);
  auto engine = detail::draw_engine(seed);
  std::uniform_int_distribution<std::size_t> pick(0, data.rows() - 1);
  const auto full = ComponentRange::full(dim);
  for (std::size_t t = 0; t < sched.total_steps; ++t) {
    const auto x = data.row(pick(engine));
    update_step(cb, x, winner(cb, x, full).unit, t, sched, full);
  }
  cb.check_finite();
  return cb;
}

std::vector<UnitId> classify(const Codebook& cb, const Matrix& rows, ComponentRange range) {
  if (rows.rows() == 0) throw Error(Errc::invalid_argument, "nothing to classify");
  std::vector<UnitId> out;
  out.reserve(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) out.push_back(winner(cb, rows.row(r), range).unit);
  return out;
}

double quantization_error(const Codebook& cb, const Matrix& rows, ComponentRange range) {
  if (rows.rows() == 0) throw Error(Errc::invalid_argument, "nothing to measure");
  double total = 0.0;
  for (std::size_t r = 0; r < rows.rows(); ++r) total += winner(cb, rows.row(r), range).sq_distance;
  return total / static_cast<double>(rows.rows());
}

void write_codebook(std::ostream& os, const Codebook& cb) {
  const auto& spec = cb.spec();
  os << spec.rows() << ' ' << spec.cols() << ' ' << to_string(spec.topology()) << ' ' << cb.dim()
     << '\n';
  for (std::size_t u = 0; u < cb.unit_count(); ++u) {
    const auto v = cb.vector(UnitId{u});
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (c) os << ' ';
      os << format_real(v[c]);
    }
    os << '\n';
  }
}

Codebook read_codebook(std::istream& is) {
  std::string line;
  while (std::getline(is, line) && (line.empty() || line.front() == '#')) {
  }
  std::istringstream header(line);
  std::size_t rows = 0, cols = 0, dim = 0;
  std::string topology;
  if (!(header >> rows >> cols >> topology >> dim))
    throw Error(Errc::io, "codebook header must read 'rows cols topology dim'");
  Codebook cb(GridSpec(rows, cols, parse_topology(topology)), dim);
  for (std::size_t u = 0; u < cb.unit_count(); ++u) {
    if (!std::getline(is, line)) throw Error(Errc::io, "codebook ends before unit " + std::to_string(u));
    const auto fields = split_whitespace(line);
    if (fields.size() != dim)
      throw Error(Errc::io, "codebook unit " + std::to_string(u) + " has " +
                                std::to_string(fields.size()) + " components, expected " +
                                std::to_string(dim));
    auto v = cb.vector(UnitId{u});
    for (std::size_t c = 0; c < dim; ++c) v[c] = parse_real(fields[c]);
  }
  cb.check_finite();
  return cb;
}

}  // namespace kdisj
