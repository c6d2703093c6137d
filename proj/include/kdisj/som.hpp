#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "kdisj/grid.hpp"
#include "kdisj/matrix.hpp"

namespace kdisj {

/// Contiguous slice [start, start + length) of a code vector.
struct ComponentRange {
  std::size_t start = 0;
  std::size_t length = 0;

  static ComponentRange full(std::size_t dim) { return {0, dim}; }
  std::size_t end() const noexcept { return start + length; }

  bool operator==(const ComponentRange&) const = default;
};

/// Linear learning-rate decay from eps0 to eps_min over the run, and a
/// linear integer radius decay from radius0 down to 0.
struct Schedule {
  std::size_t total_steps = 1;
  double eps0 = 0.5;
  double eps_min = 0.01;
  std::size_t radius0 = 0;

  double learning_rate(std::size_t t) const noexcept;
  std::size_t radius(std::size_t t) const noexcept;

  /// Throws Errc::config unless total_steps >= 1 and eps0 >= eps_min > 0.
  void validate() const;

  bool operator==(const Schedule&) const = default;
};

/// Default number of training steps for a run drawing from `drawable` items.
std::size_t default_steps(std::size_t drawable) noexcept;

class Codebook {
 public:
  Codebook(GridSpec spec, std::size_t dim);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t unit_count() const noexcept { return spec_.unit_count(); }

  std::span<double> vector(UnitId u) { return {values_.data() + u.index * dim_, dim_}; }
  std::span<const double> vector(UnitId u) const { return {values_.data() + u.index * dim_, dim_}; }

  /// Throws Errc::numeric if any component is NaN or infinite.
  void check_finite() const;

  bool operator==(const Codebook&) const = default;

 private:
  GridSpec spec_;
  std::size_t dim_;
  std::vector<double> values_;
};

/// Each component drawn uniformly in [lower[c], upper[c]] from a generator
/// seeded with `seed`.
Codebook init_codebook(const GridSpec& spec, std::size_t dim, std::span<const double> lower,
                       std::span<const double> upper, std::uint64_t seed);

struct BestMatch {
  UnitId unit;
  double sq_distance = 0.0;
};

/// Unit minimizing squared Euclidean distance over `range`; ties go to the
/// smallest unit index.
BestMatch winner(const Codebook& cb, std::span<const double> x, ComponentRange range);

/// Moves every unit within `radius` of `center` toward x by `rate`, touching
/// only the components in `range`.
void pull_toward(Codebook& cb, std::span<const double> x, UnitId center, std::size_t radius,
                 double rate, ComponentRange range);

void update_step(Codebook& cb, std::span<const double> x, UnitId winner_unit, std::size_t t,
                 const Schedule& sched, ComponentRange range);

/// Classic stochastic Kohonen training on the rows of `data`.
Codebook train_quantitative(const Matrix& data, const GridSpec& spec, const Schedule& sched,
                            std::uint64_t seed);

std::vector<UnitId> classify(const Codebook& cb, const Matrix& rows, ComponentRange range);

/// Mean squared distance of rows to their winners.
double quantization_error(const Codebook& cb, const Matrix& rows, ComponentRange range);

/// Header "rows cols topology dim" then one unit per line, 17 significant
/// digits per component.
void write_codebook(std::ostream& os, const Codebook& cb);

/// Lines starting with '#' are skipped.
Codebook read_codebook(std::istream& is);

}  // namespace kdisj
