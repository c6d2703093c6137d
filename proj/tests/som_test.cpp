#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "kdisj/error.hpp"
#include "kdisj/som.hpp"

using namespace kdisj;

namespace {

Matrix uniform_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(n, dim);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = u(rng);
  return m;
}

Codebook random_codebook(const GridSpec& spec, std::size_t dim, std::mt19937_64& rng) {
  Codebook cb(spec, dim);
  std::normal_distribution<double> z(0.0, 1.0);
  for (std::size_t u = 0; u < cb.unit_count(); ++u)
    for (double& v : cb.vector(UnitId{u})) v = z(rng);
  return cb;
}

UnitId scan_winner(const Codebook& cb, std::span<const double> x, ComponentRange range) {
  UnitId best{0};
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < cb.unit_count(); ++u) {
    double d = 0.0;
    for (std::size_t c = range.start; c < range.end(); ++c) {
      const double diff = x[c] - cb.vector(UnitId{u})[c];
      d += diff * diff;
    }
    if (d < best_d) {
      best_d = d;
      best = UnitId{u};
    }
  }
  return best;
}

double euclid(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("schedule endpoints and monotonicity") {
  const Schedule s{100, 0.5, 0.01, 4};
  CHECK(s.learning_rate(0) == 0.5);
  CHECK(s.learning_rate(99) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(s.radius(0) == 4);
  CHECK(s.radius(99) == 0);
  for (std::size_t t = 1; t < 100; ++t) {
    CHECK(s.learning_rate(t) <= s.learning_rate(t - 1));
    CHECK(s.radius(t) <= s.radius(t - 1));
  }
  CHECK(Schedule{1, 0.3, 0.01, 2}.learning_rate(0) == 0.3);
  CHECK(default_steps(31) == 620);
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS((Schedule{0, 0.5, 0.01, 1}.validate()), Error);
  CHECK_THROWS_AS((Schedule{10, 0.005, 0.01, 1}.validate()), Error);
  CHECK_THROWS_AS((Schedule{10, 0.5, 0.0, 1}.validate()), Error);
  CHECK_NOTHROW((Schedule{10, 0.5, 0.01, 1}.validate()));
}

TEST_CASE("initialization on a degenerate interval is constant") {
  const GridSpec spec(3, 3, Topology::rectangle);
  const std::vector<double> bound{1.5, -2.0};
  const Codebook cb = init_codebook(spec, 2, bound, bound, 11);
  for (std::size_t u = 0; u < cb.unit_count(); ++u) {
    CHECK(cb.vector(UnitId{u})[0] == 1.5);
    CHECK(cb.vector(UnitId{u})[1] == -2.0);
  }
}

TEST_CASE("initialization is deterministic and uniform") {
  const GridSpec spec(100, 100, Topology::rectangle);
  const std::vector<double> lo{0.0}, hi{1.0};
  const Codebook a = init_codebook(spec, 1, lo, hi, 5);
  const Codebook b = init_codebook(spec, 1, lo, hi, 5);
  CHECK(a == b);
  double sum = 0.0;
  for (std::size_t u = 0; u < a.unit_count(); ++u) {
    const double v = a.vector(UnitId{u})[0];
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
    sum += v;
  }
  CHECK(std::abs(sum / 10000.0 - 0.5) < 0.02);
  CHECK_FALSE(a == init_codebook(spec, 1, lo, hi, 6));
}

TEST_CASE("initialization rejects bad bounds") {
  const GridSpec spec(2, 2, Topology::rectangle);
  const std::vector<double> lo{1.0}, hi{0.0};
  try {
    init_codebook(spec, 1, lo, hi, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_bounds);
  }
  CHECK_THROWS_AS(init_codebook(spec, 2, hi, hi, 1), Error);
}

TEST_CASE("winner identity, tie-break and shape errors") {
  const GridSpec spec(2, 3, Topology::rectangle);
  std::mt19937_64 rng(3);
  Codebook cb = random_codebook(spec, 3, rng);
  const std::vector<double> x(cb.vector(UnitId{3}).begin(), cb.vector(UnitId{3}).end());
  const BestMatch m = winner(cb, x, ComponentRange::full(3));
  CHECK(m.unit == UnitId{3});
  CHECK(m.sq_distance == 0.0);

  Codebook tie(GridSpec(1, 3, Topology::string), 1);
  tie.vector(UnitId{0})[0] = 5.0;
  tie.vector(UnitId{1})[0] = -1.0;
  tie.vector(UnitId{2})[0] = 1.0;
  CHECK(winner(tie, std::vector<double>{0.0}, ComponentRange::full(1)).unit == UnitId{1});

  CHECK_THROWS_AS(winner(cb, std::vector<double>{1.0, 2.0}, ComponentRange::full(3)), Error);
  CHECK_THROWS_AS(winner(cb, x, ComponentRange{2, 2}), Error);
}

TEST_CASE("winner agrees with an exhaustive scan") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> z(0.0, 1.0);
  const GridSpec spec(1, 5, Topology::string);
  for (int trial = 0; trial < 500; ++trial) {
    const Codebook cb = random_codebook(spec, 4, rng);
    std::vector<double> x(4);
    for (double& v : x) v = z(rng);
    const ComponentRange range{static_cast<std::size_t>(trial % 2), 3};
    REQUIRE(winner(cb, x, range).unit == scan_winner(cb, x, range));
  }
}

TEST_CASE("unit step copies the target and zero step leaves the codebook alone") {
  const GridSpec spec(3, 3, Topology::rectangle);
  std::mt19937_64 rng(2);
  Codebook cb = random_codebook(spec, 4, rng);
  const Codebook before = cb;
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};

  pull_toward(cb, x, UnitId{4}, 0, 0.0, ComponentRange::full(4));
  CHECK(cb == before);

  pull_toward(cb, x, UnitId{4}, 0, 1.0, ComponentRange{1, 2});
  const auto v = cb.vector(UnitId{4});
  CHECK(v[0] == before.vector(UnitId{4})[0]);
  CHECK(v[1] == 2.0);
  CHECK(v[2] == 3.0);
  CHECK(v[3] == before.vector(UnitId{4})[3]);
  for (std::size_t u = 0; u < 9; ++u)
    if (u != 4) CHECK(std::equal(cb.vector(UnitId{u}).begin(), cb.vector(UnitId{u}).end(),
                                 before.vector(UnitId{u}).begin()));
}

TEST_CASE("half step on a scalar code") {
  Codebook cb(GridSpec(1, 1, Topology::rectangle), 1);
  cb.vector(UnitId{0})[0] = 2.0;
  const Schedule half{1, 0.5, 0.5, 0};
  update_step(cb, std::vector<double>{4.0}, UnitId{0}, 0, half, ComponentRange::full(1));
  CHECK(cb.vector(UnitId{0})[0] == 3.0);
}

TEST_CASE("updates reach the whole neighborhood and nothing beyond it") {
  const GridSpec spec(5, 5, Topology::rectangle);
  std::mt19937_64 rng(8);
  Codebook cb = random_codebook(spec, 2, rng);
  const Codebook before = cb;
  const std::vector<double> x{9.0, 9.0};
  pull_toward(cb, x, spec.unit(0, 0), 1, 1.0, ComponentRange::full(2));
  for (std::size_t u = 0; u < spec.unit_count(); ++u) {
    const bool inside = grid_distance(spec, spec.unit(0, 0), UnitId{u}) <= 1;
    const auto v = cb.vector(UnitId{u});
    if (inside) {
      CHECK(v[0] == 9.0);
    } else {
      CHECK(v[0] == before.vector(UnitId{u})[0]);
    }
  }
}

TEST_CASE("restricted updates freeze the complementary components") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> rate(0.0, 1.0);
  const GridSpec spec(4, 4, Topology::torus);
  for (int trial = 0; trial < 200; ++trial) {
    Codebook cb = random_codebook(spec, 6, rng);
    const Codebook before = cb;
    std::vector<double> x(6);
    for (double& v : x) v = rate(rng) * 10.0;
    const ComponentRange range{static_cast<std::size_t>(trial % 4), 2};
    pull_toward(cb, x, UnitId{static_cast<std::size_t>(trial % 16)}, trial % 3, rate(rng), range);
    for (std::size_t u = 0; u < spec.unit_count(); ++u)
      for (std::size_t c = 0; c < 6; ++c)
        if (c < range.start || c >= range.end())
          REQUIRE(cb.vector(UnitId{u})[c] == before.vector(UnitId{u})[c]);
  }
}

TEST_CASE("a positive step strictly shrinks the winner's distance") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> rate(1e-3, 1.0);
  std::normal_distribution<double> z(0.0, 1.0);
  const GridSpec spec(3, 3, Topology::rectangle);
  const auto full = ComponentRange::full(3);
  for (int trial = 0; trial < 500; ++trial) {
    Codebook cb = random_codebook(spec, 3, rng);
    std::vector<double> x(3);
    for (double& v : x) v = z(rng);
    const BestMatch m = winner(cb, x, full);
    const double d_before = m.sq_distance;
    pull_toward(cb, x, m.unit, trial % 2, rate(rng), full);
    const double d_after = euclid(cb.vector(m.unit), x);
    REQUIRE(d_after * d_after < d_before);
  }
}

TEST_CASE("training on one observation contracts the codebook toward it") {
  Matrix one(1, 2);
  one(0, 0) = 0.25;
  one(0, 1) = 0.75;
  const GridSpec spec(4, 4, Topology::rectangle);
  const Codebook start = init_codebook(spec, 2, std::vector<double>{0.0, 0.0},
                                       std::vector<double>{1.0, 1.0}, 9);
  double initial = 0.0;
  for (std::size_t u = 0; u < 16; ++u) initial = std::max(initial, euclid(start.vector(UnitId{u}), one.row(0)));

  // Data bounds collapse to the point itself, so the contraction is checked
  // from a unit-square start; train_quantitative starts already converged.
  Codebook cb = start;
  const Schedule sched{400, 0.5, 0.01, 2};
  for (std::size_t t = 0; t < sched.total_steps; ++t) {
    const auto x = one.row(0);
    update_step(cb, x, winner(cb, x, ComponentRange::full(2)).unit, t, sched, ComponentRange::full(2));
  }
  double final_max = 0.0;
  for (std::size_t u = 0; u < 16; ++u) final_max = std::max(final_max, euclid(cb.vector(UnitId{u}), one.row(0)));
  CHECK(final_max < initial);

  const Codebook trained = train_quantitative(one, spec, sched, 9);
  for (std::size_t u = 0; u < 16; ++u) CHECK(euclid(trained.vector(UnitId{u}), one.row(0)) == 0.0);
}

TEST_CASE("training is deterministic per seed") {
  const Matrix data = uniform_points(300, 3, 1);
  const GridSpec spec(5, 5, Topology::rectangle);
  const Schedule sched{2000, 0.5, 0.01, 2};
  CHECK(train_quantitative(data, spec, sched, 42) == train_quantitative(data, spec, sched, 42));
  CHECK_FALSE(train_quantitative(data, spec, sched, 42) == train_quantitative(data, spec, sched, 43));
}

TEST_CASE("training rejects missing values and empty data") {
  Matrix bad = uniform_points(10, 2, 1);
  bad(3, 1) = std::numeric_limits<double>::quiet_NaN();
  const GridSpec spec(2, 2, Topology::rectangle);
  const Schedule sched{10, 0.5, 0.01, 1};
  try {
    train_quantitative(bad, spec, sched, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_violation);
  }
  CHECK_THROWS_AS(train_quantitative(Matrix(), spec, sched, 1), Error);
}

TEST_CASE("trained maps keep adjacent units closer than random pairs") {
  const Matrix data = uniform_points(2000, 2, 77);
  const GridSpec spec(8, 8, Topology::rectangle);
  const Schedule sched{default_steps(2000), 0.5, 0.01, 4};
  const Codebook cb = train_quantitative(data, spec, sched, 77);
  double adjacent = 0.0, random_pairs = 0.0;
  std::size_t n_adj = 0;
  for (std::size_t a = 0; a < 64; ++a)
    for (std::size_t b = a + 1; b < 64; ++b)
      if (grid_distance(spec, UnitId{a}, UnitId{b}) == 1) {
        adjacent += euclid(cb.vector(UnitId{a}), cb.vector(UnitId{b}));
        ++n_adj;
      }
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, 63);
  for (int k = 0; k < 5000; ++k)
    random_pairs += euclid(cb.vector(UnitId{pick(rng)}), cb.vector(UnitId{pick(rng)}));
  CHECK(adjacent / static_cast<double>(n_adj) < random_pairs / 5000.0);
}

TEST_CASE("classify maps code vectors to their own units") {
  std::mt19937_64 rng(12);
  const GridSpec spec(3, 4, Topology::rectangle);
  const Codebook cb = random_codebook(spec, 5, rng);
  Matrix rows(cb.unit_count(), 5);
  for (std::size_t u = 0; u < cb.unit_count(); ++u)
    for (std::size_t c = 0; c < 5; ++c) rows(u, c) = cb.vector(UnitId{u})[c];
  const auto units = classify(cb, rows, ComponentRange{1, 3});
  for (std::size_t u = 0; u < units.size(); ++u) CHECK(units[u] == UnitId{u});
  CHECK(quantization_error(cb, rows, ComponentRange::full(5)) == 0.0);
  CHECK_THROWS_AS(classify(cb, Matrix(), ComponentRange::full(5)), Error);
  CHECK_THROWS_AS(classify(cb, Matrix(2, 3), ComponentRange::full(5)), Error);
}

TEST_CASE("classify agrees with an exhaustive scan") {
  std::mt19937_64 rng(13);
  const GridSpec spec(3, 3, Topology::rectangle);
  const Codebook cb = random_codebook(spec, 3, rng);
  const Matrix rows = uniform_points(200, 3, 14);
  const auto units = classify(cb, rows, ComponentRange::full(3));
  for (std::size_t r = 0; r < rows.rows(); ++r)
    REQUIRE(units[r] == scan_winner(cb, rows.row(r), ComponentRange::full(3)));
}

TEST_CASE("training lowers the quantization error in at least 95 of 100 seeds") {
  const Matrix data = uniform_points(200, 2, 99);
  const GridSpec spec(4, 4, Topology::rectangle);
  const Schedule sched{1000, 0.5, 0.01, 2};
  std::vector<double> lo{1e9, 1e9}, hi{-1e9, -1e9};
  for (std::size_t r = 0; r < data.rows(); ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      lo[c] = std::min(lo[c], data(r, c));
      hi[c] = std::max(hi[c], data(r, c));
    }
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double before = quantization_error(init_codebook(spec, 2, lo, hi, seed), data, ComponentRange::full(2));
    const double after = quantization_error(train_quantitative(data, spec, sched, seed), data,
                                            ComponentRange::full(2));
    if (after < before) ++improved;
  }
  CHECK(improved >= 95);
}

TEST_CASE("codebook text round-trips exactly") {
  std::mt19937_64 rng(31);
  const Codebook cb = random_codebook(GridSpec(2, 5, Topology::cylinder), 3, rng);
  std::stringstream ss;
  ss << "# provenance\n";
  write_codebook(ss, cb);
  CHECK(read_codebook(ss) == cb);

  std::istringstream truncated("2 2 rectangle 1\n0.5\n");
  CHECK_THROWS_AS(read_codebook(truncated), Error);
}
