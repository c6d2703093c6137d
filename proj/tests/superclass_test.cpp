#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "kdisj/disjunctive.hpp"
#include "kdisj/error.hpp"
#include "kdisj/joint_map.hpp"
#include "kdisj/superclass.hpp"

using namespace kdisj;

namespace {

Codebook scalar_codebook(const std::vector<double>& values) {
  Codebook cb(GridSpec(1, values.size(), Topology::string), 1);
  for (std::size_t u = 0; u < values.size(); ++u) cb.vector(UnitId{u})[0] = values[u];
  return cb;
}

Codebook random_codebook(const GridSpec& spec, std::size_t dim, std::mt19937_64& rng) {
  Codebook cb(spec, dim);
  std::normal_distribution<double> z(0.0, 1.0);
  for (std::size_t u = 0; u < cb.unit_count(); ++u)
    for (double& v : cb.vector(UnitId{u})) v = z(rng);
  return cb;
}

double sse(const Codebook& cb, const std::set<std::size_t>& members) {
  std::vector<double> mean(cb.dim(), 0.0);
  for (std::size_t u : members)
    for (std::size_t c = 0; c < cb.dim(); ++c) mean[c] += cb.vector(UnitId{u})[c];
  for (double& m : mean) m /= static_cast<double>(members.size());
  double s = 0.0;
  for (std::size_t u : members)
    for (std::size_t c = 0; c < cb.dim(); ++c) s += std::pow(cb.vector(UnitId{u})[c] - mean[c], 2);
  return s;
}

double unit_dist(const Codebook& cb, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t c = 0; c < cb.dim(); ++c) s += std::pow(cb.vector(UnitId{a})[c] - cb.vector(UnitId{b})[c], 2);
  return std::sqrt(s);
}

// Linkage recomputed from member sets on every step.
double set_linkage(const Codebook& cb, Linkage linkage, const std::set<std::size_t>& a,
                   const std::set<std::size_t>& b) {
  if (linkage == Linkage::ward) {
    std::set<std::size_t> both = a;
    both.insert(b.begin(), b.end());
    return sse(cb, both) - sse(cb, a) - sse(cb, b);
  }
  double worst = 0.0, sum = 0.0;
  for (std::size_t x : a)
    for (std::size_t y : b) {
      worst = std::max(worst, unit_dist(cb, x, y));
      sum += unit_dist(cb, x, y);
    }
  return linkage == Linkage::complete ? worst : sum / static_cast<double>(a.size() * b.size());
}

struct OracleMerge {
  std::set<std::size_t> joined;
  double height;
};

std::vector<OracleMerge> oracle(const Codebook& cb, Linkage linkage) {
  std::vector<std::set<std::size_t>> clusters;
  for (std::size_t u = 0; u < cb.unit_count(); ++u) clusters.push_back({u});
  std::vector<OracleMerge> out;
  while (clusters.size() > 1) {
    std::size_t ba = 0, bb = 1;
    double best = INFINITY;
    for (std::size_t a = 0; a < clusters.size(); ++a)
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        const double h = set_linkage(cb, linkage, clusters[a], clusters[b]);
        if (h < best) {
          best = h;
          ba = a;
          bb = b;
        }
      }
    std::set<std::size_t> joined = clusters[ba];
    joined.insert(clusters[bb].begin(), clusters[bb].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bb));
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(ba));
    clusters.push_back(joined);
    out.push_back({joined, best});
  }
  return out;
}

std::vector<std::set<std::size_t>> merge_sets(const Dendrogram& d) {
  std::vector<std::set<std::size_t>> nodes;
  for (std::size_t u = 0; u < d.leaves; ++u) nodes.push_back({u});
  for (const auto& m : d.merges) {
    std::set<std::size_t> joined = nodes[m.left];
    joined.insert(nodes[m.right].begin(), nodes[m.right].end());
    nodes.push_back(joined);
  }
  return {nodes.begin() + static_cast<std::ptrdiff_t>(d.leaves), nodes.end()};
}

std::set<std::set<std::size_t>> partition(const SuperClassification& sc) {
  std::map<std::size_t, std::set<std::size_t>> by_label;
  for (std::size_t u = 0; u < sc.labels.size(); ++u) by_label[sc.labels[u]].insert(u);
  std::set<std::set<std::size_t>> out;
  for (auto& [k, members] : by_label) out.insert(members);
  return out;
}

}  // namespace

TEST_CASE("two units merge once") {
  const Dendrogram d = hierarchical_cluster(scalar_codebook({0.0, 3.0}));
  REQUIRE(d.merges.size() == 1);
  CHECK(d.merges[0].left == 0);
  CHECK(d.merges[0].right == 1);
  CHECK(d.merges[0].size == 2);
  // Ward height is the SSE increase: 1*1/2 * 9.
  CHECK(d.merges[0].height == 4.5);
}

TEST_CASE("collinear scalars merge the close pair first") {
  const Dendrogram d = hierarchical_cluster(scalar_codebook({0.0, 1.0, 10.0}));
  REQUIRE(d.merges.size() == 2);
  CHECK(d.merges[0].left == 0);
  CHECK(d.merges[0].right == 1);
  CHECK(d.merges[0].height == 0.5);
  CHECK(d.merges[1].left == 2);
  CHECK(d.merges[1].right == 3);
  // Joining {10} to {0, 1}: 2*1/3 * 9.5^2.
  CHECK(d.merges[1].height == doctest::Approx(2.0 / 3.0 * 90.25).epsilon(1e-14));
}

TEST_CASE("fewer than two units is an error") {
  try {
    hierarchical_cluster(scalar_codebook({1.0}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("linkage names round-trip") {
  for (Linkage l : {Linkage::ward, Linkage::complete, Linkage::average}) CHECK(parse_linkage(to_string(l)) == l);
  CHECK_THROWS_AS(parse_linkage("single"), Error);
}

TEST_CASE("merge sequence agrees with a from-scratch oracle") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> n_units(2, 8);
  for (Linkage linkage : {Linkage::ward, Linkage::complete, Linkage::average}) {
    for (int trial = 0; trial < 60; ++trial) {
      const Codebook cb = random_codebook(GridSpec(1, n_units(rng), Topology::string), 3, rng);
      const Dendrogram d = hierarchical_cluster(cb, linkage);
      const auto expected = oracle(cb, linkage);
      const auto got = merge_sets(d);
      REQUIRE(got.size() == expected.size());
      for (std::size_t s = 0; s < got.size(); ++s) {
        REQUIRE(got[s] == expected[s].joined);
        REQUIRE(std::abs(d.merges[s].height - expected[s].height) < 1e-9 * (1.0 + expected[s].height));
        REQUIRE(d.merges[s].size == got[s].size());
      }
    }
  }
}

TEST_CASE("restricted clustering only sees the selected components") {
  std::mt19937_64 rng(2);
  Codebook cb = random_codebook(GridSpec(3, 3, Topology::rectangle), 4, rng);
  Codebook head(cb.spec(), 2);
  for (std::size_t u = 0; u < 9; ++u)
    for (std::size_t c = 0; c < 2; ++c) head.vector(UnitId{u})[c] = cb.vector(UnitId{u})[c];
  const auto a = hierarchical_cluster(cb, Linkage::ward, ComponentRange{0, 2});
  const auto b = hierarchical_cluster(head);
  REQUIRE(a.merges.size() == b.merges.size());
  for (std::size_t s = 0; s < a.merges.size(); ++s) {
    CHECK(a.merges[s].left == b.merges[s].left);
    CHECK(a.merges[s].right == b.merges[s].right);
    CHECK(a.merges[s].height == b.merges[s].height);
  }
  CHECK_THROWS_AS(hierarchical_cluster(cb, Linkage::ward, ComponentRange{3, 2}), Error);
}

TEST_CASE("ward heights never decrease") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Dendrogram d = hierarchical_cluster(random_codebook(GridSpec(7, 7, Topology::rectangle), 5, rng));
    for (std::size_t s = 1; s < d.merges.size(); ++s)
      REQUIRE(d.merges[s].height >= d.merges[s - 1].height * (1.0 - 1e-12));
  }
}

TEST_CASE("extreme cuts") {
  std::mt19937_64 rng(4);
  const Dendrogram d = hierarchical_cluster(random_codebook(GridSpec(7, 7, Topology::rectangle), 3, rng));
  const auto all = cut(d, 49);
  for (std::size_t u = 0; u < 49; ++u) CHECK(all.labels[u] == u);
  const auto one = cut(d, 1);
  CHECK(one.count == 1);
  for (std::size_t u = 0; u < 49; ++u) CHECK(one.labels[u] == 0);
  const auto ten = cut(d, 10);
  CHECK(partition(ten).size() == 10);
  for (std::size_t k = 0; k < 10; ++k) CHECK_FALSE(ten.members(k).empty());
  CHECK_THROWS_AS(cut(d, 0), Error);
  CHECK_THROWS_AS(cut(d, 50), Error);
}

TEST_CASE("class labels follow the smallest member unit") {
  std::mt19937_64 rng(5);
  const Dendrogram d = hierarchical_cluster(random_codebook(GridSpec(5, 5, Topology::rectangle), 3, rng));
  for (std::size_t s = 1; s <= 25; ++s) {
    const auto sc = cut(d, s);
    std::size_t next = 0;
    for (std::size_t u = 0; u < 25; ++u) {
      REQUIRE(sc.labels[u] <= next);
      if (sc.labels[u] == next) ++next;
    }
    REQUIRE(next == s);
  }
}

TEST_CASE("consecutive cuts differ by one split") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Dendrogram d = hierarchical_cluster(random_codebook(GridSpec(4, 5, Topology::rectangle), 4, rng));
    for (std::size_t s = 1; s < 20; ++s) {
      const auto coarse = partition(cut(d, s));
      const auto fine = partition(cut(d, s + 1));
      std::vector<std::set<std::size_t>> only_coarse, only_fine;
      std::set_difference(coarse.begin(), coarse.end(), fine.begin(), fine.end(), std::back_inserter(only_coarse));
      std::set_difference(fine.begin(), fine.end(), coarse.begin(), coarse.end(), std::back_inserter(only_fine));
      REQUIRE(only_coarse.size() == 1);
      REQUIRE(only_fine.size() == 2);
      std::set<std::size_t> rejoined = only_fine[0];
      rejoined.insert(only_fine[1].begin(), only_fine[1].end());
      REQUIRE(rejoined == only_coarse[0]);
    }
  }
}

TEST_CASE("contiguity of singletons and of a split class") {
  const GridSpec spec(3, 3, Topology::rectangle);
  SuperClassification singletons{9, {0, 1, 2, 3, 4, 5, 6, 7, 8}};
  const auto ok = contiguity_report(singletons, spec);
  CHECK(ok.violations == 0);
  CHECK(std::all_of(ok.contiguous.begin(), ok.contiguous.end(), [](bool b) { return b; }));

  // Class 0 holds the two left corners; class 1 fills the gap between them.
  SuperClassification split{2, {0, 1, 1, 1, 1, 1, 0, 1, 1}};
  const auto bad = contiguity_report(split, spec);
  CHECK(bad.violations == 1);
  CHECK_FALSE(bad.contiguous[0]);
  CHECK(bad.contiguous[1]);

  SuperClassification with_empty{3, {0, 0, 0, 0, 0, 0, 0, 0, 1}};
  CHECK(contiguity_report(with_empty, spec).contiguous[2]);
}

TEST_CASE("elbow report lists merge heights and gaps") {
  const Dendrogram d = hierarchical_cluster(scalar_codebook({0.0, 1.0, 10.0}));
  const auto elbow = elbow_report(d);
  REQUIRE(elbow.size() == 2);
  CHECK(elbow[0].classes == 3);
  CHECK(elbow[0].height == 0.5);
  CHECK(elbow[0].gap == 0.5);
  CHECK(elbow[1].classes == 2);
  CHECK(elbow[1].gap == doctest::Approx(d.merges[1].height - 0.5));
}

TEST_CASE("dendrogram text lists one merge per line") {
  const Dendrogram d = hierarchical_cluster(scalar_codebook({0.0, 1.0, 10.0}));
  std::ostringstream os;
  write_dendrogram(os, d);
  CHECK(os.str().substr(0, os.str().find('\n')) == "step\tleft\tright\tnew_cluster\tsize\theight");
  CHECK(os.str().find("0\t0\t1\t3\t2\t0.5\n") != std::string::npos);
}
