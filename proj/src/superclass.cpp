#include "kdisj/superclass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "kdisj/error.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

std::string_view to_string(Linkage linkage) noexcept {
  switch (linkage) {
    case Linkage::ward: return "ward";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
  }
  return "ward";
}

Linkage parse_linkage(std::string_view name) {
  if (name == "ward") return Linkage::ward;
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  throw Error(Errc::config, "unknown linkage '" + std::string(name) + "'");
}

namespace {

struct Cluster {
  std::size_t id;
  std::size_t size;
  std::vector<double> centroid;
};

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    d += diff * diff;
  }
  return d;
}

double ward_cost(const Cluster& a, const Cluster& b) {
  const double na = static_cast<double>(a.size);
  const double nb = static_cast<double>(b.size);
  return na * nb / (na + nb) * sq_dist(a.centroid, b.centroid);
}

}  // namespace

Dendrogram hierarchical_cluster(const Codebook& cb, Linkage linkage, std::optional<ComponentRange> range) {
  const std::size_t units = cb.unit_count();
  if (units < 2) throw Error(Errc::invalid_argument, "hierarchical clustering needs at least two units");
  const ComponentRange r = range.value_or(ComponentRange::full(cb.dim()));
  if (r.length == 0 || r.end() > cb.dim()) throw Error(Errc::shape, "clustering range exceeds the code vectors");

  // Active clusters sorted by id; dist[a][b] indexes positions in `active`.
  std::vector<Cluster> active;
  for (std::size_t u = 0; u < units; ++u) {
    const auto v = cb.vector(UnitId{u}).subspan(r.start, r.length);
    active.push_back({u, 1, std::vector<double>(v.begin(), v.end())});
  }
  std::vector<std::vector<double>> dist(units, std::vector<double>(units, 0.0));
  for (std::size_t a = 0; a < units; ++a) {
    for (std::size_t b = a + 1; b < units; ++b) {
      const double d = linkage == Linkage::ward ? ward_cost(active[a], active[b])
                                                : std::sqrt(sq_dist(active[a].centroid, active[b].centroid));
      dist[a][b] = dist[b][a] = d;
    }
  }

  Dendrogram out;
  out.leaves = units;
  out.linkage = linkage;
  while (active.size() > 1) {
    std::size_t best_a = 0, best_b = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        if (dist[a][b] < best) {
          best = dist[a][b];
          best_a = a;
          best_b = b;
        }
      }
    }

    const Cluster& A = active[best_a];
    const Cluster& B = active[best_b];
    Cluster merged{units + out.merges.size(), A.size + B.size, std::vector<double>(A.centroid.size())};
    for (std::size_t c = 0; c < merged.centroid.size(); ++c)
      merged.centroid[c] = (static_cast<double>(A.size) * A.centroid[c] +
                            static_cast<double>(B.size) * B.centroid[c]) /
                           static_cast<double>(merged.size);
    out.merges.push_back({A.id, B.id, best, merged.size});

    std::vector<double> to_merged(active.size(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (k == best_a || k == best_b) continue;
      const double na = static_cast<double>(A.size), nb = static_cast<double>(B.size);
      switch (linkage) {
        case Linkage::ward: to_merged[k] = ward_cost(active[k], merged); break;
        case Linkage::complete: to_merged[k] = std::max(dist[k][best_a], dist[k][best_b]); break;
        case Linkage::average:
          to_merged[k] = (na * dist[k][best_a] + nb * dist[k][best_b]) / (na + nb);
          break;
      }
    }

    // The merged cluster has the largest id, so it goes last.
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (k != best_a && k != best_b) keep.push_back(k);
    }
    std::vector<Cluster> next_active;
    std::vector<std::vector<double>> next_dist(keep.size() + 1, std::vector<double>(keep.size() + 1, 0.0));
    for (std::size_t x = 0; x < keep.size(); ++x) {
      next_active.push_back(std::move(active[keep[x]]));
      for (std::size_t y = 0; y < keep.size(); ++y) next_dist[x][y] = dist[keep[x]][keep[y]];
      next_dist[x][keep.size()] = next_dist[keep.size()][x] = to_merged[keep[x]];
    }
    next_active.push_back(std::move(merged));
    active = std::move(next_active);
    dist = std::move(next_dist);
  }
  return out;
}

std::vector<UnitId> SuperClassification::members(std::size_t k) const {
  std::vector<UnitId> out;
  for (std::size_t u = 0; u < labels.size(); ++u) {
    if (labels[u] == k) out.push_back(UnitId{u});
  }
  return out;
}

SuperClassification cut(const Dendrogram& dendrogram, std::size_t classes) {
  const std::size_t units = dendrogram.leaves;
  if (classes < 1 || classes > units)
    throw Error(Errc::invalid_argument, "super class count " + std::to_string(classes) +
                                            " outside [1, " + std::to_string(units) + "]");
  // Union-find over leaves and merge nodes.
  std::vector<std::size_t> parent(units + dendrogram.merges.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t s = 0; s < units - classes; ++s) {
    const auto& mg = dendrogram.merges[s];
    parent[find(mg.left)] = units + s;
    parent[find(mg.right)] = units + s;
  }

  SuperClassification sc;
  sc.count = classes;
  sc.labels.assign(units, 0);
  std::vector<std::size_t> root_label(parent.size(), units);
  std::size_t next = 0;
  for (std::size_t u = 0; u < units; ++u) {
    const std::size_t root = find(u);
    if (root_label[root] == units) root_label[root] = next++;
    sc.labels[u] = root_label[root];
  }
  return sc;
}

ContiguityReport contiguity_report(const SuperClassification& sc, const GridSpec& spec) {
  ContiguityReport report;
  for (std::size_t k = 0; k < sc.count; ++k) {
    const auto members = sc.members(k);
    const bool ok = members.empty() || is_connected(spec, members);
    report.contiguous.push_back(ok);
    if (!ok) ++report.violations;
  }
  return report;
}

std::vector<ElbowEntry> elbow_report(const Dendrogram& dendrogram) {
  std::vector<ElbowEntry> out;
  double previous = 0.0;
  for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
    const double h = dendrogram.merges[s].height;
    out.push_back({dendrogram.leaves - s, h, h - previous});
    previous = h;
  }
  return out;
}

void write_dendrogram(std::ostream& os, const Dendrogram& dendrogram) {
  os << "step\tleft\tright\tnew_cluster\tsize\theight\n";
  for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
    const auto& mg = dendrogram.merges[s];
    os << s << '\t' << mg.left << '\t' << mg.right << '\t' << dendrogram.leaves + s << '\t' << mg.size
       << '\t' << format_real(mg.height) << '\n';
  }
}

}  // namespace kdisj
