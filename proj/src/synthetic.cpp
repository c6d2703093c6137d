#include "kdisj/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "kdisj/error.hpp"
#include "kdisj/text_io.hpp"

namespace kdisj {

namespace {

Error plan_error(std::size_t line_no, const std::string& what) {
  return Error(Errc::plan, "plan line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

SyntheticPlan read_plan(std::istream& is) {
  struct Pending {
    std::size_t line;
    std::vector<std::string> tokens;
  };
  std::vector<Variable> categorical;
  std::vector<std::string> quantitative;
  std::vector<PlanCluster> clusters;
  std::vector<Pending> settings;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto tokens = split_whitespace(body);
    const auto& kind = tokens[0];
    if (kind == "categorical" && tokens.size() >= 3) {
      categorical.push_back({tokens[1], std::vector<std::string>(tokens.begin() + 2, tokens.end())});
    } else if (kind == "quantitative" && tokens.size() == 2) {
      quantitative.push_back(tokens[1]);
    } else if (kind == "cluster" && tokens.size() == 3) {
      std::size_t size = 0;
      try {
        size = std::stoull(tokens[2]);
      } catch (const std::logic_error&) {
        throw plan_error(line_no, "bad cluster size '" + tokens[2] + "'");
      }
      if (size == 0) throw plan_error(line_no, "cluster '" + tokens[1] + "' is empty");
      clusters.push_back({tokens[1], size, {}, {}});
    } else if ((kind == "probs" && tokens.size() >= 4) || (kind == "mean" && tokens.size() == 5)) {
      settings.push_back({line_no, std::move(tokens)});
    } else {
      throw plan_error(line_no, "cannot parse '" + std::string(body) + "'");
    }
  }
  if (clusters.empty()) throw Error(Errc::plan, "plan declares no cluster");

  SyntheticPlan plan;
  try {
    plan.schema.schema = CategoricalSchema(std::move(categorical), std::move(quantitative));
  } catch (const Error& e) {
    throw Error(Errc::plan, e.what());
  }
  const auto& schema = plan.schema.schema;
  for (auto& c : clusters) {
    for (const auto& var : schema.variables())
      c.probs.emplace_back(var.modalities.size(), 1.0 / static_cast<double>(var.modalities.size()));
    c.normals.assign(schema.quantitative().size(), {0.0, 1.0});
  }

  auto find_cluster = [&](const Pending& p) -> PlanCluster& {
    for (auto& c : clusters) {
      if (c.name == p.tokens[1]) return c;
    }
    throw plan_error(p.line, "unknown cluster '" + p.tokens[1] + "'");
  };
  auto number = [](const Pending& p, const std::string& text) {
    try {
      return parse_real(text);
    } catch (const Error&) {
      throw plan_error(p.line, "bad number '" + text + "'");
    }
  };
  for (const auto& p : settings) {
    auto& cluster = find_cluster(p);
    if (p.tokens[0] == "probs") {
      const auto k = schema.find_variable(p.tokens[2]);
      if (!k) throw plan_error(p.line, "unknown categorical variable '" + p.tokens[2] + "'");
      const auto& mods = schema.variables()[*k].modalities;
      if (p.tokens.size() - 3 != mods.size())
        throw plan_error(p.line, "expected " + std::to_string(mods.size()) + " probabilities");
      std::vector<double> probs;
      for (std::size_t m = 0; m < mods.size(); ++m) {
        const double v = number(p, p.tokens[3 + m]);
        if (v < 0.0) throw plan_error(p.line, "negative probability");
        probs.push_back(v);
      }
      const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
      if (std::abs(sum - 1.0) > 1e-9)
        throw plan_error(p.line, "probabilities sum to " + format_real(sum) + ", not 1");
      cluster.probs[*k] = std::move(probs);
    } else {
      const auto& qs = schema.quantitative();
      const auto it = std::find(qs.begin(), qs.end(), p.tokens[2]);
      if (it == qs.end()) throw plan_error(p.line, "unknown quantitative variable '" + p.tokens[2] + "'");
      const double sd = number(p, p.tokens[4]);
      if (sd < 0.0) throw plan_error(p.line, "negative standard deviation");
      cluster.normals[static_cast<std::size_t>(it - qs.begin())] = {number(p, p.tokens[3]), sd};
    }
  }
  plan.clusters = std::move(clusters);
  return plan;
}

SyntheticPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read plan " + path.string());
  return read_plan(in);
}

SyntheticData generate_synthetic(const SyntheticPlan& plan, std::uint64_t seed) {
  const auto& schema = plan.schema.schema;
  const std::size_t q_vars = schema.quantitative().size();
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  struct Row {
    std::size_t cluster;
    CategoricalRecord record;
    std::vector<double> quant;
  };
  std::vector<Row> rows;
  for (std::size_t c = 0; c < plan.clusters.size(); ++c) {
    const auto& cluster = plan.clusters[c];
    for (std::size_t r = 0; r < cluster.size; ++r) {
      Row row{c, {}, {}};
      for (std::size_t k = 0; k < schema.variable_count(); ++k) {
        const auto& probs = cluster.probs[k];
        const double u = unit(engine);
        double acc = 0.0;
        std::size_t pick = probs.size() - 1;
        for (std::size_t m = 0; m < probs.size(); ++m) {
          acc += probs[m];
          if (u < acc) {
            pick = m;
            break;
          }
        }
        // Rounding can leave the tail of the cumulative sum short of 1; never
        // land on a zero-probability modality.
        while (probs[pick] == 0.0 && pick > 0) --pick;
        row.record.push_back(schema.variables()[k].modalities[pick]);
      }
      for (std::size_t q = 0; q < q_vars; ++q) {
        const auto [mean, sd] = cluster.normals[q];
        row.quant.push_back(mean + sd * normal(engine));
      }
      rows.push_back(std::move(row));
    }
  }
  std::shuffle(rows.begin(), rows.end(), engine);

  SyntheticData out;
  out.dataset.schema = plan.schema;
  out.dataset.quantitative = Matrix(rows.size(), q_vars);
  const int digits = static_cast<int>(std::to_string(rows.size()).size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.dataset.ids.push_back(fmt::format("r{:0{}}", i + 1, std::max(digits, 4)));
    out.dataset.records.push_back(std::move(rows[i].record));
    for (std::size_t q = 0; q < q_vars; ++q) out.dataset.quantitative(i, q) = rows[i].quant[q];
    out.truth.push_back(rows[i].cluster);
  }
  for (const auto& c : plan.clusters) out.cluster_names.push_back(c.name);
  return out;
}

void write_truth(std::ostream& os, const SyntheticData& data) {
  os << data.dataset.schema.id_column << ",cluster\n";
  for (std::size_t i = 0; i < data.truth.size(); ++i)
    os << data.dataset.ids[i] << ',' << data.cluster_names[data.truth[i]] << '\n';
}

}  // namespace kdisj
