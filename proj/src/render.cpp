#include "kdisj/render.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "kdisj/error.hpp"

namespace kdisj {

namespace {

constexpr std::size_t kLabelsPerLine = 3;

std::vector<std::string> cell_lines(const MapCell& cell, std::optional<std::size_t> superclass) {
  std::vector<std::string> lines;
  if (superclass) lines.push_back(fmt::format("[{}]", *superclass + 1));
  for (std::size_t m = 0; m < cell.modalities.size(); m += kLabelsPerLine) {
    std::string line;
    for (std::size_t x = m; x < std::min(m + kLabelsPerLine, cell.modalities.size()); ++x) {
      if (!line.empty()) line += ' ';
      line += cell.modalities[x];
    }
    lines.push_back(std::move(line));
  }
  lines.push_back(count_text(cell));
  return lines;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

MapRender build_map(const GridSpec& spec, std::span<const UnitId> individual_units,
                    std::span<const UnitId> modality_units, std::span<const std::string> modality_labels,
                    const std::optional<SplitValues>& split) {
  if (modality_units.size() != modality_labels.size())
    throw Error(Errc::shape, "one label per classified modality required");
  if (split && split->values.size() != individual_units.size())
    throw Error(Errc::shape, "one split value per individual required");

  MapRender map{spec, std::vector<MapCell>(spec.unit_count()), split.has_value()};
  if (split) {
    for (auto& cell : map.cells) cell.split.assign(split->levels, 0);
  }
  for (std::size_t i = 0; i < individual_units.size(); ++i) {
    spec.check(individual_units[i]);
    auto& cell = map.cells[individual_units[i].index];
    ++cell.count;
    if (split) {
      if (split->values[i] >= split->levels) throw Error(Errc::shape, "split value out of range");
      ++cell.split[split->values[i]];
    }
  }
  for (std::size_t m = 0; m < modality_units.size(); ++m) {
    spec.check(modality_units[m]);
    map.cells[modality_units[m].index].modalities.push_back(modality_labels[m]);
  }
  for (const auto& cell : map.cells) {
    if (split && std::accumulate(cell.split.begin(), cell.split.end(), std::size_t{0}) != cell.count)
      throw Error(Errc::numeric, "split counts do not add up to the cell count");
  }
  return map;
}

std::string count_text(const MapCell& cell) {
  if (cell.count == 0 || cell.split.empty()) return std::to_string(cell.count);
  std::string out = std::to_string(cell.count) + "(";
  for (std::size_t s = 0; s < cell.split.size(); ++s) {
    if (s) out += ',';
    out += std::to_string(cell.split[s]);
  }
  return out + ")";
}

std::string render_text(const MapRender& map, const SuperClassification* superclasses) {
  const auto& spec = map.spec;
  std::vector<std::vector<std::string>> lines(map.cells.size());
  std::size_t width = 1;
  for (std::size_t u = 0; u < map.cells.size(); ++u) {
    std::optional<std::size_t> sc;
    if (superclasses) sc = superclasses->labels.at(u);
    lines[u] = cell_lines(map.cells[u], sc);
    for (const auto& l : lines[u]) width = std::max(width, l.size());
  }

  std::string border = "+";
  for (std::size_t c = 0; c < spec.cols(); ++c) border += std::string(width + 2, '-') + "+";
  border += '\n';

  std::ostringstream os;
  os << border;
  for (std::size_t r = 0; r < spec.rows(); ++r) {
    std::size_t height = 1;
    for (std::size_t c = 0; c < spec.cols(); ++c) height = std::max(height, lines[r * spec.cols() + c].size());
    for (std::size_t h = 0; h < height; ++h) {
      os << '|';
      for (std::size_t c = 0; c < spec.cols(); ++c) {
        const auto& cell = lines[r * spec.cols() + c];
        const std::string text = h < cell.size() ? cell[h] : std::string();
        os << ' ' << text << std::string(width - text.size(), ' ') << " |";
      }
      os << '\n';
    }
    os << border;
  }
  return os.str();
}

std::string render_svg(const MapRender& map, const SuperClassification* superclasses) {
  static constexpr const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                             "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
  const auto& spec = map.spec;
  std::vector<std::vector<std::string>> lines(map.cells.size());
  std::size_t width_chars = 1, height_lines = 1;
  for (std::size_t u = 0; u < map.cells.size(); ++u) {
    std::optional<std::size_t> sc;
    if (superclasses) sc = superclasses->labels.at(u);
    lines[u] = cell_lines(map.cells[u], sc);
    height_lines = std::max(height_lines, lines[u].size());
    for (const auto& l : lines[u]) width_chars = std::max(width_chars, l.size());
  }
  const std::size_t cell_w = width_chars * 8 + 12;
  const std::size_t cell_h = height_lines * 16 + 10;

  std::ostringstream os;
  os << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"monospace\" "
      "font-size=\"13\">\n",
      cell_w * spec.cols(), cell_h * spec.rows());
  for (std::size_t u = 0; u < map.cells.size(); ++u) {
    const std::size_t x = spec.col_of(UnitId{u}) * cell_w;
    const std::size_t y = spec.row_of(UnitId{u}) * cell_h;
    const char* fill = superclasses ? kPalette[superclasses->labels.at(u) % std::size(kPalette)] : "#ffffff";
    os << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#333333\"/>\n", x,
                      y, cell_w, cell_h, fill);
    for (std::size_t l = 0; l < lines[u].size(); ++l) {
      os << fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", x + 6, y + 18 + l * 16, xml_escape(lines[u][l]));
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace kdisj
