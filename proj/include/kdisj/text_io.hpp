#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kdisj {

/// 17 significant digits, so a reread reproduces the double exactly.
std::string format_real(double v);

/// Strict decimal parse; rejects trailing junk, NaN and infinities.
double parse_real(std::string_view text);

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string> split_whitespace(std::string_view line);

/// Comma-separated fields; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv(std::string_view line);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t v);

/// First line of every written artifact.
std::string provenance_line(std::uint64_t config_hash, std::uint64_t seed, std::string_view stage);

}  // namespace kdisj
