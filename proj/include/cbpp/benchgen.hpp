#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cbpp/model.hpp"

namespace cbpp {

enum class RadiusLaw { linear, sqrt };  // r_i = i, r_i = sqrt(i)
enum class CopyMode { fixed, random };  // 5 copies, or 2..5 copies per radius

struct BenchmarkSpec {
  int n0 = 8;
  RadiusLaw law = RadiusLaw::linear;
  CopyMode mode = CopyMode::fixed;
  double bin_side = 0.0;
  std::uint64_t seed = 0;
};

double law_radius(RadiusLaw law, int i);

const char* to_string(RadiusLaw law);
const char* to_string(CopyMode mode);
/// Throw std::invalid_argument for unknown names.
RadiusLaw parse_law(const std::string& name);
CopyMode parse_mode(const std::string& name);

/// Builds the instance: for each i in 1..n0, five copies (fixed) or a uniform
/// 2..5 copies drawn with Rng(seed) (random) of radius law(i). Ids follow
/// (i, copy) order. Throws std::invalid_argument when n0 < 1 or
/// bin_side < 2 * law(n0).
Instance generate(const BenchmarkSpec& spec);

/// Looks up the bin side recorded for (law, n0) in a bin-side table:
/// {"linear": {"8": 28.1, ...}, "sqrt": {...}}. Null or missing entries give
/// std::nullopt. Throws ParseError for a malformed file.
std::optional<double> lookup_bin_side(const std::filesystem::path& table, RadiusLaw law, int n0);

/// Canonical file name for a generated instance, e.g. "linear_fixed_n0-08.json".
std::string instance_label(const BenchmarkSpec& spec);

}  // namespace cbpp
