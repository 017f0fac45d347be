#include "cbpp/benchgen.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "cbpp/io.hpp"
#include "cbpp/rng.hpp"

namespace cbpp {

double law_radius(RadiusLaw law, int i) {
  return law == RadiusLaw::linear ? static_cast<double>(i) : std::sqrt(static_cast<double>(i));
}

const char* to_string(RadiusLaw law) { return law == RadiusLaw::linear ? "linear" : "sqrt"; }
const char* to_string(CopyMode mode) { return mode == CopyMode::fixed ? "fixed" : "random"; }

RadiusLaw parse_law(const std::string& name) {
  if (name == "linear") return RadiusLaw::linear;
  if (name == "sqrt") return RadiusLaw::sqrt;
  throw std::invalid_argument("unknown radius law \"" + name + "\" (linear|sqrt)");
}

CopyMode parse_mode(const std::string& name) {
  if (name == "fixed") return CopyMode::fixed;
  if (name == "random") return CopyMode::random;
  throw std::invalid_argument("unknown copy mode \"" + name + "\" (fixed|random)");
}

Instance generate(const BenchmarkSpec& spec) {
  if (spec.n0 < 1) throw std::invalid_argument("n0 must be >= 1");
  const double largest = law_radius(spec.law, spec.n0);
  if (!(spec.bin_side >= 2.0 * largest)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "bin_side " << spec.bin_side << " is smaller than the largest diameter "
        << 2.0 * largest;
    throw std::invalid_argument(msg.str());
  }

  Rng rng(spec.seed);
  std::vector<Circle> circles;
  for (int i = 1; i <= spec.n0; ++i) {
    const int copies =
        spec.mode == CopyMode::fixed ? 5 : 2 + static_cast<int>(rng.uniform_index(4));
    const double r = law_radius(spec.law, i);
    for (int c = 0; c < copies; ++c) {
      circles.push_back({static_cast<int>(circles.size()), r});
    }
  }
  return Instance(spec.bin_side, std::move(circles));
}

std::optional<double> lookup_bin_side(const std::filesystem::path& table, RadiusLaw law, int n0) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(table));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(table.string() + ": malformed JSON: " + e.what());
  }
  const auto family = j.find(to_string(law));
  if (family == j.end() || !family->is_object()) return std::nullopt;
  const auto entry = family->find(std::to_string(n0));
  if (entry == family->end() || entry->is_null()) return std::nullopt;
  if (!entry->is_number()) {
    throw ParseError(table.string() + ": " + to_string(law) + "." + std::to_string(n0) +
                     ": expected a number or null");
  }
  return entry->get<double>();
}

std::string instance_label(const BenchmarkSpec& spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%s_n0-%02d", to_string(spec.law), to_string(spec.mode),
                spec.n0);
  std::string label = buf;
  if (spec.mode == CopyMode::random) label += "_s" + std::to_string(spec.seed);
  return label;
}

}  // namespace cbpp
