#include "cbpp/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "cbpp/format.hpp"

namespace cbpp {

std::string render_svg(const Layout& layout, const RenderOptions& options) {
  if (!(options.pixels_per_unit > 0.0)) {
    throw std::invalid_argument("pixels_per_unit must be positive");
  }
  if (options.bins_per_row < 1) throw std::invalid_argument("bins_per_row must be >= 1");
  ValidationReport report = validate(layout);
  if (!report.ok()) throw InvalidLayoutError(std::move(report));

  const Layout compact = compact_bins(layout);
  const Metrics metrics = compute_metrics(compact);
  const double side = compact.instance().bin_side();
  const double s = options.pixels_per_unit;
  const double cell = side * s + kRenderMargin;
  const int bins = metrics.bins_used;
  const int cols = std::min(bins, options.bins_per_row);
  const int rows = (bins + options.bins_per_row - 1) / options.bins_per_row;
  const double width = kRenderMargin + cols * cell;
  const double height = kRenderMargin + rows * cell;

  auto origin_x = [&](int bin) { return kRenderMargin + ((bin - 1) % options.bins_per_row) * cell; };
  auto origin_y = [&](int bin) { return kRenderMargin + ((bin - 1) / options.bins_per_row) * cell; };
  const auto f = format_double;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f(width)
      << "\" height=\"" << f(height) << "\" viewBox=\"0 0 " << f(width) << ' ' << f(height)
      << "\">\n";
  for (int bin = 1; bin <= bins; ++bin) {
    const double ox = origin_x(bin);
    const double oy = origin_y(bin);
    svg << "  <g id=\"bin-" << bin << "\">\n"
        << "    <rect x=\"" << f(ox) << "\" y=\"" << f(oy) << "\" width=\"" << f(side * s)
        << "\" height=\"" << f(side * s) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const PlacedCircle& c : compact.circles_in_bin(bin)) {
      svg << "    <circle id=\"c" << c.id << "\" cx=\"" << f(ox + c.center.x * s) << "\" cy=\""
          << f(oy + (side - c.center.y) * s) << "\" r=\"" << f(c.radius * s)
          << "\" fill=\"#9ecae1\" stroke=\"#3182bd\"/>\n";
    }
    if (options.label_densities) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", metrics.bin_densities[static_cast<std::size_t>(bin - 1)]);
      svg << "    <text x=\"" << f(ox) << "\" y=\"" << f(oy + side * s + 0.75 * kRenderMargin)
          << "\" font-size=\"12\">bin " << bin << ": d=" << buf << "</text>\n";
    }
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string emit_comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::size_t max_bins = 0;
  std::map<std::string, const ComparisonRow*> gacoa_by_instance;
  for (const auto& row : rows) {
    max_bins = std::max(max_bins, row.bin_densities.size());
    if (row.algorithm == "gacoa" && !gacoa_by_instance.count(row.instance)) {
      gacoa_by_instance[row.instance] = &row;
    }
  }

  std::string out = "instance,algorithm,seed,f,K";
  for (std::size_t b = 1; b <= max_bins; ++b) out += ",bin_" + std::to_string(b);
  out += ",wall_time,f_A_minus_f_G,note\r\n";

  for (const auto& row : rows) {
    out += csv_field(row.instance) + ',' + csv_field(row.algorithm) + ',';
    if (row.seed) out += std::to_string(*row.seed);
    out += ',' + format_double(row.objective) + ',' + std::to_string(row.bins_used);
    for (std::size_t b = 0; b < max_bins; ++b) {
      out += ',';
      if (b < row.bin_densities.size()) out += format_double(row.bin_densities[b]);
    }
    out += ',' + format_double(row.wall_time_seconds) + ',';
    std::string note;
    const auto g = gacoa_by_instance.find(row.instance);
    if (row.algorithm == "alns" && g != gacoa_by_instance.end()) {
      out += format_double(row.objective - g->second->objective);
      if (row.bins_used < g->second->bins_used) note = "bin reduction";
    }
    out += ',' + csv_field(note) + "\r\n";
  }
  return out;
}

}  // namespace cbpp
