#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbpp/model.hpp"

namespace cbpp {

struct RenderOptions {
  double pixels_per_unit = 10.0;
  bool label_densities = true;
  int bins_per_row = 4;
};

/// Thrown by render_svg for a layout that fails validation.
class InvalidLayoutError : public std::runtime_error {
 public:
  explicit InvalidLayoutError(ValidationReport report)
      : std::runtime_error("layout does not validate:\n" + report.summary()),
        report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Margin around and between bin squares, in pixels.
inline constexpr double kRenderMargin = 20.0;

/// SVG with one square per non-empty bin, laid out row-major with bin 1 at the
/// top left. A layout point (x, y) of grid cell (col, row) maps to
///   sx = margin + col * (L*s + margin) + x*s
///   sy = margin + row * (L*s + margin) + (L - y)*s
/// so the bin's origin is its bottom-left corner, as in the layout.
std::string render_svg(const Layout& layout, const RenderOptions& options = {});

struct ComparisonRow {
  std::string instance;
  std::string algorithm;  // "gacoa", "lns", "alns"
  std::optional<unsigned long long> seed;
  double objective = 0.0;
  int bins_used = 0;
  std::vector<double> bin_densities;
  double wall_time_seconds = 0.0;
};

/// RFC 4180 CSV, one row per result:
///   instance,algorithm,seed,f,K,bin_1..bin_M,wall_time,f_A_minus_f_G,note
/// M is the largest bin count; shorter rows are padded with empty cells. For
/// ALNS rows of an instance that also has a GACOA row, f_A_minus_f_G holds
/// the difference and note says "bin reduction" when ALNS uses fewer bins.
std::string emit_comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace cbpp
