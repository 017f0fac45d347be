#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cbpp/geometry.hpp"
#include "cbpp/model.hpp"

namespace cbpp {

/// Distance of a center to the border: (min(d_x, d_y), max(d_x, d_y)), where
/// d_x and d_y are the distances to the closer vertical and horizontal wall.
struct Quality {
  double primary = 0.0;
  double secondary = 0.0;

  friend bool operator==(const Quality&, const Quality&) = default;
};

Quality position_quality(const Point& position, double bin_side);

/// Lexicographic order on (primary, secondary). Smaller hugs the border more.
bool quality_less(const Quality& a, const Quality& b);

/// Which end of the quality order wins. `minimize` picks border-hugging
/// positions; `maximize` is the literal argmax reading, kept for ablation.
enum class QualityDirection { minimize, maximize };

enum class CandidateSource { corner, circle_wall, circle_circle };

struct CandidateAction {
  Point position;
  Quality quality;
  CandidateSource source = CandidateSource::corner;
  // Generating entities: circle ids (or -1) and the wall for circle_wall.
  int first_circle = -1;
  int second_circle = -1;
  Wall wall = Wall::left;
};

struct GacoaOptions {
  /// Absolute feasibility tolerance. Defaults to 1e-9 * L when unset.
  std::optional<double> tolerance;
  QualityDirection direction = QualityDirection::minimize;

  double resolve_tolerance(double bin_side) const {
    return tolerance.value_or(kDefaultRelativeTolerance * bin_side);
  }
};

/// All feasible corner-occupying positions for a circle of `radius` in a bin
/// holding `bin_contents`, deduplicated and best first.
std::vector<CandidateAction> candidate_actions(double radius,
                                               const std::vector<PlacedCircle>& bin_contents,
                                               double bin_side,
                                               const GacoaOptions& options = {});

/// Best feasible candidate only. Same answer as candidate_actions().front()
/// but stops at the first feasible position in preference order.
std::optional<CandidateAction> best_candidate(double radius,
                                              const std::vector<PlacedCircle>& bin_contents,
                                              double bin_side,
                                              const GacoaOptions& options = {});

struct PlacementDecision {
  int bin = 0;
  Point center;
  bool opened_bin = false;
};

using BinContents = std::map<int, std::vector<PlacedCircle>>;

/// Places `circle` in the first bin of `bin_order` that admits it, or in a
/// fresh bin (smallest index >= 1 not in `bin_order`) at its best corner.
/// `bins` is not modified.
PlacementDecision pack_one(const Circle& circle, const BinContents& bins,
                           const std::vector<int>& bin_order, double bin_side,
                           const GacoaOptions& options = {});

/// Ids sorted by decreasing radius, ties by ascending id.
std::vector<int> packing_order(const Instance& instance, const std::vector<int>& ids);

/// Greedy construction from an empty layout.
Layout gacoa_solve(const InstancePtr& instance, const GacoaOptions& options = {});

/// Reinserts the unassigned circles, trying the two perturbed bins first,
/// then every other non-empty bin ascending, then fresh bins.
Layout gacoa_complete(const PartialLayout& partial, const GacoaOptions& options = {});

}  // namespace cbpp
