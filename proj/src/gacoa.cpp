#include "cbpp/gacoa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbpp {
namespace {

constexpr double kDedupRelative = 1e-12;

Quality make_quality(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

double wall_distance(double coord, double bin_side) {
  return std::min(coord, bin_side - coord);
}

// Every corner-occupying position for one bin, without the overlap check.
// Positions that already leave the bin are dropped here since that test is
// cheap. Corner and wall candidates take their known wall distance (the new
// radius) directly, so symmetric positions tie exactly.
std::vector<CandidateAction> raw_candidates(double radius,
                                            const std::vector<PlacedCircle>& contents,
                                            double bin_side, double tol) {
  std::vector<CandidateAction> out;
  out.reserve(4 + 8 * contents.size() + contents.size() * contents.size());
  auto inside = [&](const Point& p) {
    return within_bin_axis(p.x, radius, bin_side, tol) &&
           within_bin_axis(p.y, radius, bin_side, tol);
  };

  for (const Point& p : corner_positions(radius, bin_side)) {
    CandidateAction c;
    c.position = p;
    c.quality = {radius, radius};
    c.source = CandidateSource::corner;
    out.push_back(c);
  }

  for (const PlacedCircle& placed : contents) {
    for (Wall wall : kAllWalls) {
      const bool vertical = wall == Wall::left || wall == Wall::right;
      for (const Point& p : circle_wall_tangent_positions(placed, wall, radius, bin_side)) {
        if (!inside(p)) continue;
        CandidateAction c;
        c.position = p;
        c.quality = make_quality(radius, wall_distance(vertical ? p.y : p.x, bin_side));
        c.source = CandidateSource::circle_wall;
        c.first_circle = placed.id;
        c.wall = wall;
        out.push_back(c);
      }
    }
  }

  for (std::size_t i = 0; i < contents.size(); ++i) {
    for (std::size_t j = i + 1; j < contents.size(); ++j) {
      const auto tangents = circle_circle_tangent_positions(contents[i], contents[j], radius);
      for (const Point& p : tangents.points) {
        if (!inside(p)) continue;
        CandidateAction c;
        c.position = p;
        c.quality = make_quality(wall_distance(p.x, bin_side), wall_distance(p.y, bin_side));
        c.source = CandidateSource::circle_circle;
        c.first_circle = contents[i].id;
        c.second_circle = contents[j].id;
        out.push_back(c);
      }
    }
  }
  return out;
}

void sort_by_preference(std::vector<CandidateAction>& candidates, QualityDirection direction) {
  std::sort(candidates.begin(), candidates.end(),
            [direction](const CandidateAction& a, const CandidateAction& b) {
              if (!(a.quality == b.quality)) {
                return direction == QualityDirection::minimize
                           ? quality_less(a.quality, b.quality)
                           : quality_less(b.quality, a.quality);
              }
              return point_less(a.position, b.position);
            });
}

}  // namespace

Quality position_quality(const Point& position, double bin_side) {
  return make_quality(wall_distance(position.x, bin_side), wall_distance(position.y, bin_side));
}

bool quality_less(const Quality& a, const Quality& b) {
  if (a.primary != b.primary) return a.primary < b.primary;
  return a.secondary < b.secondary;
}

std::vector<CandidateAction> candidate_actions(double radius,
                                               const std::vector<PlacedCircle>& bin_contents,
                                               double bin_side, const GacoaOptions& options) {
  const double tol = options.resolve_tolerance(bin_side);
  auto raw = raw_candidates(radius, bin_contents, bin_side, tol);
  sort_by_preference(raw, options.direction);

  const double dedup = kDedupRelative * bin_side;
  std::vector<CandidateAction> out;
  for (const CandidateAction& c : raw) {
    if (!is_feasible_position(c.position, radius, bin_contents, bin_side, tol)) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const CandidateAction& kept) {
      return distance(kept.position, c.position) <= dedup;
    });
    if (!seen) out.push_back(c);
  }
  return out;
}

std::optional<CandidateAction> best_candidate(double radius,
                                              const std::vector<PlacedCircle>& bin_contents,
                                              double bin_side, const GacoaOptions& options) {
  const double tol = options.resolve_tolerance(bin_side);
  auto raw = raw_candidates(radius, bin_contents, bin_side, tol);
  sort_by_preference(raw, options.direction);
  for (const CandidateAction& c : raw) {
    if (is_feasible_position(c.position, radius, bin_contents, bin_side, tol)) return c;
  }
  return std::nullopt;
}

PlacementDecision pack_one(const Circle& circle, const BinContents& bins,
                           const std::vector<int>& bin_order, double bin_side,
                           const GacoaOptions& options) {
  static const std::vector<PlacedCircle> kEmpty;
  for (int bin : bin_order) {
    const auto it = bins.find(bin);
    const auto& contents = it == bins.end() ? kEmpty : it->second;
    if (auto best = best_candidate(circle.radius, contents, bin_side, options)) {
      return {bin, best->position, false};
    }
  }

  int fresh = 1;
  auto taken = [&](int k) {
    if (std::find(bin_order.begin(), bin_order.end(), k) != bin_order.end()) return true;
    const auto it = bins.find(k);
    return it != bins.end() && !it->second.empty();
  };
  while (taken(fresh)) ++fresh;

  const auto best = best_candidate(circle.radius, kEmpty, bin_side, options);
  if (!best) {
    // Unreachable for a valid instance: an empty bin always admits a corner.
    throw std::logic_error("pack_one: circle " + std::to_string(circle.id) +
                           " does not fit an empty bin");
  }
  return {fresh, best->position, true};
}

std::vector<int> packing_order(const Instance& instance, const std::vector<int>& ids) {
  std::vector<int> order = ids;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ra = instance.radius(a);
    const double rb = instance.radius(b);
    if (ra != rb) return ra > rb;
    return a < b;
  });
  return order;
}

namespace {

void pack_all(Layout& layout, BinContents& bins, std::vector<int>& bin_order,
              const std::vector<int>& ids, const GacoaOptions& options) {
  const Instance& inst = layout.instance();
  for (int id : packing_order(inst, ids)) {
    const Circle& circle = inst.circles()[static_cast<std::size_t>(id)];
    const PlacementDecision d = pack_one(circle, bins, bin_order, inst.bin_side(), options);
    layout.place(id, d.bin, d.center);
    bins[d.bin].push_back({id, circle.radius, d.center, d.bin});
    if (d.opened_bin) bin_order.push_back(d.bin);
  }
}

}  // namespace

Layout gacoa_solve(const InstancePtr& instance, const GacoaOptions& options) {
  if (!instance) throw std::invalid_argument("gacoa_solve: null instance");
  Layout layout(instance);
  BinContents bins;
  std::vector<int> bin_order;
  std::vector<int> ids(instance->size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  pack_all(layout, bins, bin_order, ids, options);
  return layout;
}

Layout gacoa_complete(const PartialLayout& partial, const GacoaOptions& options) {
  Layout layout = partial.base;
  if (partial.unassigned.empty()) return layout;

  BinContents bins = layout.bin_contents();
  std::vector<int> bin_order;
  const auto [k1, k2] = partial.perturbed_bins;
  if (k1 > 0) bin_order.push_back(k1);
  if (k2 > 0 && k2 != k1) bin_order.push_back(k2);
  for (const auto& [bin, contents] : bins) {
    if (bin != k1 && bin != k2) bin_order.push_back(bin);
  }

  const std::vector<int> ids(partial.unassigned.begin(), partial.unassigned.end());
  pack_all(layout, bins, bin_order, ids, options);
  return layout;
}

}  // namespace cbpp
