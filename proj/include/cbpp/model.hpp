#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cbpp/geometry.hpp"

namespace cbpp {

/// Relative feasibility tolerance; the absolute value is this times L.
inline constexpr double kDefaultRelativeTolerance = 1e-9;

struct Circle {
  int id = 0;
  double radius = 0.0;

  friend bool operator==(const Circle&, const Circle&) = default;
};

/// A bin side length and the circles to pack. Circle ids are 0..n-1 and
/// circles()[i].id == i. Construction validates every invariant.
class Instance {
 public:
  /// Throws std::invalid_argument naming the first violated invariant.
  Instance(double bin_side, std::vector<Circle> circles);

  double bin_side() const { return bin_side_; }
  const std::vector<Circle>& circles() const { return circles_; }
  std::size_t size() const { return circles_.size(); }
  double radius(int id) const { return circles_[static_cast<std::size_t>(id)].radius; }
  double default_tolerance() const { return kDefaultRelativeTolerance * bin_side_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  double bin_side_;
  std::vector<Circle> circles_;
};

using InstancePtr = std::shared_ptr<const Instance>;

/// Location of one circle. `bin == 0` marks an unplaced circle.
struct Placement {
  int bin = 0;
  Point center;

  bool placed() const { return bin > 0; }
  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Assignment of circles to (bin, center). Bin indices are 1-based and may be
/// non-contiguous while a search is running; compact_bins() renumbers them.
class Layout {
 public:
  explicit Layout(InstancePtr instance);

  const Instance& instance() const { return *instance_; }
  const InstancePtr& instance_ptr() const { return instance_; }
  const std::vector<Placement>& placements() const { return placements_; }
  const Placement& placement(int id) const {
    return placements_[static_cast<std::size_t>(id)];
  }

  void place(int id, int bin, Point center);
  void unplace(int id);

  bool is_complete() const;
  std::size_t placed_count() const;

  /// Sorted indices of bins holding at least one circle.
  std::vector<int> nonempty_bins() const;
  std::vector<PlacedCircle> circles_in_bin(int bin) const;
  /// All placed circles grouped by bin, each group in ascending id order.
  std::map<int, std::vector<PlacedCircle>> bin_contents() const;

  friend bool operator==(const Layout& a, const Layout& b) {
    return *a.instance_ == *b.instance_ && a.placements_ == b.placements_;
  }

 private:
  InstancePtr instance_;
  std::vector<Placement> placements_;
};

/// Renumbers the non-empty bins to 1..K, preserving their relative order.
Layout compact_bins(const Layout& layout);

/// A layout with some circles taken out and queued for reinsertion.
struct PartialLayout {
  Layout base;
  std::set<int> unassigned;
  std::pair<int, int> perturbed_bins{0, 0};
};

struct Metrics {
  std::vector<double> bin_densities;  // ascending bin index, non-empty bins only
  int bins_used = 0;
  double d_min = 0.0;
  double d_max = 0.0;
  double objective = 0.0;
};

/// Fraction of the bin area covered by its circles.
/// Throws std::invalid_argument if the bin holds no circle.
double bin_density(const Layout& layout, int bin);

int bins_used(const Layout& layout);

Metrics compute_metrics(const Layout& layout);

/// f = -K + d_max - d_min over the non-empty bins. Larger is better.
double objective(const Layout& layout);
double objective_value(int bins_used, double d_max, double d_min);

enum class ViolationKind { unplaced, containment, overlap };

struct Violation {
  ViolationKind kind;
  int circle = -1;
  int other = -1;  // overlap only
  int bin = 0;
  double magnitude = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks every circle is placed, lies inside its bin and clears every other
/// circle of the same bin, all within `tolerance`.
ValidationReport validate(const Layout& layout, double tolerance);
ValidationReport validate(const Layout& layout);

/// Orders two layouts of the same instance by objective; `greater` means `a`
/// is the better layout. Throws std::invalid_argument for different instances.
std::partial_ordering compare(const Layout& a, const Layout& b);

/// Stable 64-bit fingerprint of an instance, rendered as 16 hex digits.
std::string instance_hash(const Instance& instance);

}  // namespace cbpp
