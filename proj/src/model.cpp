#include "cbpp/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cbpp {

Instance::Instance(double bin_side, std::vector<Circle> circles)
    : bin_side_(bin_side), circles_(std::move(circles)) {
  if (!std::isfinite(bin_side_) || !(bin_side_ > 0.0)) {
    throw std::invalid_argument("bin_side must be a positive finite number");
  }
  if (circles_.empty()) throw std::invalid_argument("instance has no circles");

  std::sort(circles_.begin(), circles_.end(),
            [](const Circle& a, const Circle& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < circles_.size(); ++i) {
    const Circle& c = circles_[i];
    if (i > 0 && circles_[i - 1].id == c.id) {
      throw std::invalid_argument("duplicate circle id " + std::to_string(c.id));
    }
    if (c.id != static_cast<int>(i)) {
      throw std::invalid_argument("circle ids must be dense 0..n-1; missing id " +
                                  std::to_string(i));
    }
    if (!std::isfinite(c.radius) || !(c.radius > 0.0)) {
      throw std::invalid_argument("circle " + std::to_string(c.id) +
                                  ": radius must be positive and finite");
    }
    if (2.0 * c.radius > bin_side_) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "circle " << c.id << ": 2*radius (" << 2.0 * c.radius << ") exceeds bin_side ("
          << bin_side_ << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

Layout::Layout(InstancePtr instance)
    : instance_(std::move(instance)), placements_(instance_->size()) {}

void Layout::place(int id, int bin, Point center) {
  if (bin < 1) throw std::invalid_argument("bin index must be >= 1");
  placements_.at(static_cast<std::size_t>(id)) = Placement{bin, center};
}

void Layout::unplace(int id) { placements_.at(static_cast<std::size_t>(id)) = Placement{}; }

bool Layout::is_complete() const {
  return std::all_of(placements_.begin(), placements_.end(),
                     [](const Placement& p) { return p.placed(); });
}

std::size_t Layout::placed_count() const {
  return static_cast<std::size_t>(std::count_if(
      placements_.begin(), placements_.end(), [](const Placement& p) { return p.placed(); }));
}

std::vector<int> Layout::nonempty_bins() const {
  std::vector<int> bins;
  for (const auto& p : placements_) {
    if (p.placed()) bins.push_back(p.bin);
  }
  std::sort(bins.begin(), bins.end());
  bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
  return bins;
}

std::vector<PlacedCircle> Layout::circles_in_bin(int bin) const {
  std::vector<PlacedCircle> out;
  for (std::size_t i = 0; i < placements_.size(); ++i) {
    const auto& p = placements_[i];
    if (p.bin == bin && p.placed()) {
      out.push_back({static_cast<int>(i), instance_->circles()[i].radius, p.center, p.bin});
    }
  }
  return out;
}

std::map<int, std::vector<PlacedCircle>> Layout::bin_contents() const {
  std::map<int, std::vector<PlacedCircle>> out;
  for (std::size_t i = 0; i < placements_.size(); ++i) {
    const auto& p = placements_[i];
    if (!p.placed()) continue;
    out[p.bin].push_back({static_cast<int>(i), instance_->circles()[i].radius, p.center, p.bin});
  }
  return out;
}

Layout compact_bins(const Layout& layout) {
  const std::vector<int> bins = layout.nonempty_bins();
  Layout out(layout.instance_ptr());
  for (std::size_t i = 0; i < layout.placements().size(); ++i) {
    const Placement& p = layout.placements()[i];
    if (!p.placed()) continue;
    const auto pos = std::lower_bound(bins.begin(), bins.end(), p.bin) - bins.begin();
    out.place(static_cast<int>(i), static_cast<int>(pos) + 1, p.center);
  }
  return out;
}

namespace {

// Covered area per non-empty bin, keyed by bin index.
std::map<int, double> covered_area(const Layout& layout) {
  std::map<int, double> area;
  const auto& circles = layout.instance().circles();
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const Placement& p = layout.placements()[i];
    if (!p.placed()) continue;
    area[p.bin] += std::numbers::pi * circles[i].radius * circles[i].radius;
  }
  return area;
}

}  // namespace

double bin_density(const Layout& layout, int bin) {
  const auto area = covered_area(layout);
  const auto it = area.find(bin);
  if (it == area.end()) {
    throw std::invalid_argument("bin " + std::to_string(bin) + " is empty or unknown");
  }
  const double side = layout.instance().bin_side();
  return it->second / (side * side);
}

int bins_used(const Layout& layout) { return static_cast<int>(layout.nonempty_bins().size()); }

Metrics compute_metrics(const Layout& layout) {
  Metrics m;
  const double side = layout.instance().bin_side();
  for (const auto& [bin, area] : covered_area(layout)) {
    m.bin_densities.push_back(area / (side * side));
  }
  m.bins_used = static_cast<int>(m.bin_densities.size());
  if (!m.bin_densities.empty()) {
    const auto [lo, hi] = std::minmax_element(m.bin_densities.begin(), m.bin_densities.end());
    m.d_min = *lo;
    m.d_max = *hi;
  }
  m.objective = objective_value(m.bins_used, m.d_max, m.d_min);
  return m;
}

double objective_value(int bins_used, double d_max, double d_min) {
  return -static_cast<double>(bins_used) + d_max - d_min;
}

double objective(const Layout& layout) { return compute_metrics(layout).objective; }

ValidationReport validate(const Layout& layout, double tolerance) {
  ValidationReport report;
  const Instance& inst = layout.instance();
  const double side = inst.bin_side();

  for (const Circle& c : inst.circles()) {
    const Placement& p = layout.placement(c.id);
    if (!p.placed()) {
      report.violations.push_back({ViolationKind::unplaced, c.id, -1, 0, 0.0,
                                   "circle " + std::to_string(c.id) + " is not placed"});
      continue;
    }
    for (int axis = 0; axis < 2; ++axis) {
      const double coord = axis == 0 ? p.center.x : p.center.y;
      if (within_bin_axis(coord, c.radius, side, tolerance)) continue;
      const double excess = std::max(c.radius - coord, coord - (side - c.radius));
      std::ostringstream msg;
      msg.precision(17);
      const char* name = axis == 0 ? "x" : "y";
      msg << "circle " << c.id << " in bin " << p.bin << ": " << name << "=" << coord
          << " violates r <= " << name << " <= L - r (r=" << c.radius << ", L=" << side
          << ") by " << excess;
      report.violations.push_back(
          {ViolationKind::containment, c.id, -1, p.bin, excess, msg.str()});
    }
  }

  for (const auto& [bin, members] : layout.bin_contents()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const auto& a = members[i];
        const auto& b = members[j];
        if (!circles_overlap(a.center, a.radius, b.center, b.radius, tolerance)) continue;
        const double d = distance(a.center, b.center);
        const double depth = a.radius + b.radius - d;
        std::ostringstream msg;
        msg.precision(17);
        msg << "circles " << a.id << " and " << b.id << " overlap in bin " << bin
            << ": distance " << d << " < " << a.radius + b.radius << " by " << depth;
        report.violations.push_back({ViolationKind::overlap, a.id, b.id, bin, depth, msg.str()});
      }
    }
  }
  return report;
}

ValidationReport validate(const Layout& layout) {
  return validate(layout, layout.instance().default_tolerance());
}

std::string ValidationReport::summary() const {
  if (ok()) return "OK";
  std::string out;
  for (const auto& v : violations) {
    out += v.message;
    out += '\n';
  }
  return out;
}

std::partial_ordering compare(const Layout& a, const Layout& b) {
  if (!(a.instance() == b.instance())) {
    throw std::invalid_argument("compare: layouts belong to different instances");
  }
  return objective(a) <=> objective(b);
}

std::string instance_hash(const Instance& instance) {
  // FNV-1a over the shortest round-trip text of L and every radius.
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&h](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    *res.ptr++ = ';';
    for (const char* p = buf; p != res.ptr; ++p) {
      h ^= static_cast<unsigned char>(*p);
      h *= 1099511628211ULL;
    }
  };
  feed(instance.bin_side());
  for (const Circle& c : instance.circles()) feed(c.radius);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace cbpp
