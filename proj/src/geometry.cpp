#include "cbpp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cbpp {
namespace {

// Squared-length residues this small (relative to the squared radius) are
// rounding noise from a tangent configuration and are snapped to zero.
constexpr double kDiscriminantSnap = 1e-12;

}  // namespace

bool point_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

double distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

const char* to_string(Wall wall) {
  switch (wall) {
    case Wall::left:
      return "left";
    case Wall::right:
      return "right";
    case Wall::bottom:
      return "bottom";
    case Wall::top:
      return "top";
  }
  return "?";
}

std::array<Point, 4> corner_positions(double radius, double bin_side) {
  if (!(radius > 0.0) || !(2.0 * radius <= bin_side)) {
    throw std::invalid_argument("corner_positions: need 0 < 2*radius <= bin_side (radius=" +
                                std::to_string(radius) +
                                ", bin_side=" + std::to_string(bin_side) + ")");
  }
  const double lo = radius;
  const double hi = bin_side - radius;
  return {Point{lo, lo}, Point{lo, hi}, Point{hi, lo}, Point{hi, hi}};
}

std::vector<Point> circle_wall_tangent_positions(const PlacedCircle& placed, Wall wall,
                                                 double radius, double bin_side) {
  const double reach = placed.radius + radius;
  const bool vertical = wall == Wall::left || wall == Wall::right;

  // Fixed coordinate of the new center, and the placed center split into the
  // component across the wall and the component along it.
  double fixed = 0.0;
  switch (wall) {
    case Wall::left:
    case Wall::bottom:
      fixed = radius;
      break;
    case Wall::right:
    case Wall::top:
      fixed = bin_side - radius;
      break;
  }
  const double across = vertical ? placed.center.x : placed.center.y;
  const double along = vertical ? placed.center.y : placed.center.x;

  const double gap = fixed - across;
  double disc = reach * reach - gap * gap;
  if (disc < 0.0) {
    if (disc < -kDiscriminantSnap * reach * reach) return {};
    disc = 0.0;
  }

  auto make = [&](double t) { return vertical ? Point{fixed, t} : Point{t, fixed}; };
  if (disc == 0.0) return {make(along)};
  const double half = std::sqrt(disc);
  return {make(along - half), make(along + half)};
}

CircleCircleTangents circle_circle_tangent_positions(const PlacedCircle& a,
                                                     const PlacedCircle& b, double radius) {
  CircleCircleTangents out;
  const double ra = a.radius + radius;
  const double rb = b.radius + radius;
  const double dx = b.center.x - a.center.x;
  const double dy = b.center.y - a.center.y;
  const double d2 = dx * dx + dy * dy;

  if (d2 == 0.0) {
    out.degenerate = ra == rb;
    return out;
  }

  const double d = std::sqrt(d2);
  // Distance from a.center to the chord midpoint along the center line.
  const double along = (ra * ra - rb * rb + d2) / (2.0 * d);
  double h2 = ra * ra - along * along;
  if (h2 < 0.0) {
    if (h2 < -kDiscriminantSnap * ra * ra) return out;
    h2 = 0.0;
  }

  const double ux = dx / d;
  const double uy = dy / d;
  const Point mid{a.center.x + along * ux, a.center.y + along * uy};
  if (h2 == 0.0) {
    out.points.push_back(mid);
    return out;
  }
  const double h = std::sqrt(h2);
  out.points.push_back({mid.x - h * uy, mid.y + h * ux});
  out.points.push_back({mid.x + h * uy, mid.y - h * ux});
  std::sort(out.points.begin(), out.points.end(), point_less);
  return out;
}

bool circles_overlap(const Point& a, double radius_a, const Point& b, double radius_b,
                     double tolerance) {
  return distance(a, b) < radius_a + radius_b - tolerance;
}

bool within_bin_axis(double coord, double radius, double bin_side, double tolerance) {
  return coord >= radius - tolerance && coord <= bin_side - radius + tolerance;
}

bool is_feasible_position(const Point& candidate, double radius,
                          const std::vector<PlacedCircle>& others, double bin_side,
                          double tolerance) {
  if (!within_bin_axis(candidate.x, radius, bin_side, tolerance) ||
      !within_bin_axis(candidate.y, radius, bin_side, tolerance)) {
    return false;
  }
  return std::none_of(others.begin(), others.end(), [&](const PlacedCircle& other) {
    return circles_overlap(candidate, radius, other.center, other.radius, tolerance);
  });
}

bool circle_rect_intersects(const PlacedCircle& circle, const Rect& rect) {
  const double lx = rect.bottom_left.x;
  const double ly = rect.bottom_left.y;
  const Point& c = circle.center;
  const double r = circle.radius;
  if (c.x - r >= lx + rect.width) return false;
  if (c.y - r >= ly + rect.height) return false;
  if (c.x + r <= lx) return false;
  if (c.y + r <= ly) return false;
  return true;
}

}  // namespace cbpp
