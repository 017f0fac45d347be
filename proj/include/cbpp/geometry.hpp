#pragma once

#include <array>
#include <vector>

namespace cbpp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Lexicographic (x, y) order used to make every candidate list reproducible.
bool point_less(const Point& a, const Point& b);

double distance(const Point& a, const Point& b);

struct PlacedCircle {
  int id = -1;
  double radius = 0.0;
  Point center;
  int bin = 0;
};

/// Axis-aligned rectangle. May extend beyond the bin.
struct Rect {
  Point bottom_left;
  double width = 0.0;
  double height = 0.0;

  Point top_right() const { return {bottom_left.x + width, bottom_left.y + height}; }
};

enum class Wall { left, right, bottom, top };

inline constexpr std::array<Wall, 4> kAllWalls = {Wall::left, Wall::right, Wall::bottom,
                                                 Wall::top};

const char* to_string(Wall wall);

/// The four positions where a circle of `radius` touches two perpendicular
/// walls, sorted by (x, y). Coincident points are kept (r == L/2).
/// Throws std::invalid_argument unless 0 < 2*radius <= bin_side.
std::array<Point, 4> corner_positions(double radius, double bin_side);

/// Positions at distance `radius` from `wall` that touch `placed` externally.
/// Returns 0, 1 or 2 points ordered along the wall.
std::vector<Point> circle_wall_tangent_positions(const PlacedCircle& placed, Wall wall,
                                                 double radius, double bin_side);

struct CircleCircleTangents {
  std::vector<Point> points;
  // Set when both expanded circles coincide (infinitely many solutions).
  bool degenerate = false;
};

/// Positions where a circle of `radius` touches both `a` and `b` externally:
/// the intersections of the two expanded circles, sorted by (x, y).
CircleCircleTangents circle_circle_tangent_positions(const PlacedCircle& a,
                                                     const PlacedCircle& b, double radius);

/// True when a center at `candidate` keeps a circle of `radius` inside the
/// bin and clear of every circle in `others`, both up to `tolerance`.
bool is_feasible_position(const Point& candidate, double radius,
                          const std::vector<PlacedCircle>& others, double bin_side,
                          double tolerance);

/// Shared overlap predicate: true when the two circles penetrate each other by
/// more than `tolerance`. Used by both placement and validation so they agree.
bool circles_overlap(const Point& a, double radius_a, const Point& b, double radius_b,
                     double tolerance);

/// Containment check for one axis: radius - tol <= coord <= L - radius + tol.
bool within_bin_axis(double coord, double radius, double bin_side, double tolerance);

/// Envelope-box test against a rectangle. Touching edges do not count.
bool circle_rect_intersects(const PlacedCircle& circle, const Rect& rect);

}  // namespace cbpp
