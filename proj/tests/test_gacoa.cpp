#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "cbpp/gacoa.hpp"
#include "test_support.hpp"

using namespace cbpp;
using cbpp::testing::make_instance;

namespace {

PlacedCircle circle_at(double x, double y, double r, int id) { return {id, r, {x, y}, 1}; }

// Independent overlap/containment check in long double.
bool clear_of(const Point& p, double r, const std::vector<PlacedCircle>& others, double L,
              double tol) {
  if (p.x < r - tol || p.x > L - r + tol || p.y < r - tol || p.y > L - r + tol) return false;
  for (const auto& o : others) {
    if (cbpp::testing::dist_ld(p.x, p.y, o.center.x, o.center.y) <
        static_cast<long double>(r) + o.radius - tol) {
      return false;
    }
  }
  return true;
}

// Number of walls and circles a placed circle touches within `tol`.
int contact_count(const Point& p, double r, const std::vector<PlacedCircle>& others, double L,
                  double tol) {
  int n = 0;
  if (std::abs(p.x - r) <= tol) ++n;
  if (std::abs(p.x - (L - r)) <= tol) ++n;
  if (std::abs(p.y - r) <= tol) ++n;
  if (std::abs(p.y - (L - r)) <= tol) ++n;
  for (const auto& o : others) {
    const long double d = cbpp::testing::dist_ld(p.x, p.y, o.center.x, o.center.y);
    if (std::abs(static_cast<double>(d) - (r + o.radius)) <= tol) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("quality_less is dictionary order, smaller preferred") {
  CHECK(quality_less({2, 5}, {3, 3}));
  CHECK_FALSE(quality_less({3, 3}, {2, 5}));
  CHECK(quality_less({2, 4}, {2, 5}));
  CHECK_FALSE(quality_less({2, 5}, {2, 5}));
}

TEST_CASE("position_quality uses the closer wall on each axis") {
  const Quality q = position_quality({2, 7}, 10.0);
  CHECK(q.primary == 2.0);
  CHECK(q.secondary == 3.0);
}

TEST_CASE("candidate_actions in an empty bin are the four corners") {
  const auto c = candidate_actions(1.0, {}, 10.0);
  REQUIRE(c.size() == 4);
  CHECK(c[0].position == Point{1, 1});
  for (const auto& a : c) CHECK(a.source == CandidateSource::corner);
}

TEST_CASE("candidate_actions next to one circle, enumerated by hand") {
  const std::vector<PlacedCircle> bin{circle_at(1, 1, 1, 0)};
  const auto c = candidate_actions(1.0, bin, 10.0);
  const std::vector<Point> expected{{1, 9}, {9, 1}, {9, 9}, {1, 3}, {3, 1}};
  REQUIRE(c.size() == expected.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c[i].position.x == doctest::Approx(expected[i].x).epsilon(1e-15));
    CHECK(c[i].position.y == doctest::Approx(expected[i].y).epsilon(1e-15));
    CHECK(clear_of(c[i].position, 1.0, bin, 10.0, 1e-8));
  }
  CHECK(c[3].source == CandidateSource::circle_wall);
}

TEST_CASE("candidate_actions includes the circle-circle pocket") {
  const std::vector<PlacedCircle> bin{circle_at(1, 1, 1, 0), circle_at(3, 1, 1, 1)};
  const auto c = candidate_actions(1.0, bin, 10.0);
  const auto it = std::find_if(c.begin(), c.end(), [](const CandidateAction& a) {
    return a.source == CandidateSource::circle_circle;
  });
  REQUIRE(it != c.end());
  CHECK(it->position.x == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(it->position.y == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-15));
  CHECK(std::abs(distance(it->position, {1, 1}) - 2.0) <= 1e-9 * 10.0);
  CHECK(std::abs(distance(it->position, {3, 1}) - 2.0) <= 1e-9 * 10.0);
  for (const auto& a : c) CHECK(clear_of(a.position, 1.0, bin, 10.0, 1e-8));
}

TEST_CASE("candidate_actions deduplicates coincident positions") {
  const auto c = candidate_actions(5.0, {}, 10.0);
  REQUIRE(c.size() == 1);
  CHECK(c[0].position == Point{5, 5});
}

TEST_CASE("best_candidate matches the head of candidate_actions") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = cbpp::testing::random_instance(gen, 3, 8);
    const Layout layout = gacoa_solve(inst);
    const double L = inst->bin_side();
    std::uniform_real_distribution<double> rad(0.1, L / 4);
    for (const auto& [bin, contents] : layout.bin_contents()) {
      for (auto dir : {QualityDirection::minimize, QualityDirection::maximize}) {
        GacoaOptions opt;
        opt.direction = dir;
        const double r = rad(gen);
        const auto all = candidate_actions(r, contents, L, opt);
        const auto best = best_candidate(r, contents, L, opt);
        CHECK(all.empty() == !best.has_value());
        if (best) CHECK(best->position == all.front().position);
        for (const auto& a : all) CHECK(clear_of(a.position, r, contents, L, 1e-9 * L * 1.01));
        for (std::size_t k = 1; k < all.size(); ++k) {
          const auto& p = all[k - 1].quality;
          const auto& q = all[k].quality;
          CHECK((dir == QualityDirection::minimize ? !quality_less(q, p) : !quality_less(p, q)));
        }
      }
    }
  }
}

TEST_CASE("pack_one: first circle goes to the bottom-left corner of bin 1") {
  const auto d = pack_one({0, 1.5}, {}, {}, 10.0);
  CHECK(d.bin == 1);
  CHECK(d.center == Point{1.5, 1.5});
  CHECK(d.opened_bin);
}

TEST_CASE("pack_one opens a new bin when nothing fits") {
  BinContents bins;
  bins[1] = {circle_at(5, 5, 5, 0)};
  bins[2] = {circle_at(5, 5, 5, 1)};
  const auto d = pack_one({2, 1.0}, bins, {1, 2}, 10.0);
  CHECK(d.bin == 3);
  CHECK(d.center == Point{1, 1});
  CHECK(d.opened_bin);
}

TEST_CASE("pack_one: a fifth quarter-size circle cannot use the centre hole") {
  const double L = 8.0;
  const double r = L / 4;
  BinContents bins;
  bins[1] = {circle_at(r, r, r, 0), circle_at(r, L - r, r, 1), circle_at(L - r, r, r, 2),
             circle_at(L - r, L - r, r, 3)};
  CHECK(candidate_actions(r, bins[1], L).empty());
  const auto d = pack_one({4, r}, bins, {1}, L);
  CHECK(d.bin == 2);
  CHECK(d.center == Point{r, r});
}

TEST_CASE("gacoa_solve: eight quarter-size circles fill two bins at the corners") {
  const double L = 12.0;
  auto inst = make_instance(L, std::vector<double>(8, L / 4));
  const Layout layout = gacoa_solve(inst);
  CHECK(bins_used(layout) == 2);
  CHECK(validate(layout).ok());
  const std::vector<Point> corners{{3, 3}, {3, 9}, {9, 3}, {9, 9}};
  for (int bin : {1, 2}) {
    std::vector<Point> got;
    for (const auto& c : layout.circles_in_bin(bin)) got.push_back(c.center);
    std::sort(got.begin(), got.end(), point_less);
    CHECK(got == corners);
  }
}

TEST_CASE("gacoa_solve: half-size circles need one bin each") {
  auto inst = make_instance(6.0, std::vector<double>(5, 3.0));
  const Layout layout = gacoa_solve(inst);
  CHECK(bins_used(layout) == 5);
  CHECK(validate(layout).ok());
}

TEST_CASE("gacoa_solve: a single circle sits at (r, r) of bin 1") {
  auto inst = make_instance(10.0, {2.5});
  const Layout layout = gacoa_solve(inst);
  CHECK(layout.placement(0) == Placement{1, {2.5, 2.5}});
  CHECK(objective(layout) == -1.0);
}

TEST_CASE("packing_order is decreasing radius with ascending id ties") {
  auto inst = make_instance(20.0, {1, 3, 2, 3, 1});
  CHECK(packing_order(*inst, {0, 1, 2, 3, 4}) == std::vector<int>{1, 3, 2, 0, 4});
}

TEST_CASE("gacoa_solve properties on random instances") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = cbpp::testing::random_instance(gen);
    const double L = inst->bin_side();
    const Layout layout = gacoa_solve(inst);
    CHECK(validate(layout).ok());
    CHECK(layout.is_complete());
    CHECK(gacoa_solve(inst) == layout);

    // Replay in packing order: each placement is the greedy decision given the
    // circles already placed, and touches at least two walls or circles.
    std::vector<int> all(inst->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    BinContents bins;
    std::vector<int> order;
    double last_radius = INFINITY;
    for (int id : packing_order(*inst, all)) {
      const Circle& c = inst->circles()[static_cast<std::size_t>(id)];
      CHECK(c.radius <= last_radius);
      last_radius = c.radius;
      const auto d = pack_one(c, bins, order, L);
      CHECK(layout.placement(id) == Placement{d.bin, d.center});
      CHECK(contact_count(d.center, c.radius, bins[d.bin], L, 1e-9 * L) >= 2);
      bins[d.bin].push_back({id, c.radius, d.center, d.bin});
      if (d.opened_bin) order.push_back(d.bin);
    }
  }
}

TEST_CASE("gacoa_solve with the maximize reading still yields valid layouts") {
  std::mt19937_64 gen(4);
  GacoaOptions opt;
  opt.direction = QualityDirection::maximize;
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = cbpp::testing::random_instance(gen);
    CHECK(validate(gacoa_solve(inst, opt)).ok());
  }
}

TEST_CASE("gacoa_complete with nothing to place is the identity") {
  auto inst = make_instance(10.0, {1, 2, 3});
  const Layout layout = gacoa_solve(inst);
  const PartialLayout partial{layout, {}, {1, 1}};
  CHECK(gacoa_complete(partial) == layout);
}

TEST_CASE("gacoa_complete restores two bin-filling circles to their own bins") {
  auto inst = make_instance(4.0, {2.0, 2.0});
  Layout base(inst);
  PartialLayout partial{base, {0, 1}, {1, 2}};
  const Layout done = gacoa_complete(partial);
  CHECK(validate(done).ok());
  CHECK(bins_used(done) == 2);
  CHECK(done.placement(0) == Placement{1, {2, 2}});
  CHECK(done.placement(1) == Placement{2, {2, 2}});
}

TEST_CASE("gacoa_complete overflows to other bins and then to a fresh one") {
  const double L = 4.0;
  std::vector<double> radii(10, 1.0);
  radii[9] = 0.4;
  auto inst = make_instance(L, radii);
  Layout base(inst);
  const std::vector<Point> corners{{1, 1}, {1, 3}, {3, 1}, {3, 3}};
  for (int i = 0; i < 4; ++i) base.place(i, 1, corners[static_cast<std::size_t>(i)]);
  for (int i = 0; i < 4; ++i) base.place(4 + i, 2, corners[static_cast<std::size_t>(i)]);

  SUBCASE("another existing bin takes it") {
    base.place(9, 5, {0.4, 0.4});
    PartialLayout partial{base, {8}, {1, 2}};
    const Layout done = gacoa_complete(partial);
    CHECK(validate(done).ok());
    CHECK(done.placement(8).bin == 5);
  }
  SUBCASE("no existing bin fits, a fresh bin is opened") {
    base.place(9, 1, {2, 2});  // fits the centre hole of bin 1 (r < sqrt(2) - 1)
    PartialLayout partial{base, {8}, {1, 2}};
    const Layout done = gacoa_complete(partial);
    CHECK(validate(done).ok());
    CHECK(done.placement(8) == Placement{3, {1, 1}});
    CHECK(bins_used(done) == 3);
  }
}
