#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "json.hpp"

#include "cbpp/alns.hpp"
#include "test_support.hpp"

using namespace cbpp;
using cbpp::testing::make_instance;

namespace {

SolverConfig small_config(long iterations, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.iterations = iterations;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("sample_rect in an empty bin sits at the origin") {
  auto inst = make_instance(10.0, {1.0});
  Layout layout(inst);
  layout.place(0, 1, {1, 1});
  Rng rng(5);
  Rng mirror = rng;
  const Rect r = sample_rect(7, layout, rng);
  CHECK(r.bottom_left == Point{0, 0});
  CHECK(r.width == mirror.random_real(10.0));
  CHECK(r.height == mirror.random_real(10.0));
  CHECK(rng.next_u64() == mirror.next_u64());
}

TEST_CASE("sample_rect is centred on the chosen circle") {
  auto inst = make_instance(10.0, {1.0});
  Layout layout(inst);
  layout.place(0, 1, {4, 5});
  Rng rng(11);
  Rng mirror = rng;
  const Rect r = sample_rect(1, layout, rng);
  const double w = mirror.random_real(10.0);
  const double h = mirror.random_real(10.0);
  CHECK(mirror.uniform_index(1) == 0);
  CHECK(r.width == w);
  CHECK(r.height == h);
  CHECK(r.bottom_left.x == doctest::Approx(4 - w / 2).epsilon(1e-15));
  CHECK(r.bottom_left.y == doctest::Approx(5 - h / 2).epsilon(1e-15));
}

TEST_CASE("sample_rect dimensions lie in (0, L]") {
  auto inst = make_instance(3.0, {1.0});
  Layout layout(inst);
  layout.place(0, 1, {1, 1});
  Rng rng(1);
  for (int k = 0; k < 20000; ++k) {
    const Rect r = sample_rect(1, layout, rng);
    CHECK(r.width > 0.0);
    CHECK(r.width <= 3.0);
    CHECK(r.height > 0.0);
    CHECK(r.height <= 3.0);
    CHECK(circle_rect_intersects({0, 1.0, {1, 1}, 1}, r));
  }
}

TEST_CASE("generate_partial always removes something and keeps the rest") {
  std::mt19937_64 gen(3);
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = cbpp::testing::random_instance(gen);
    const Layout layout = gacoa_solve(inst);
    for (int rep = 0; rep < 10; ++rep) {
      const PartialLayout p = generate_partial(layout, rng);
      CHECK_FALSE(p.unassigned.empty());
      const auto [k1, k2] = p.perturbed_bins;
      if (bins_used(layout) >= 2) CHECK(k1 != k2);
      for (std::size_t i = 0; i < inst->size(); ++i) {
        const int id = static_cast<int>(i);
        if (p.unassigned.count(id)) {
          CHECK_FALSE(p.base.placement(id).placed());
          const int bin = layout.placement(id).bin;
          CHECK((bin == k1 || bin == k2));
        } else {
          CHECK(p.base.placement(id) == layout.placement(id));
        }
      }
    }
  }
}

TEST_CASE("generate_partial follows the documented draw order") {
  auto inst = make_instance(10.0, {1, 1, 1, 1});
  Layout layout(inst);
  layout.place(0, 1, {1, 1});
  layout.place(1, 2, {1, 1});
  layout.place(2, 2, {3, 1});
  layout.place(3, 4, {1, 1});
  Rng rng(2024);
  Rng mirror = rng;
  const PartialLayout p = generate_partial(layout, rng);

  const std::vector<int> bins{1, 2, 4};
  const auto i = mirror.uniform_index(3);
  auto j = mirror.uniform_index(2);
  if (j >= i) ++j;
  CHECK(p.perturbed_bins == std::pair<int, int>{bins[i], bins[j]});
  const Rect r1 = sample_rect(bins[i], layout, mirror);
  const Rect r2 = sample_rect(bins[j], layout, mirror);
  std::set<int> expected;
  for (const auto& [bin, rect] : {std::pair{bins[i], r1}, std::pair{bins[j], r2}}) {
    for (const auto& c : layout.circles_in_bin(bin)) {
      if (circle_rect_intersects(c, rect)) expected.insert(c.id);
    }
  }
  CHECK(p.unassigned == expected);
  CHECK(rng.next_u64() == mirror.next_u64());
}

TEST_CASE("generate_partial with one bin samples it twice") {
  auto inst = make_instance(10.0, {1, 1, 1});
  const Layout layout = gacoa_solve(inst);
  REQUIRE(bins_used(layout) == 1);
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const PartialLayout p = generate_partial(layout, rng);
    CHECK(p.perturbed_bins == std::pair<int, int>{1, 1});
    CHECK_FALSE(p.unassigned.empty());
  }
}

TEST_CASE("a rectangle covering the whole bin removes all its circles") {
  auto inst = make_instance(10.0, {2, 1, 1, 1});
  const Layout layout = gacoa_solve(inst);
  const Rect all{{-0.5, -0.5}, 11.0, 11.0};
  for (const auto& c : layout.circles_in_bin(1)) CHECK(circle_rect_intersects(c, all));
}

TEST_CASE("accept_move examples") {
  Rng rng(1);
  CHECK(accept_move(-3, -4, 1.0, rng));
  CHECK(accept_move(-3, -4, 1e-9, rng));
  for (int k = 0; k < 1000; ++k) CHECK(accept_move(-2.5, -2.5, 0.3, rng));

  // Strict improvement consumes no draw.
  Rng a(77);
  Rng b(77);
  accept_move(0.0, -1.0, 1.0, a);
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("accept_move rates match the annealing probability") {
  struct Case {
    double delta, theta;
  };
  for (const Case c : {Case{-0.5, 1.0}, Case{-1.0, 0.5}}) {
    Rng rng(123);
    const int trials = 100000;
    int hits = 0;
    for (int k = 0; k < trials; ++k) hits += accept_move(c.delta, 0.0, c.theta, rng) ? 1 : 0;
    const double expected = std::exp(c.delta / c.theta);
    CHECK(std::abs(static_cast<double>(hits) / trials - expected) < 0.01);
  }
}

TEST_CASE("temperature_at follows the linear schedule") {
  CHECK(temperature_at(1, 10, 2.0) == 2.0);
  CHECK(temperature_at(10, 10, 2.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(temperature_at(10, 10, 2.0) > 0.0);
}

TEST_CASE("SolverConfig rejects N = 0 and non-positive temperatures") {
  auto inst = make_instance(10.0, {1.0});
  CHECK_THROWS_AS(alns_solve(inst, small_config(0, 1)), std::invalid_argument);
  SolverConfig cold = small_config(5, 1);
  cold.initial_temperature = 0.0;
  CHECK_THROWS_AS(alns_solve(inst, cold), std::invalid_argument);
}

TEST_CASE("alns_solve with N = 1 runs one iteration") {
  auto inst = make_instance(10.0, {1, 2, 3, 2});
  const auto res = alns_solve(inst, small_config(1, 3));
  CHECK(res.stats.iterations_run == 1);
  CHECK(res.stats.acceptances + res.stats.rejections == 1);
  CHECK(validate(res.best).ok());
}

TEST_CASE("alns_solve on a single circle keeps the greedy layout") {
  auto inst = make_instance(10.0, {3.0});
  const auto res = alns_solve(inst, small_config(50, 8));
  CHECK(res.best == gacoa_solve(inst));
  CHECK(objective(res.best) == -1.0);
}

TEST_CASE("alns_solve on eight quarter-size circles keeps two bins") {
  auto inst = make_instance(8.0, std::vector<double>(8, 2.0));
  const auto res = alns_solve(inst, small_config(1000, 5));
  CHECK(bins_used(res.best) == 2);
  CHECK(validate(res.best).ok());
  CHECK(objective(res.best) >= objective(gacoa_solve(inst)));
}

TEST_CASE("alns_solve per-iteration properties") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 8; ++trial) {
    auto inst = cbpp::testing::random_instance(gen, 3, 8);
    SolverConfig cfg = small_config(150, 100 + static_cast<std::uint64_t>(trial));
    cfg.initial_temperature = 0.7;
    long seen = 0;
    bool all_valid = true;
    bool all_complete = true;
    double worst_rel = 0.0;
    double min_theta = INFINITY;
    cfg.observer = [&](const IterationRecord& rec) {
      ++seen;
      CHECK(rec.iteration == seen);
      const double expected = 0.7 * (1.0 - static_cast<double>(rec.iteration - 1) / 150.0);
      worst_rel = std::max(worst_rel, std::abs(rec.temperature - expected) / expected);
      min_theta = std::min(min_theta, rec.temperature);
      all_complete = all_complete && rec.candidate->is_complete();
      all_valid = all_valid && validate(*rec.candidate).ok();
    };
    const auto res = alns_solve(inst, cfg);
    CHECK(seen == 150);
    CHECK(all_valid);
    CHECK(all_complete);
    CHECK(worst_rel <= 1e-12);
    CHECK(min_theta > 0.0);

    const auto& trace = res.stats.best_objective_trace;
    REQUIRE_FALSE(trace.empty());
    CHECK(trace.front().iteration == 0);
    CHECK(trace.front().objective == objective(gacoa_solve(inst)));
    for (std::size_t k = 1; k < trace.size(); ++k) {
      CHECK(trace[k].objective > trace[k - 1].objective);
      CHECK(trace[k].iteration > trace[k - 1].iteration);
    }
    CHECK(trace.back().objective == objective(res.best));
    CHECK(res.stats.acceptances + res.stats.rejections == res.stats.iterations_run);
    CHECK(objective(res.best) >= objective(gacoa_solve(inst)));
  }
}

TEST_CASE("alns_solve is deterministic for a fixed seed") {
  std::mt19937_64 gen(12);
  auto inst = cbpp::testing::random_instance(gen, 6, 10);
  const auto a = alns_solve(inst, small_config(300, 77));
  const auto b = alns_solve(inst, small_config(300, 77));
  CHECK(a.best == b.best);
  CHECK(trace_to_csv(a.stats) == trace_to_csv(b.stats));
  CHECK(a.stats.acceptances == b.stats.acceptances);
  CHECK(a.stats.improvements == b.stats.improvements);
}

TEST_CASE("lns_solve accepts improvements only") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 6; ++trial) {
    auto inst = cbpp::testing::random_instance(gen, 4, 10);
    SolverConfig cfg = small_config(200, 9);
    double last_current = -INFINITY;
    bool monotone = true;
    cfg.observer = [&](const IterationRecord& rec) {
      monotone = monotone && rec.current_objective >= last_current;
      last_current = rec.current_objective;
    };
    const auto res = lns_solve(inst, cfg);
    CHECK(monotone);
    CHECK(res.stats.acceptances == res.stats.improvements);
    CHECK(objective(res.best) >= objective(gacoa_solve(inst)));
  }
}

TEST_CASE("stats JSON and trace CSV") {
  auto inst = make_instance(10.0, {1, 2, 3, 2, 1, 4});
  const auto res = alns_solve(inst, small_config(40, 2));
  const auto j = nlohmann::json::parse(stats_to_json(res.stats));
  CHECK(j.at("iterations_run") == 40);
  CHECK(j.at("acceptances").get<long>() + j.at("rejections").get<long>() == 40);
  CHECK(j.at("best_objective_trace").size() == res.stats.best_objective_trace.size());
  CHECK(j.contains("wall_time"));

  const std::string csv = trace_to_csv(res.stats);
  CHECK(csv.rfind("iteration,f\n0,", 0) == 0);
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == static_cast<long>(res.stats.best_objective_trace.size()) + 1);
}
