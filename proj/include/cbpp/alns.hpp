#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbpp/gacoa.hpp"
#include "cbpp/model.hpp"
#include "cbpp/rng.hpp"

namespace cbpp {

enum class AcceptanceMode {
  annealing,   // ALNS: improvements, or worse moves with probability exp(df / theta)
  improvement  // LNS: strict improvements only
};

struct IterationRecord {
  long iteration = 0;  // 1-based
  double temperature = 0.0;
  double candidate_objective = 0.0;
  double current_objective = 0.0;  // after the acceptance decision
  bool accepted = false;
  const Layout* candidate = nullptr;  // valid during the callback only
};

struct SolverConfig {
  long iterations = 2'000'000;
  double initial_temperature = 1.0;
  std::uint64_t seed = 0;
  /// Absolute feasibility tolerance; 1e-9 * L when unset.
  std::optional<double> tolerance;
  QualityDirection quality_direction = QualityDirection::minimize;
  AcceptanceMode acceptance = AcceptanceMode::annealing;
  /// Called once per iteration after the acceptance decision.
  std::function<void(const IterationRecord&)> observer;

  /// Throws std::invalid_argument unless iterations >= 1 and temperature > 0.
  void check() const;
  GacoaOptions gacoa_options() const { return {tolerance, quality_direction}; }
};

struct TracePoint {
  long iteration = 0;
  double objective = 0.0;
};

struct SearchStats {
  long iterations_run = 0;
  long acceptances = 0;
  long rejections = 0;
  long improvements = 0;  // accepted moves with strictly larger f
  std::vector<TracePoint> best_objective_trace;  // iteration 0 is the initial layout
  double wall_time_seconds = 0.0;
};

struct SolveResult {
  Layout best;
  SearchStats stats;
};

/// Random rectangle for destroying part of `bin`. Width and height are drawn
/// from (0, L] in that order; for a non-empty bin a circle is then picked
/// uniformly and the rectangle is centred on it, otherwise it sits at (0, 0).
Rect sample_rect(int bin, const Layout& layout, Rng& rng);

/// Destroy step. Picks two distinct non-empty bins (k1, k2), or the only bin
/// twice when K = 1, samples one rectangle per pick, and unassigns every
/// circle of that bin whose envelope box intersects its rectangle.
///
/// Draw order: k1, k2, then (w, h, circle) for k1, then (w, h, circle) for k2.
PartialLayout generate_partial(const Layout& layout, Rng& rng);

/// Simulated-annealing acceptance. The uniform draw in (0, 1] is consumed only
/// when f_new <= f_old.
bool accept_move(double f_new, double f_old, double temperature, Rng& rng);

/// Temperature used at 1-based iteration i: theta0 * (1 - (i - 1) / N).
double temperature_at(long iteration, long total, double initial_temperature);

/// Destroy/repair search from the greedy layout. Returns the best complete
/// layout seen over the run, accepted or not, including the initial one.
SolveResult alns_solve(const InstancePtr& instance, const SolverConfig& config);

/// Same loop with improvement-only acceptance.
SolveResult lns_solve(const InstancePtr& instance, SolverConfig config);

std::string stats_to_json(const SearchStats& stats);
/// "iteration,f" rows of the best-objective trace.
std::string trace_to_csv(const SearchStats& stats);

}  // namespace cbpp
