#include "cbpp/alns.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "cbpp/format.hpp"

namespace cbpp {

void SolverConfig::check() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(initial_temperature > 0.0) || !std::isfinite(initial_temperature)) {
    throw std::invalid_argument("initial temperature must be positive and finite");
  }
  if (tolerance && !(*tolerance >= 0.0)) {
    throw std::invalid_argument("tolerance must be >= 0");
  }
}

Rect sample_rect(int bin, const Layout& layout, Rng& rng) {
  const double side = layout.instance().bin_side();
  Rect rect;
  rect.width = rng.random_real(side);
  rect.height = rng.random_real(side);
  const auto members = layout.circles_in_bin(bin);
  if (!members.empty()) {
    const auto& seed = members[rng.uniform_index(members.size())];
    rect.bottom_left = {seed.center.x - 0.5 * rect.width, seed.center.y - 0.5 * rect.height};
  }
  return rect;
}

PartialLayout generate_partial(const Layout& layout, Rng& rng) {
  const std::vector<int> bins = layout.nonempty_bins();
  int k1 = 0;
  int k2 = 0;
  if (bins.size() >= 2) {
    const auto i = rng.uniform_index(bins.size());
    auto j = rng.uniform_index(bins.size() - 1);
    if (j >= i) ++j;
    k1 = bins[i];
    k2 = bins[j];
  } else if (bins.size() == 1) {
    k1 = k2 = bins.front();
  }

  PartialLayout partial{layout, {}, {k1, k2}};
  if (bins.empty()) return partial;

  const Rect rect1 = sample_rect(k1, layout, rng);
  const Rect rect2 = sample_rect(k2, layout, rng);
  for (int bin_rect = 0; bin_rect < 2; ++bin_rect) {
    const int bin = bin_rect == 0 ? k1 : k2;
    const Rect& rect = bin_rect == 0 ? rect1 : rect2;
    for (const PlacedCircle& c : layout.circles_in_bin(bin)) {
      if (circle_rect_intersects(c, rect)) partial.unassigned.insert(c.id);
    }
  }
  for (int id : partial.unassigned) partial.base.unplace(id);
  return partial;
}

bool accept_move(double f_new, double f_old, double temperature, Rng& rng) {
  if (f_new > f_old) return true;
  if (!(temperature > 0.0)) return false;
  return rng.random_real(1.0) <= std::exp((f_new - f_old) / temperature);
}

double temperature_at(long iteration, long total, double initial_temperature) {
  return initial_temperature *
         (1.0 - static_cast<double>(iteration - 1) / static_cast<double>(total));
}

namespace {

SolveResult run_search(const InstancePtr& instance, const SolverConfig& config) {
  config.check();
  if (!instance) throw std::invalid_argument("solver: null instance");
  const auto start = std::chrono::steady_clock::now();
  const GacoaOptions gacoa = config.gacoa_options();
  Rng rng(config.seed);

  Layout current = gacoa_solve(instance, gacoa);
  double current_f = objective(current);
  SolveResult result{current, {}};
  double best_f = current_f;
  SearchStats& stats = result.stats;
  stats.best_objective_trace.push_back({0, best_f});

  const long total = config.iterations;
  for (long i = 1; i <= total; ++i) {
    const double theta = temperature_at(i, total, config.initial_temperature);
    const PartialLayout partial = generate_partial(current, rng);
    Layout candidate = gacoa_complete(partial, gacoa);
    const double candidate_f = objective(candidate);

    const bool improving = candidate_f > current_f;
    const bool accepted = config.acceptance == AcceptanceMode::annealing
                              ? accept_move(candidate_f, current_f, theta, rng)
                              : improving;

    if (candidate_f > best_f) {
      best_f = candidate_f;
      result.best = candidate;
      stats.best_objective_trace.push_back({i, best_f});
    }
    if (accepted) {
      ++stats.acceptances;
      if (improving) ++stats.improvements;
      current = std::move(candidate);
      current_f = candidate_f;
    } else {
      ++stats.rejections;
    }
    ++stats.iterations_run;

    if (config.observer) {
      const Layout& shown = accepted ? current : candidate;
      config.observer({i, theta, candidate_f, current_f, accepted, &shown});
    }
  }

  stats.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

SolveResult alns_solve(const InstancePtr& instance, const SolverConfig& config) {
  if (config.acceptance != AcceptanceMode::annealing) {
    SolverConfig copy = config;
    copy.acceptance = AcceptanceMode::annealing;
    return run_search(instance, copy);
  }
  return run_search(instance, config);
}

SolveResult lns_solve(const InstancePtr& instance, SolverConfig config) {
  config.acceptance = AcceptanceMode::improvement;
  return run_search(instance, config);
}

std::string stats_to_json(const SearchStats& stats) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& p : stats.best_objective_trace) {
    trace.push_back({{"iteration", p.iteration}, {"f", p.objective}});
  }
  nlohmann::json j = {{"iterations_run", stats.iterations_run},
                      {"acceptances", stats.acceptances},
                      {"rejections", stats.rejections},
                      {"improvements", stats.improvements},
                      {"best_objective_trace", trace},
                      {"wall_time", stats.wall_time_seconds}};
  return j.dump(2) + "\n";
}

std::string trace_to_csv(const SearchStats& stats) {
  std::string out = "iteration,f\n";
  for (const auto& p : stats.best_objective_trace) {
    out += std::to_string(p.iteration);
    out += ',';
    out += format_double(p.objective);
    out += '\n';
  }
  return out;
}

}  // namespace cbpp
