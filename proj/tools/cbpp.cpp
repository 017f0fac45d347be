// cbpp: command-line front end for the circle bin packing kit.
//
// Exit codes: 0 success, 1 domain failure (invalid layout, invariant
// violation, unreadable file), 2 usage error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cbpp/alns.hpp"
#include "cbpp/benchgen.hpp"
#include "cbpp/format.hpp"
#include "cbpp/gacoa.hpp"
#include "cbpp/io.hpp"
#include "cbpp/model.hpp"
#include "cbpp/render.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveOutcome {
  cbpp::Layout layout;
  cbpp::SearchStats stats;
};

SolveOutcome run_algorithm(const std::string& alg, const cbpp::InstancePtr& instance,
                           long iters, double temp, std::uint64_t seed,
                           cbpp::QualityDirection direction) {
  if (alg == "gacoa") {
    const auto start = std::chrono::steady_clock::now();
    cbpp::GacoaOptions options;
    options.direction = direction;
    cbpp::Layout layout = cbpp::gacoa_solve(instance, options);
    cbpp::SearchStats stats;
    stats.best_objective_trace.push_back({0, cbpp::objective(layout)});
    stats.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(layout), std::move(stats)};
  }
  cbpp::SolverConfig config;
  config.iterations = iters;
  config.initial_temperature = temp;
  config.seed = seed;
  config.quality_direction = direction;
  auto result = alg == "lns" ? cbpp::lns_solve(instance, config)
                             : cbpp::alns_solve(instance, config);
  return {std::move(result.best), std::move(result.stats)};
}

cbpp::QualityDirection parse_direction(const std::string& s) {
  return s == "max" ? cbpp::QualityDirection::maximize : cbpp::QualityDirection::minimize;
}

cbpp::InstancePtr load_instance_opt(const std::string& path) {
  if (path.empty()) return nullptr;
  return std::make_shared<const cbpp::Instance>(cbpp::read_instance(path));
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string law = "linear";
  int n0 = 8;
  std::string mode = "fixed";
  std::optional<double> bin_side;
  std::string bin_sides;
  std::string spec_file;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, const CLI::App& sub) {
  cbpp::BenchmarkSpec spec;
  std::string law = a.law;
  std::string mode = a.mode;
  int n0 = a.n0;
  std::optional<double> side = a.bin_side;
  std::uint64_t seed = a.seed;

  if (!a.spec_file.empty()) {
    // Config block values apply unless the same flag was given explicitly.
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(cbpp::read_text_file(a.spec_file));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(a.spec_file + ": " + e.what());
    }
    if (j.contains("law") && sub.count("--law") == 0) law = j["law"].get<std::string>();
    if (j.contains("mode") && sub.count("--mode") == 0) mode = j["mode"].get<std::string>();
    if (j.contains("n0") && sub.count("--n0") == 0) n0 = j["n0"].get<int>();
    if (j.contains("bin_side") && !side) side = j["bin_side"].get<double>();
    if (j.contains("seed") && sub.count("--seed") == 0) seed = j["seed"].get<std::uint64_t>();
  }

  try {
    spec.law = cbpp::parse_law(law);
    spec.mode = cbpp::parse_mode(mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (n0 < 1) throw UsageError("--n0 must be >= 1");
  spec.n0 = n0;
  spec.seed = seed;
  if (!side && !a.bin_sides.empty()) side = cbpp::lookup_bin_side(a.bin_sides, spec.law, n0);
  if (!side) {
    throw UsageError("no bin side: pass --bin-side or a --bin-sides table with an entry for " +
                     std::string(cbpp::to_string(spec.law)) + " n0=" + std::to_string(n0));
  }
  spec.bin_side = *side;

  const cbpp::Instance instance = cbpp::generate(spec);
  cbpp::write_instance(instance, a.out);
  std::cout << "wrote " << a.out << ": n=" << instance.size() << " L=" << instance.bin_side()
            << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string input;
  std::string alg = "alns";
  long iters = 2'000'000;
  double temp = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
  std::string stats;
  std::string quality = "min";
};

int cmd_solve(const SolveArgs& a) {
  if (a.iters < 1) throw UsageError("--iters must be >= 1");
  if (!(a.temp > 0.0)) throw UsageError("--temp must be > 0");
  const auto instance = load_instance_opt(a.input);
  SolveOutcome outcome =
      run_algorithm(a.alg, instance, a.iters, a.temp, a.seed, parse_direction(a.quality));

  const cbpp::ValidationReport report = cbpp::validate(outcome.layout);
  if (!report.ok()) {
    std::cerr << "internal error: solver produced an invalid layout\n" << report.summary();
    return kExitDomain;
  }
  cbpp::write_text_file(a.out, cbpp::solution_to_json(outcome.layout));
  if (!a.trace.empty()) cbpp::write_text_file(a.trace, cbpp::trace_to_csv(outcome.stats));
  if (!a.stats.empty()) cbpp::write_text_file(a.stats, cbpp::stats_to_json(outcome.stats));

  const cbpp::Metrics m = cbpp::compute_metrics(outcome.layout);
  std::cout << a.alg << ": K=" << m.bins_used << " f=" << cbpp::format_double(m.objective)
            << " time=" << outcome.stats.wall_time_seconds << "s\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate / render

int cmd_validate(const std::string& input, const std::string& instance_path) {
  const cbpp::Layout layout = cbpp::read_solution(input, load_instance_opt(instance_path));
  const cbpp::ValidationReport report = cbpp::validate(layout);
  if (report.ok()) {
    std::cout << "OK\n";
    return kExitOk;
  }
  std::cout << report.violations.size() << " violation(s):\n" << report.summary();
  return kExitDomain;
}

int cmd_render(const std::string& input, const std::string& out, const std::string& instance_path,
               const cbpp::RenderOptions& options) {
  if (!(options.pixels_per_unit > 0.0)) throw UsageError("--scale must be > 0");
  if (options.bins_per_row < 1) throw UsageError("--per-row must be >= 1");
  const cbpp::Layout layout = cbpp::read_solution(input, load_instance_opt(instance_path));
  try {
    cbpp::write_text_file(out, cbpp::render_svg(layout, options));
  } catch (const cbpp::InvalidLayoutError& e) {
    std::cerr << e.what();
    return kExitDomain;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string dir;
  std::vector<std::string> algs{"gacoa", "alns"};
  long iters = 2'000'000;
  double temp = 1.0;
  std::vector<std::uint64_t> seeds{0};
  std::string out;
  unsigned jobs = 0;
};

int cmd_compare(const CompareArgs& a) {
  if (a.iters < 1) throw UsageError("--iters must be >= 1");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no *.json instances in " + a.dir);

  struct Job {
    std::size_t instance;
    std::string alg;
    std::optional<std::uint64_t> seed;
  };
  std::vector<cbpp::InstancePtr> instances;
  std::vector<std::string> failures;
  for (const auto& f : files) {
    try {
      instances.push_back(load_instance_opt(f.string()));
    } catch (const cbpp::ParseError& e) {
      instances.push_back(nullptr);
      failures.push_back(e.what());
    }
  }

  std::vector<Job> jobs;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!instances[i]) continue;
    for (const auto& alg : a.algs) {
      if (alg == "gacoa") {
        jobs.push_back({i, alg, std::nullopt});  // deterministic: one run suffices
      } else {
        for (auto s : a.seeds) jobs.push_back({i, alg, s});
      }
    }
  }

  std::vector<std::optional<cbpp::ComparisonRow>> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job& job = jobs[k];
      const std::string label = files[job.instance].stem().string();
      try {
        SolveOutcome o = run_algorithm(job.alg, instances[job.instance], a.iters, a.temp,
                                       job.seed.value_or(0), cbpp::QualityDirection::minimize);
        const auto report = cbpp::validate(o.layout);
        const cbpp::Metrics m = cbpp::compute_metrics(o.layout);
        if (!report.ok()) {
          std::lock_guard lock(mu);
          failures.push_back(label + " " + job.alg + ": invalid layout\n" + report.summary());
          continue;
        }
        rows[k] = cbpp::ComparisonRow{label,       job.alg,         job.seed,
                                      m.objective, m.bins_used,     m.bin_densities,
                                      o.stats.wall_time_seconds};
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        failures.push_back(label + " " + job.alg + ": " + e.what());
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(a.jobs ? a.jobs : std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(jobs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  std::vector<cbpp::ComparisonRow> done;
  for (auto& r : rows) {
    if (r) done.push_back(std::move(*r));
  }
  cbpp::write_text_file(a.out, cbpp::emit_comparison_csv(done));

  double diff_sum = 0.0;
  int diff_count = 0;
  std::vector<std::string> reductions;
  for (const auto& g : done) {
    if (g.algorithm != "gacoa") continue;
    for (const auto& r : done) {
      if (r.algorithm != "alns" || r.instance != g.instance) continue;
      diff_sum += r.objective - g.objective;
      ++diff_count;
      if (r.bins_used < g.bins_used &&
          std::find(reductions.begin(), reductions.end(), r.instance) == reductions.end()) {
        reductions.push_back(r.instance);
      }
    }
  }
  std::cout << "rows: " << done.size();
  if (diff_count > 0) {
    std::cout << "  mean f_A - f_G: " << cbpp::format_double(diff_sum / diff_count) << " over "
              << diff_count << " run(s)";
  }
  std::cout << "  bin reduction:";
  if (reductions.empty()) std::cout << " none";
  for (const auto& r : reductions) std::cout << ' ' << r;
  std::cout << '\n';
  for (const auto& f : failures) std::cerr << "FAILED " << f << '\n';
  return failures.empty() ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circle bin packing: generate, solve, validate, render, compare"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a benchmark instance");
  g->add_option("--law", gen.law, "Radius law")->check(CLI::IsMember({"linear", "sqrt"}));
  g->add_option("--n0", gen.n0, "Number of distinct radii");
  g->add_option("--mode", gen.mode, "Copies per radius")->check(CLI::IsMember({"fixed", "random"}));
  g->add_option("--bin-side", gen.bin_side, "Bin side length L");
  g->add_option("--bin-sides", gen.bin_sides, "JSON table of L per (law, n0)")
      ->check(CLI::ExistingFile);
  g->add_option("--spec", gen.spec_file, "JSON config block {law, n0, mode, bin_side, seed}")
      ->check(CLI::ExistingFile);
  g->add_option("--seed", gen.seed, "Seed for random mode")->envname("CBPP_SEED");
  g->add_option("-o,--output", gen.out, "Instance JSON path")->required();

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve an instance");
  s->add_option("-i,--input", sol.input, "Instance JSON")->required()->check(CLI::ExistingFile);
  s->add_option("--alg", sol.alg, "Algorithm")->check(CLI::IsMember({"gacoa", "lns", "alns"}));
  s->add_option("--iters", sol.iters, "Iteration budget N");
  s->add_option("--temp", sol.temp, "Initial temperature");
  s->add_option("--seed", sol.seed, "RNG seed")->envname("CBPP_SEED");
  s->add_option("-o,--output", sol.out, "Solution JSON path")->required();
  s->add_option("--trace", sol.trace, "Best-objective trace CSV path");
  s->add_option("--stats", sol.stats, "Search statistics JSON path");
  s->add_option("--quality", sol.quality, "Candidate preference")
      ->check(CLI::IsMember({"min", "max"}));

  std::string val_in, val_instance;
  auto* v = app.add_subcommand("validate", "Check a solution file");
  v->add_option("-i,--input", val_in, "Solution JSON")->required()->check(CLI::ExistingFile);
  v->add_option("--instance", val_instance, "Instance JSON if not embedded")
      ->check(CLI::ExistingFile);

  std::string ren_in, ren_out, ren_instance;
  cbpp::RenderOptions ren_opts;
  bool no_labels = false;
  auto* r = app.add_subcommand("render", "Draw a solution as SVG");
  r->add_option("-i,--input", ren_in, "Solution JSON")->required()->check(CLI::ExistingFile);
  r->add_option("-o,--output", ren_out, "SVG path")->required();
  r->add_option("--scale", ren_opts.pixels_per_unit, "Pixels per length unit");
  r->add_option("--per-row", ren_opts.bins_per_row, "Bins per row");
  r->add_flag("--no-labels", no_labels, "Omit density labels");
  r->add_option("--instance", ren_instance, "Instance JSON if not embedded")
      ->check(CLI::ExistingFile);

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Run algorithms over a directory of instances");
  c->add_option("--dir", cmp.dir, "Directory of instance JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  c->add_option("--algs", cmp.algs, "Algorithms")
      ->delimiter(',')
      ->check(CLI::IsMember({"gacoa", "lns", "alns"}));
  c->add_option("--iters", cmp.iters, "Iteration budget N");
  c->add_option("--temp", cmp.temp, "Initial temperature");
  c->add_option("--seeds", cmp.seeds, "Seeds for the stochastic algorithms")->delimiter(',');
  c->add_option("--jobs", cmp.jobs, "Worker threads (default: hardware)");
  c->add_option("-o,--output", cmp.out, "Comparison CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen, *g);
    if (*s) return cmd_solve(sol);
    if (*v) return cmd_validate(val_in, val_instance);
    if (*r) {
      ren_opts.label_densities = !no_labels;
      return cmd_render(ren_in, ren_out, ren_instance, ren_opts);
    }
    if (*c) return cmd_compare(cmp);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
