// relaypay: batch front end for the pricing experiments.
//
//   relaypay converge      --scenario FILE [--out DIR]
//   relaypay sweep-battery --scenario FILE [--reps N] [--seed S] [--out DIR]
//   relaypay simulate      --scenario FILE [--scheme NAME|all] [--seed S]
//                          [--seeds N] [--slots T] [--jobs J] [--out DIR]
//
// Output files land in --out, else $RELAYPAY_OUT_DIR, else ./out.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "relaypay/error.hpp"
#include "relaypay/experiments.hpp"

namespace fs = std::filesystem;
using namespace relaypay;

namespace {

struct Options {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<int> slots;
  std::string scheme = "all";
  std::optional<int> reps;
  int seeds = 1;
  unsigned jobs = 0;
  std::string out;
};

fs::path output_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("RELAYPAY_OUT_DIR"); env && *env) return env;
  return "out";
}

Scenario load(const Options& o) {
  Scenario s = load_scenario(o.scenario);
  if (o.seed) s.sim.seed.seed = *o.seed;
  if (o.slots) s.sim.slots = *o.slots;
  if (o.reps) s.reps = *o.reps;
  s.validate();
  return s;
}

void report(const fs::path& path) { std::cout << "wrote " << path.string() << "\n"; }

int converge(const Options& o) {
  const Scenario s = load(o);
  const ConvergeResult r = run_converge(s);
  const fs::path path = output_dir(o) / "converge.csv";
  write_csv(r.rows, path);
  report(path);
  std::cout << "PartSD  cost " << r.joint.decision.expected_cost << " after "
            << r.joint.outer_iterations << " rounds, mode " << to_string(r.joint.decision.mode)
            << "\nPartNSD cost " << r.fixed.expected_cost << ", mode " << to_string(r.fixed.mode)
            << "\n";
  return 0;
}

int sweep(const Options& o) {
  const Scenario s = load(o);
  const auto points = sweep_battery(s, default_battery_levels(s), s.reps, s.sim.seed);
  const fs::path path = output_dir(o) / "sweep_battery.csv";
  write_csv(sweep_rows(points, s.sim.seed.seed), path);
  report(path);
  return 0;
}

int simulate(const Options& o) {
  const Scenario s = load(o);
  std::vector<Scheme> schemes;
  if (o.scheme == "all") {
    schemes.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
  } else if (const auto one = parse_scheme(o.scheme)) {
    schemes.push_back(*one);
  } else {
    throw ValidationError("--scheme must be all, DT, PartNSD, PartSD, FullNSD or FullSD");
  }
  if (o.seeds < 1) throw ValidationError("--seeds must be >= 1");

  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < o.seeds; ++k) seeds.push_back(s.sim.seed.seed + static_cast<std::uint64_t>(k));
  const unsigned jobs = o.jobs > 0 ? o.jobs : std::max(1u, std::thread::hardware_concurrency());

  const SimulateOutput r = run_simulate(s, schemes, seeds, jobs);
  const fs::path dir = output_dir(o);
  write_csv(r.metrics, dir / "simulate_metrics.csv");
  report(dir / "simulate_metrics.csv");
  write_csv(r.trace, dir / "simulate_trace.csv");
  report(dir / "simulate_trace.csv");
  write_events(r.events, dir / "events.jsonl");
  report(dir / "events.jsonl");

  for (Scheme scheme : schemes) {
    double comm = 0.0;
    double battery = 0.0;
    for (const SimulateRun& run : r.runs) {
      if (run.scheme != scheme) continue;
      comm += static_cast<double>(run.result.metrics.comm_outages);
      battery += static_cast<double>(run.result.metrics.battery_outages);
    }
    const double n = static_cast<double>(seeds.size());
    std::cout << to_string(scheme) << ": mean comm outages " << comm / n
              << ", mean battery outages " << battery / n << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pricing and load sharing for cooperative uplink transmission"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", o.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "Base seed (default: sim.seed from the scenario)");
    cmd->add_option("--out", o.out, "Output directory (default: $RELAYPAY_OUT_DIR or ./out)");
  };

  CLI::App* conv = app.add_subcommand("converge", "Cost trace of the joint price/rate search");
  common(conv);

  CLI::App* sw = app.add_subcommand("sweep-battery", "Cost of every scheme versus battery level");
  common(sw);
  sw->add_option("--reps", o.reps, "Helper-set draws per level (default: sweep.reps)");

  CLI::App* sim = app.add_subcommand("simulate", "Multi-MT cell simulation");
  common(sim);
  sim->add_option("--scheme", o.scheme, "Scheme name or 'all'")->capture_default_str();
  sim->add_option("--seeds", o.seeds, "Number of consecutive seeds from --seed")->capture_default_str();
  sim->add_option("--slots", o.slots, "Slots per run (default: sim.slots)");
  sim->add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (conv->parsed()) return converge(o);
    if (sw->parsed()) return sweep(o);
    if (sim->parsed()) return simulate(o);
  } catch (const ParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
