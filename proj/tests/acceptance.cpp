// Acceptance checks, one PASS/FAIL line per criterion.
//
//   relaypay_acceptance               run all nine
//   relaypay_acceptance --criterion N run one
//
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "relaypay/experiments.hpp"
#include "relaypay/full_coop.hpp"
#include "relaypay/partial_coop.hpp"
#include "relaypay/stochastic.hpp"

using namespace relaypay;

namespace {

const std::string kDir = RELAYPAY_SCENARIO_DIR;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// Independent oracles: plain pow() forms, no library helpers.

double shannon_energy(double D, double g, double sigma2) {
  return sigma2 / g * (std::pow(2.0, D) - 1.0);
}

double poisson_sum(double mu, double p) {
  if (mu == 0.0) return 0.0;
  double log_pmf = -mu;
  double total = 0.0;
  for (int n = 1; n <= 1000; ++n) {
    log_pmf += std::log(mu) - std::log(static_cast<double>(n));
    const double pmf = std::exp(log_pmf);
    total += pmf * (1.0 - std::pow(1.0 - p, n));
    if (n > mu && pmf < 1e-18) break;
  }
  return total;
}

// Single-source unit conventions shared by criteria 3 and 4.
struct Instance {
  SourceProfile src;
  UncertaintyModel u;
};

Instance random_instance(Rng& rng, const Scenario& base) {
  const ChannelParams ch = base.effective_channel();
  const double G = path_gain(ch, rng.uniform(20.0, 70.0));
  Instance in;
  in.src = {unit_energy_cost(rng.uniform(0.0, 90.0), base.sim.econ), rng.uniform(0.2, 2.0) * G,
            rng.uniform(2.0, 6.0)};
  in.u = {rng.uniform(0.5, 5.0), base.sim.econ.zeta_max, G, ch.sigma2, base.sim.econ.epsilon};
  return in;
}

double window_hi(const Instance& in, double D_r) {
  return source_breakdown(in.src, D_r, in.u.sigma2, in.u.epsilon).window_hi;
}

// Criterion 1: closed-form split vs a 1e-3 grid on the same objective.
Verdict split_optimality() {
  Rng rng(1001, 0);
  const double sigma2 = 1.0;
  int worse = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 1000; ++k) {
    const double zi = rng.uniform(), zj = rng.uniform();
    const double ei = rng.uniform(0.05, 2.0), ej = rng.uniform(0.05, 2.0);
    const double D = rng.uniform(0.1, 8.0);
    const Party src{zi, LinkGain::make(1.0, ei)};
    const Party hlp{zj, LinkGain::make(1.0, ej)};
    const double cost = pair_cost(src, hlp, D, sigma2).pair_cost;

    const auto objective = [&](double x) {
      return zj * shannon_energy(x, ej, sigma2) + zi * shannon_energy(D - x, ei, sigma2);
    };
    double grid = objective(D);
    const int n = static_cast<int>(std::floor(D / 1e-3));
    for (int m = 0; m <= n; ++m) grid = std::min(grid, objective(m * 1e-3));

    worst = std::max(worst, cost - grid);
    worse += cost > grid + 1e-9;
  }
  return {worse == 0, format("%d/1000 above grid+1e-9, max(cost - grid) = %.3g", worse, worst)};
}

// Criterion 2: closed-form association probability vs the truncated sum.
Verdict poisson_identity() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double mu = 20.0 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double p = j / 49.0;
      worst = std::max(worst, std::abs(association_probability(mu, p) - poisson_sum(mu, p)));
    }
  }
  return {worst <= 1e-10, format("mu in [0, 20], p in [0, 1]: max |diff| = %.3g", worst)};
}

// Criterion 3: second differences along pi and D_r at random feasible points.
Verdict marginal_convexity() {
  const Scenario base = load_scenario(kDir + "/single_source.scn");
  Rng rng(1003, 0);
  int points = 0, bad_pi = 0, bad_dr = 0, draws = 0;
  double min_pi = 0.0, min_dr = 0.0;
  while (points < 500 && draws < 1000000) {
    ++draws;
    const Instance in = random_instance(rng, base);
    const double h_dr = 1e-3 * in.src.D_i;
    const double D_r = rng.uniform(2.0 * h_dr, in.src.D_i - h_dr);
    const double hi = window_hi(in, D_r - h_dr);  // window grows with D_r
    const double eps = in.u.epsilon;
    if (!(hi - eps > 1e-2)) continue;
    const double h_pi = 1e-3 * (hi - eps);
    const double pi = rng.uniform(eps + h_pi, hi - h_pi);

    const auto f = [&](double x, double y) { return expected_cost(x, y, in.src, in.u); };
    const double c = f(pi, D_r);
    const double d_pi = f(pi + h_pi, D_r) - 2.0 * c + f(pi - h_pi, D_r);
    const double d_dr = f(pi, D_r + h_dr) - 2.0 * c + f(pi, D_r - h_dr);
    bad_pi += d_pi < -1e-8;
    bad_dr += d_dr < -1e-8;
    min_pi = std::min(min_pi, d_pi);
    min_dr = std::min(min_dr, d_dr);
    ++points;
  }
  return {points == 500 && bad_pi == 0 && bad_dr == 0,
          format("%d points; negative second differences: pi %d (min %.3g), D_r %d (min %.3g)",
                 points, bad_pi, min_pi, bad_dr, min_dr)};
}

// Criterion 4: alternating search vs an exhaustive (0.2, 0.1) grid.
Verdict joint_vs_grid() {
  const Scenario base = load_scenario(kDir + "/single_source.scn");
  const AlgorithmConfig cfg = base.sim.alg;
  Rng rng(1004, 0);
  int instances = 0, mismatched = 0, nonmonotone = 0, slow = 0, max_outer = 0;
  double worst_gap = 0.0;
  while (instances < 25) {
    const Instance in = random_instance(rng, base);
    const double eps = in.u.epsilon;
    if (!(window_hi(in, in.src.D_i) > eps + 0.4)) continue;
    ++instances;

    const JointSearch j = optimize_joint(in.src, in.u, cfg);
    bool monotone = j.trace.front() == j.decision.direct_cost;
    for (std::size_t k = 1; k < j.trace.size(); ++k) monotone &= j.trace[k] <= j.trace[k - 1];
    nonmonotone += !monotone;
    slow += j.outer_iterations > 50;
    max_outer = std::max(max_outer, j.outer_iterations);

    // Grid nodes pi = eps + 0.2 a, D_r = 0.1 b; infeasible nodes are NaN.
    const int nb = static_cast<int>(std::floor(in.src.D_i / 0.1 + 1e-9));
    const int na = static_cast<int>(std::floor((window_hi(in, in.src.D_i) - eps) / 0.2)) + 1;
    std::vector<double> grid(static_cast<std::size_t>((na + 1) * (nb + 1)),
                             std::numeric_limits<double>::quiet_NaN());
    const auto at = [&](int a, int b) -> double& {
      return grid[static_cast<std::size_t>(a * (nb + 1) + b)];
    };
    int best_a = -1, best_b = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int b = 1; b <= nb; ++b) {
      const double D_r = 0.1 * b;
      const double hi = window_hi(in, D_r);
      for (int a = 0; a <= na; ++a) {
        const double pi = eps + 0.2 * a;
        if (pi > hi) break;
        at(a, b) = expected_cost(pi, D_r, in.src, in.u);
        if (at(a, b) < best) {
          best = at(a, b);
          best_a = a;
          best_b = b;
        }
      }
    }
    double resolution = 0.0;
    for (int da = -1; da <= 1; ++da) {
      for (int db = -1; db <= 1; ++db) {
        const int a = best_a + da, b = best_b + db;
        if (a < 0 || a > na || b < 1 || b > nb || std::isnan(at(a, b))) continue;
        resolution = std::max(resolution, at(a, b) - best);
      }
    }
    const double gap = std::abs(j.decision.expected_cost - best);
    worst_gap = std::max(worst_gap, gap - resolution);
    mismatched += gap > resolution;
  }
  return {mismatched == 0 && nonmonotone == 0 && slow == 0,
          format("%d instances: %d outside grid resolution (max excess %.3g), %d non-monotone "
                 "traces, max outer %d",
                 instances, mismatched, worst_gap, nonmonotone, max_outer)};
}

// Criterion 5: optimized expected cost never drops as epsilon grows.
Verdict epsilon_monotonicity() {
  int violations = 0, series = 0;
  std::string worst;
  for (const char* name : {"converge.scn", "single_source.scn"}) {
    const Scenario s = load_scenario(kDir + "/" + name);
    for (bool splittable : {false, true}) {
      ++series;
      double previous = -std::numeric_limits<double>::infinity();
      for (int k = 0; k <= 10; ++k) {
        Scenario t = s;
        t.sim.econ.epsilon = 0.1 * k;
        const PricingDecision d =
            decide_incomplete(single_source_profile(t, t.source.B), single_source_belief(t),
                              t.sim.alg, t.sim.econ.gamma, splittable);
        if (d.expected_cost < previous) {
          ++violations;
          worst = format(" (%s %s eps %.1f: %.17g < %.17g)", name, splittable ? "SD" : "NSD",
                         0.1 * k, d.expected_cost, previous);
        }
        previous = d.expected_cost;
      }
    }
  }
  return {violations == 0, format("%d series x 11 levels, %d decreases", series, violations) + worst};
}

// Criterion 6: full <= partial <= direct at every battery level below full.
Verdict information_ordering() {
  const Scenario s = load_scenario(kDir + "/single_source.scn");
  const auto levels = default_battery_levels(s);
  const auto points = sweep_battery(s, levels, 1000, s.sim.seed);
  const auto cost = [&](Scheme scheme, double B) {
    for (const SweepPoint& p : points) {
      if (p.scheme == scheme && p.B == B) return p.cost;
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  int violations = 0;
  std::string first;
  for (double B : levels) {
    if (B >= s.sim.econ.B_max) {
      for (Scheme scheme : kAllSchemes) {
        if (cost(scheme, B) != 0.0) {
          ++violations;
          if (first.empty()) first = format(" (%s nonzero at full battery)", std::string(to_string(scheme)).c_str());
        }
      }
      continue;
    }
    const double dt = cost(Scheme::DT, B);
    for (auto [full, part] : {std::pair{Scheme::FullNSD, Scheme::PartNSD},
                              std::pair{Scheme::FullSD, Scheme::PartSD}}) {
      if (!(cost(full, B) <= cost(part, B) && cost(part, B) <= dt)) {
        ++violations;
        if (first.empty()) {
          first = format(" (B %g: %s %.6g, %s %.6g, DT %.6g)", B, std::string(to_string(full)).c_str(),
                         cost(full, B), std::string(to_string(part)).c_str(), cost(part, B), dt);
        }
      }
    }
  }
  return {violations == 0, format("mu %g, D %g, 1000 draws, %zu levels: %d violations", s.source.mu_N,
                                  s.source.D, levels.size(), violations) + first};
}

struct CellMeans {
  double comm[5] = {};
  double battery[5] = {};
  double final_avg[5] = {};
};

CellMeans multi_mt_means() {
  const Scenario s = load_scenario(kDir + "/multi_mt.scn");
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t k = 1; k <= 10; ++k) seeds.push_back(k);
  const std::vector<Scheme> order{Scheme::DT, Scheme::PartNSD, Scheme::PartSD, Scheme::FullNSD,
                                  Scheme::FullSD};
  const SimulateOutput out =
      run_simulate(s, order, seeds, std::max(1u, std::thread::hardware_concurrency()));
  CellMeans m;
  for (const SimulateRun& run : out.runs) {
    const std::size_t k = static_cast<std::size_t>(std::find(order.begin(), order.end(), run.scheme) - order.begin());
    m.comm[k] += static_cast<double>(run.result.metrics.comm_outages) / 10.0;
    m.battery[k] += static_cast<double>(run.result.metrics.battery_outages) / 10.0;
    m.final_avg[k] += run.result.metrics.avg_battery_trace.back() / 10.0;
  }
  return m;
}

std::string row(const double (&v)[5]) {
  return format("DT %.1f, PartNSD %.1f, PartSD %.1f, FullNSD %.1f, FullSD %.1f", v[0], v[1], v[2],
                v[3], v[4]);
}

// Criterion 7: strict outage ordering DT > PartNSD > PartSD > FullNSD > FullSD.
Verdict outage_ordering() {
  const CellMeans m = multi_mt_means();
  bool ok = true;
  for (int k = 1; k < 5; ++k) ok &= m.comm[k - 1] > m.comm[k] && m.battery[k - 1] > m.battery[k];
  return {ok, "comm outages: " + row(m.comm) + "; battery outages: " + row(m.battery)};
}

// Criterion 8: every cooperative scheme ends with at least DT's average battery.
Verdict battery_trajectories() {
  const CellMeans m = multi_mt_means();
  bool ok = true;
  for (int k = 1; k < 5; ++k) ok &= m.final_avg[k] >= m.final_avg[0];
  return {ok, "average battery at the last slot: " + row(m.final_avg)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Criterion 9: same scenario and seed give byte-identical files.
Verdict determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "relaypay_acceptance_determinism";
  fs::remove_all(root);

  const Scenario single = load_scenario(kDir + "/single_source.scn");
  const Scenario conv = load_scenario(kDir + "/converge.scn");
  const Scenario cell = load_scenario(kDir + "/multi_mt.scn");
  const std::vector<Scheme> schemes(std::begin(kAllSchemes), std::end(kAllSchemes));
  const std::vector<std::uint64_t> seeds{1, 2, 3};

  const auto produce = [&](const fs::path& dir, unsigned threads) {
    write_csv(run_converge(conv).rows, dir / "converge.csv");
    write_csv(sweep_rows(sweep_battery(single, default_battery_levels(single), single.reps,
                                       single.sim.seed),
                         single.sim.seed.seed),
              dir / "sweep_battery.csv");
    const SimulateOutput sim = run_simulate(cell, schemes, seeds, threads);
    write_csv(sim.metrics, dir / "simulate_metrics.csv");
    write_csv(sim.trace, dir / "simulate_trace.csv");
    write_events(sim.events, dir / "events.jsonl");
  };
  produce(root / "a", 1);
  produce(root / "b", 1);
  produce(root / "c", 8);

  int differing = 0;
  std::string which;
  for (const char* f : {"converge.csv", "sweep_battery.csv", "simulate_metrics.csv",
                        "simulate_trace.csv", "events.jsonl"}) {
    const std::string a = slurp(root / "a" / f);
    if (a.empty() || a != slurp(root / "b" / f) || a != slurp(root / "c" / f)) {
      ++differing;
      which += std::string(" ") + f;
    }
  }
  fs::remove_all(root);
  return {differing == 0, format("5 files x 3 runs (1, 1, 8 threads): %d differ", differing) + which};
}

struct Criterion {
  int id;
  double budget_s;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, 60.0, split_optimality},       {2, 5.0, poisson_identity},
      {3, 30.0, marginal_convexity},     {4, 120.0, joint_vs_grid},
      {5, 60.0, epsilon_monotonicity},   {6, 120.0, information_ordering},
      {7, 600.0, outage_ordering},       {8, 600.0, battery_trajectories},
      {9, 600.0, determinism},
  };

  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    only = std::atoi(argv[2]);
    if (only < 1 || only > 9) {
      std::fprintf(stderr, "criterion must be 1..9\n");
      return 2;
    }
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
    return 2;
  }

  bool all_pass = true;
  for (const Criterion& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = v.pass && secs <= c.budget_s;
    all_pass &= pass;
    std::printf("criterion %d: %s %s [%.2f s, budget %.0f s]\n", c.id, pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
