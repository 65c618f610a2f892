#include "relaypay/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "relaypay/error.hpp"

namespace relaypay {

namespace {

OutputRow row(std::string experiment, Scheme scheme, std::uint64_t seed, double coordinate,
              std::string metric, double value) {
  return {std::move(experiment), std::string(to_string(scheme)), seed, coordinate,
          std::move(metric), value};
}

}  // namespace

SourceProfile single_source_profile(const Scenario& s, double B) {
  const ChannelParams ch = s.effective_channel();
  const LinkGain link = LinkGain::make(path_gain(ch, s.source.r), s.source.eta);
  return {unit_energy_cost(B, s.sim.econ), link.g, s.source.D};
}

UncertaintyModel single_source_belief(const Scenario& s) {
  const ChannelParams ch = s.effective_channel();
  return {s.source.mu_N, s.sim.econ.zeta_max, path_gain(ch, s.source.r), ch.sigma2,
          s.sim.econ.epsilon};
}

ConvergeResult run_converge(const Scenario& s) {
  s.validate();
  const SourceProfile src = single_source_profile(s, s.source.B);
  const UncertaintyModel belief = single_source_belief(s);
  const double gamma = s.sim.econ.gamma;

  ConvergeResult out;
  out.joint = optimize_joint(src, belief, s.sim.alg);
  out.joint.decision.mode = out.joint.decision.feasible
                                ? choose_mode_incomplete(out.joint.decision.direct_cost,
                                                         out.joint.decision.expected_cost, gamma,
                                                         belief.epsilon)
                                : Mode::DT;
  out.fixed = decide_incomplete(src, belief, s.sim.alg, gamma, false);

  const std::uint64_t seed = s.sim.seed.seed;
  const auto& trace = out.joint.trace;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const double x = static_cast<double>(k);
    out.rows.push_back(row("converge", Scheme::PartSD, seed, x, "expected_cost", trace[k]));
    out.rows.push_back(row("converge", Scheme::PartNSD, seed, x, "expected_cost",
                           k == 0 ? out.fixed.direct_cost : out.fixed.expected_cost));
  }

  const double last = static_cast<double>(trace.size() - 1);
  const auto summary = [&](Scheme scheme, const PricingDecision& d) {
    out.rows.push_back(row("converge_result", scheme, seed, last, "payment", d.pi));
    out.rows.push_back(row("converge_result", scheme, seed, last, "relay_rate", d.D_r));
    out.rows.push_back(row("converge_result", scheme, seed, last, "cost_reduction",
                           d.direct_cost - d.expected_cost));
    out.rows.push_back(row("converge_result", scheme, seed, last, "cooperative",
                           d.mode == Mode::CT ? 1.0 : 0.0));
  };
  summary(Scheme::PartSD, out.joint.decision);
  summary(Scheme::PartNSD, out.fixed);
  out.rows.push_back(row("converge_result", Scheme::PartSD, seed, last, "outer_iterations",
                         out.joint.outer_iterations));
  return out;
}

std::vector<double> default_battery_levels(const Scenario& s) {
  std::vector<double> levels;
  for (int k = 0; k <= 10; ++k) levels.push_back(s.sim.econ.B_max * k / 10.0);
  return levels;
}

std::vector<SweepPoint> sweep_battery(const Scenario& s, const std::vector<double>& levels,
                                      int reps, RngSeed seed) {
  s.validate();
  if (reps < 1) throw ValidationError("reps must be >= 1");
  const ChannelParams ch = s.effective_channel();
  const EconParams& econ = s.sim.econ;
  const UncertaintyModel belief = single_source_belief(s);
  const double D = s.source.D;

  // Helper sets are drawn once and reused at every level.
  std::vector<std::vector<Party>> draws(static_cast<std::size_t>(reps));
  Rng rng(seed);
  for (auto& helpers : draws) {
    const auto n = sample_poisson(s.source.mu_N, rng);
    helpers.resize(n);
    for (Party& h : helpers) {
      const double eta = rng.exponential();
      const double B = rng.uniform(0.0, econ.B_max);
      h = Party{unit_energy_cost(B, econ), LinkGain::make(belief.G_i, eta)};
    }
  }

  std::vector<SweepPoint> out;
  for (double B : levels) {
    const SourceProfile src = single_source_profile(s, B);
    const Party source{src.zeta_i, LinkGain::make(belief.G_i, s.source.eta)};
    const double direct = src.zeta_i * energy_for_rate(D, src.g_i, ch.sigma2);
    out.push_back({Scheme::DT, B, direct});

    for (Scheme scheme : {Scheme::PartNSD, Scheme::PartSD}) {
      const PricingDecision d =
          decide_incomplete(src, belief, s.sim.alg, econ.gamma, is_splittable(scheme));
      out.push_back({scheme, B, d.mode == Mode::CT ? d.expected_cost : d.direct_cost});
    }

    for (Scheme scheme : {Scheme::FullNSD, Scheme::FullSD}) {
      double total = 0.0;
      for (const auto& helpers : draws) {
        const BenchmarkOutcome o =
            decide_complete(source, helpers, D, ch.sigma2, econ.gamma, is_splittable(scheme));
        total += o.mode == Mode::CT ? o.C_hat : o.direct_cost;
      }
      out.push_back({scheme, B, total / static_cast<double>(reps)});
    }
  }
  return out;
}

std::vector<OutputRow> sweep_rows(const std::vector<SweepPoint>& points, std::uint64_t seed) {
  std::vector<OutputRow> rows;
  rows.reserve(points.size());
  for (const SweepPoint& p : points) {
    rows.push_back(row("sweep_battery", p.scheme, seed, p.B, "expected_cost", p.cost));
  }
  return rows;
}

SimulateOutput run_simulate(const Scenario& s, const std::vector<Scheme>& schemes,
                            const std::vector<std::uint64_t>& seeds, unsigned threads) {
  s.validate();
  SimulateOutput out;
  for (Scheme scheme : schemes) {
    for (std::uint64_t seed : seeds) out.runs.push_back({scheme, seed, {}});
  }
  if (out.runs.empty()) return out;

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(out.runs.size());
  const auto worker = [&] {
    for (std::size_t k = next++; k < out.runs.size(); k = next++) {
      SimulateRun& run = out.runs[k];
      SimConfig cfg = s.sim_config();
      cfg.scheme = run.scheme;
      cfg.seed.seed = run.seed;
      try {
        run.result = run_simulation(cfg);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned n = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(out.runs.size()));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (SimulateRun& run : out.runs) {
    const SimMetrics& m = run.result.metrics;
    const double slots = m.slots;
    for (const auto& [name, value] : metrics_summary(m)) {
      out.metrics.push_back(row("simulate", run.scheme, run.seed, slots, name, value));
    }
    for (std::size_t t = 0; t < m.avg_battery_trace.size(); ++t) {
      out.trace.push_back(row("battery_trace", run.scheme, run.seed, static_cast<double>(t + 1),
                              "avg_battery", m.avg_battery_trace[t]));
    }
    out.events.push_back(
        {std::string(to_string(run.scheme)), run.seed, std::move(run.result.events)});
  }
  return out;
}

}  // namespace relaypay
