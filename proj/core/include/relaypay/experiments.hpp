#pragma once

// The three batch experiments behind the CLI: the convergence trace of the
// joint price/rate search, the single-source cost sweep over battery levels,
// and the multi-MT cell simulation.

#include <cstdint>
#include <vector>

#include "relaypay/full_coop.hpp"
#include "relaypay/output.hpp"
#include "relaypay/partial_coop.hpp"
#include "relaypay/scenario.hpp"

namespace relaypay {

/// Source profile of the scenario's single source at battery B.
SourceProfile single_source_profile(const Scenario& s, double B);
/// What that source believes about its helpers.
UncertaintyModel single_source_belief(const Scenario& s);

struct ConvergeResult {
  JointSearch joint;      ///< splittable data
  PricingDecision fixed;  ///< non-splittable data (D_r = D_i)
  std::vector<OutputRow> rows;
};

/// Cost after each price/rate sub-routine (index 0 is direct transmission),
/// plus the non-splittable optimum on the same axis.
ConvergeResult run_converge(const Scenario& s);

struct SweepPoint {
  Scheme scheme = Scheme::DT;
  double B = 0.0;
  double cost = 0.0;
};

/// Cost of every scheme at every battery level. Partial-information schemes
/// report the optimized expected cost; full-information schemes average
/// `reps` draws of the helper set (common across levels and both schemes).
std::vector<SweepPoint> sweep_battery(const Scenario& s, const std::vector<double>& levels,
                                      int reps, RngSeed seed);

/// B in {0, B_max/10, ..., B_max}.
std::vector<double> default_battery_levels(const Scenario& s);

std::vector<OutputRow> sweep_rows(const std::vector<SweepPoint>& points, std::uint64_t seed);

struct SimulateRun {
  Scheme scheme = Scheme::DT;
  std::uint64_t seed = 0;
  SimResult result;
};

struct SimulateOutput {
  std::vector<SimulateRun> runs;  ///< (scheme, seed) in request order; events moved out
  std::vector<OutputRow> metrics;
  std::vector<OutputRow> trace;   ///< average battery per slot
  std::vector<EventLog> events;
};

/// One simulation per (scheme, seed), run on up to `threads` workers. Each run
/// owns its generators, so the output does not depend on the thread count.
SimulateOutput run_simulate(const Scenario& s, const std::vector<Scheme>& schemes,
                            const std::vector<std::uint64_t>& seeds, unsigned threads = 1);

}  // namespace relaypay
