#pragma once

// Time-slotted single-cell simulator. Each slot re-places every MT uniformly,
// redraws roles and fading, resolves helper sets within the short-range radius
// and lets every live source run the decision logic of the configured scheme.
// Batteries only drain; payments go to a separate currency ledger.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relaypay/channel.hpp"
#include "relaypay/economics.hpp"
#include "relaypay/mode.hpp"
#include "relaypay/partial_coop.hpp"
#include "relaypay/stochastic.hpp"

namespace relaypay {

/// Energy debited for a leg that needs more than E_max.
enum class OutageEnergy {
  None,    ///< the MT detects the shortfall and stays silent
  Capped,  ///< the MT transmits at E_max and the package is still lost
};

struct SimConfig {
  int slots = 300;
  Scheme scheme = Scheme::DT;
  double E_max = 3.0;  ///< per-slot, per-leg transmit energy cap [J]
  double D_i = 6.0;    ///< rate of every source [bps/Hz]
  int overlap_retries = 100;
  OutageEnergy outage_energy = OutageEnergy::None;
  CellGeometry geometry;
  EconParams econ;
  ChannelParams channel;
  AlgorithmConfig alg;
  RngSeed seed;

  void validate() const;
  bool operator==(const SimConfig&) const = default;
};

enum class Outcome {
  Delivered,
  CommOutage,            ///< a leg needed more than E_max; package discarded
  SkippedBatteryOutage,  ///< a leg needed more than the spender's battery
};

std::string_view to_string(Outcome o);

struct SlotEvent {
  int slot = 0;
  int source = 0;
  Mode mode = Mode::DT;  ///< mode actually used (CT offers nobody accepted fall back to DT)
  std::optional<int> helper;
  double source_energy = 0.0;  ///< energy actually debited
  double helper_energy = 0.0;
  double payment = 0.0;
  Outcome outcome = Outcome::Delivered;
};

inline constexpr int kHistogramBins = 5;

struct SimMetrics {
  std::int64_t comm_outages = 0;
  std::int64_t battery_outages = 0;
  std::vector<double> avg_battery_trace;  ///< mean battery of all MTs after each slot
  std::vector<std::int64_t> battery_histogram = std::vector<std::int64_t>(kHistogramBins, 0);
  double payments_total = 0.0;
  std::int64_t source_slots = 0;  ///< source decisions taken
  std::int64_t delivered = 0;
  std::int64_t placement_warnings = 0;  ///< slots whose helper sets still overlapped
  int slots = 0;
  double expected_sources_per_slot = 0.0;
  double B_max = 0.0;
};

struct SimState {
  std::vector<MtState> mts;
  int slot = 0;
  SimMetrics metrics;
  Rng placement_rng;
  Rng role_rng;
  Rng fading_rng;
  Rng choice_rng;
};

struct SimResult {
  SimMetrics metrics;
  std::vector<SlotEvent> events;
  std::vector<MtState> final_state;
};

/// Fixed-count cell with U[0, B_max] batteries drawn from the run's seed.
SimState initial_state(const SimConfig& cfg);

/// Advances one slot and returns its events in source-index order.
std::vector<SlotEvent> step_slot(SimState& state, const SimConfig& cfg);

/// Refreshes the final-slot histogram from the current batteries.
void update_histogram(SimMetrics& metrics, const std::vector<MtState>& mts);

/// Runs cfg.slots slots from initial_state(cfg). Throws ValidationError on
/// an invalid config (including slots < 1).
SimResult run_simulation(const SimConfig& cfg);

/// Flat (name, value) record: every counter, the final average battery,
/// histogram bins named by their edges, and outage rates per expected
/// source-slot.
std::vector<std::pair<std::string, double>> metrics_summary(const SimMetrics& metrics);

}  // namespace relaypay
