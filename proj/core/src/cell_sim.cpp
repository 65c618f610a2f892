#include "relaypay/cell_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "relaypay/error.hpp"
#include "relaypay/full_coop.hpp"

namespace relaypay {

namespace {

enum StreamPurpose : std::uint64_t { kInit = 0, kPlacement = 1, kRoles = 2, kFading = 3, kChoice = 4 };

// Energy of one transmission leg; a dead link can never be served.
double leg_energy(double rate, const LinkGain& link, double sigma2) {
  if (rate <= 0.0) return 0.0;
  if (!(link.g >= kDeadLinkGain)) return std::numeric_limits<double>::infinity();
  return energy_for_rate(rate, link.g, sigma2);
}

struct Leg {
  int mt = -1;
  double energy = 0.0;
};

void place(MtState& mt, const SimConfig& cfg, Rng& rng) {
  mt.x = rng.uniform(0.0, cfg.geometry.width);
  mt.y = rng.uniform(0.0, cfg.geometry.height);
  mt.r = distance_to_bs(cfg.geometry, mt.x, mt.y);
  mt.link = LinkGain::make(path_gain(cfg.channel, mt.r), mt.link.eta);
}

bool within(const MtState& a, const MtState& b, double d) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= d * d;
}

// Live idle MTs within radius d of each source.
std::vector<std::vector<int>> helper_sets(const std::vector<MtState>& mts,
                                          const std::vector<int>& sources, double d) {
  std::vector<std::vector<int>> sets(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    const MtState& src = mts[static_cast<std::size_t>(sources[s])];
    for (std::size_t k = 0; k < mts.size(); ++k) {
      const MtState& mt = mts[k];
      if (mt.alive && mt.role == Role::Idle && within(src, mt, d)) {
        sets[s].push_back(static_cast<int>(k));
      }
    }
  }
  return sets;
}

// Sources whose helper set shares an MT with another source's set.
std::vector<std::size_t> conflicting_sources(const std::vector<std::vector<int>>& sets,
                                             std::size_t mt_count) {
  std::vector<int> owner(mt_count, -1);
  std::vector<bool> conflict(sets.size(), false);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (int h : sets[s]) {
      auto& o = owner[static_cast<std::size_t>(h)];
      if (o >= 0) {
        conflict[static_cast<std::size_t>(o)] = true;
        conflict[s] = true;
      } else {
        o = static_cast<int>(s);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (conflict[s]) out.push_back(s);
  }
  return out;
}

class SlotRunner {
 public:
  SlotRunner(SimState& state, const SimConfig& cfg) : st_(state), cfg_(cfg) {}

  std::vector<SlotEvent> run() {
    redraw();
    std::vector<int> sources;
    for (std::size_t k = 0; k < st_.mts.size(); ++k) {
      if (st_.mts[k].alive && st_.mts[k].role == Role::Source) sources.push_back(static_cast<int>(k));
    }
    auto sets = separate_helper_sets(sources);

    used_.assign(st_.mts.size(), false);
    std::vector<SlotEvent> events;
    events.reserve(sources.size());
    for (std::size_t s = 0; s < sources.size(); ++s) {
      // A source drained earlier in this slot (as someone's relay) stays silent.
      if (!st_.mts[static_cast<std::size_t>(sources[s])].alive) continue;
      events.push_back(serve(sources[s], sets[s]));
    }

    SimMetrics& m = st_.metrics;
    double total = 0.0;
    for (const MtState& mt : st_.mts) total += mt.battery;
    m.avg_battery_trace.push_back(st_.mts.empty() ? 0.0 : total / static_cast<double>(st_.mts.size()));
    ++m.slots;
    update_histogram(m, st_.mts);
    ++st_.slot;
    return events;
  }

 private:
  void redraw() {
    for (MtState& mt : st_.mts) place(mt, cfg_, st_.placement_rng);
    for (MtState& mt : st_.mts) {
      const bool source = st_.role_rng.bernoulli(cfg_.geometry.rho);
      mt.role = (source && mt.alive) ? Role::Source : Role::Idle;
    }
    for (MtState& mt : st_.mts) {
      mt.link = LinkGain::make(mt.link.G, st_.fading_rng.exponential());
    }
  }

  std::vector<std::vector<int>> separate_helper_sets(const std::vector<int>& sources) {
    const double d = cfg_.geometry.d;
    auto sets = helper_sets(st_.mts, sources, d);
    auto conflicts = conflicting_sources(sets, st_.mts.size());
    for (int attempt = 0; attempt < cfg_.overlap_retries && !conflicts.empty(); ++attempt) {
      for (std::size_t s : conflicts) {
        place(st_.mts[static_cast<std::size_t>(sources[s])], cfg_, st_.placement_rng);
      }
      sets = helper_sets(st_.mts, sources, d);
      conflicts = conflicting_sources(sets, st_.mts.size());
    }
    if (!conflicts.empty()) ++st_.metrics.placement_warnings;
    return sets;
  }

  Party party(int k) const {
    const MtState& mt = st_.mts[static_cast<std::size_t>(k)];
    return Party{unit_energy_cost(mt.battery, cfg_.econ), mt.link};
  }

  SlotEvent serve(int src, const std::vector<int>& candidates) {
    ++st_.metrics.source_slots;
    SlotEvent ev;
    ev.slot = st_.slot;
    ev.source = src;

    std::vector<int> helpers;
    for (int h : candidates) {
      const MtState& mt = st_.mts[static_cast<std::size_t>(h)];
      if (mt.alive && !used_[static_cast<std::size_t>(h)] && mt.link.g >= kDeadLinkGain) {
        helpers.push_back(h);
      }
    }

    const MtState& source = st_.mts[static_cast<std::size_t>(src)];
    const double sigma2 = cfg_.channel.sigma2;
    const double D_i = cfg_.D_i;
    std::vector<Leg> legs{{src, leg_energy(D_i, source.link, sigma2)}};

    if (source.link.g >= kDeadLinkGain && !helpers.empty()) {
      if (is_full_info(cfg_.scheme)) {
        plan_full(src, helpers, legs, ev);
      } else if (is_partial_info(cfg_.scheme)) {
        plan_partial(src, helpers, legs, ev);
      }
    }
    execute(legs, ev);
    return ev;
  }

  void plan_full(int src, const std::vector<int>& helpers, std::vector<Leg>& legs, SlotEvent& ev) {
    const Party source = party(src);
    std::vector<Party> parties;
    parties.reserve(helpers.size());
    for (int h : helpers) parties.push_back(party(h));
    const BenchmarkOutcome out = decide_complete(source, parties, cfg_.D_i, cfg_.channel.sigma2,
                                                 cfg_.econ.gamma, is_splittable(cfg_.scheme));
    if (out.mode != Mode::CT) return;

    const int relay = helpers[*out.chosen_helper];
    const MtState& r = st_.mts[static_cast<std::size_t>(relay)];
    legs = {{src, leg_energy(out.split.D_s, source.link, cfg_.channel.sigma2)},
            {relay, leg_energy(out.split.D_r, r.link, cfg_.channel.sigma2)}};
    ev.mode = Mode::CT;
    ev.helper = relay;
    ev.payment = out.split.payment;
  }

  void plan_partial(int src, const std::vector<int>& helpers, std::vector<Leg>& legs,
                    SlotEvent& ev) {
    const MtState& source = st_.mts[static_cast<std::size_t>(src)];
    const double sigma2 = cfg_.channel.sigma2;
    const SourceProfile profile{unit_energy_cost(source.battery, cfg_.econ), source.link.g, cfg_.D_i};
    const UncertaintyModel belief{helper_count_mean(cfg_.geometry), cfg_.econ.zeta_max,
                                  source.link.G, sigma2, cfg_.econ.epsilon};
    const PricingDecision offer =
        decide_incomplete(profile, belief, cfg_.alg, cfg_.econ.gamma, is_splittable(cfg_.scheme));
    if (offer.mode != Mode::CT) return;

    std::vector<int> acceptors;
    for (int h : helpers) {
      const MtState& mt = st_.mts[static_cast<std::size_t>(h)];
      const double E_cr = leg_energy(offer.D_r, mt.link, sigma2);
      const double zeta_j = unit_energy_cost(mt.battery, cfg_.econ);
      if (helper_utility(offer.pi, zeta_j, E_cr, cfg_.econ.epsilon).accept) acceptors.push_back(h);
    }
    // Nobody accepted: the source transmits directly at the full rate.
    if (acceptors.empty()) return;

    const int relay = acceptors.size() == 1
                          ? acceptors.front()
                          : acceptors[st_.choice_rng.uniform_index(
                                static_cast<std::uint32_t>(acceptors.size()))];
    const MtState& r = st_.mts[static_cast<std::size_t>(relay)];
    legs = {{src, leg_energy(cfg_.D_i - offer.D_r, source.link, sigma2)},
            {relay, leg_energy(offer.D_r, r.link, sigma2)}};
    ev.mode = Mode::CT;
    ev.helper = relay;
    ev.payment = offer.pi;
  }

  void execute(const std::vector<Leg>& legs, SlotEvent& ev) {
    SimMetrics& m = st_.metrics;
    if (ev.helper) used_[static_cast<std::size_t>(*ev.helper)] = true;

    const bool over_cap = std::any_of(legs.begin(), legs.end(),
                                      [&](const Leg& l) { return l.energy > cfg_.E_max; });
    if (over_cap) {
      ev.outcome = Outcome::CommOutage;
      ev.payment = 0.0;
      ++m.comm_outages;
      if (cfg_.outage_energy == OutageEnergy::Capped) {
        for (const Leg& l : legs) spend(ev, l.mt, std::min(l.energy, cfg_.E_max));
      }
      return;
    }

    const bool short_of_battery = std::any_of(legs.begin(), legs.end(), [&](const Leg& l) {
      return l.energy > st_.mts[static_cast<std::size_t>(l.mt)].battery;
    });
    if (short_of_battery) {
      // Whoever cannot cover its leg drains what is left and shuts down.
      for (const Leg& l : legs) {
        if (l.energy > st_.mts[static_cast<std::size_t>(l.mt)].battery) spend(ev, l.mt, l.energy);
      }
      ev.outcome = Outcome::SkippedBatteryOutage;
      ev.payment = 0.0;
      return;
    }

    for (const Leg& l : legs) spend(ev, l.mt, l.energy);
    ev.outcome = Outcome::Delivered;
    ++m.delivered;
    m.payments_total += ev.payment;
  }

  // Debits up to the remaining battery; an MT left empty shuts down.
  void spend(SlotEvent& ev, int k, double energy) {
    MtState& mt = st_.mts[static_cast<std::size_t>(k)];
    const double used = std::min(energy, mt.battery);
    record_spend(ev, k, used);
    mt.battery -= used;
    if (mt.battery <= 0.0) {
      mt.battery = 0.0;
      kill(mt);
    }
  }

  static void record_spend(SlotEvent& ev, int mt, double energy) {
    if (mt == ev.source) {
      ev.source_energy = energy;
    } else {
      ev.helper_energy = energy;
    }
  }

  void kill(MtState& mt) {
    if (!mt.alive) return;
    mt.alive = false;
    mt.role = Role::Idle;
    ++st_.metrics.battery_outages;
  }

  SimState& st_;
  const SimConfig& cfg_;
  std::vector<bool> used_;
};

std::string bin_label(double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "battery_hist_%g_%g", lo, hi);
  return buf;
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Delivered: return "delivered";
    case Outcome::CommOutage: return "comm_outage";
    case Outcome::SkippedBatteryOutage: return "skipped_battery_outage";
  }
  return "?";
}

void SimConfig::validate() const {
  if (slots < 1) throw ValidationError("sim.slots must be >= 1");
  if (!(E_max > 0.0)) throw ValidationError("sim.E_max must be > 0");
  if (!(D_i > 0.0)) throw ValidationError("sim.D_i must be > 0");
  if (overlap_retries < 1) throw ValidationError("sim.overlap_retries must be >= 1");
  geometry.validate();
  econ.validate();
  channel.validate();
  alg.validate();
}

SimState initial_state(const SimConfig& cfg) {
  const Rng base(cfg.seed);
  SimState st{{}, 0, {}, base.substream(kPlacement), base.substream(kRoles),
              base.substream(kFading), base.substream(kChoice)};
  Rng init = base.substream(kInit);
  st.mts = sample_cell(cfg.geometry, cfg.econ, cfg.channel, init);
  for (MtState& mt : st.mts) mt.role = Role::Idle;
  st.metrics.expected_sources_per_slot = cfg.geometry.rho * static_cast<double>(st.mts.size());
  st.metrics.B_max = cfg.econ.B_max;
  update_histogram(st.metrics, st.mts);
  return st;
}

std::vector<SlotEvent> step_slot(SimState& state, const SimConfig& cfg) {
  return SlotRunner(state, cfg).run();
}

void update_histogram(SimMetrics& metrics, const std::vector<MtState>& mts) {
  metrics.battery_histogram.assign(kHistogramBins, 0);
  if (!(metrics.B_max > 0.0)) return;
  const double width = metrics.B_max / kHistogramBins;
  for (const MtState& mt : mts) {
    const int bin = std::min(kHistogramBins - 1, static_cast<int>(mt.battery / width));
    ++metrics.battery_histogram[static_cast<std::size_t>(std::max(bin, 0))];
  }
}

SimResult run_simulation(const SimConfig& cfg) {
  cfg.validate();
  SimState st = initial_state(cfg);
  SimResult result;
  for (int t = 0; t < cfg.slots; ++t) {
    auto events = step_slot(st, cfg);
    result.events.insert(result.events.end(), events.begin(), events.end());
  }
  result.metrics = std::move(st.metrics);
  result.final_state = std::move(st.mts);
  return result;
}

std::vector<std::pair<std::string, double>> metrics_summary(const SimMetrics& m) {
  const double exposure = static_cast<double>(m.slots) * m.expected_sources_per_slot;
  const auto rate = [&](std::int64_t count) {
    return exposure > 0.0 ? static_cast<double>(count) / exposure : 0.0;
  };

  std::vector<std::pair<std::string, double>> out{
      {"comm_outages", static_cast<double>(m.comm_outages)},
      {"battery_outages", static_cast<double>(m.battery_outages)},
      {"comm_outage_rate", rate(m.comm_outages)},
      {"battery_outage_rate", rate(m.battery_outages)},
      {"final_avg_battery", m.avg_battery_trace.empty() ? 0.0 : m.avg_battery_trace.back()},
      {"payments_total", m.payments_total},
      {"source_slots", static_cast<double>(m.source_slots)},
      {"delivered", static_cast<double>(m.delivered)},
      {"placement_warnings", static_cast<double>(m.placement_warnings)},
  };
  const double width = m.B_max > 0.0 ? m.B_max / kHistogramBins : 0.0;
  for (int b = 0; b < kHistogramBins; ++b) {
    const auto count = b < static_cast<int>(m.battery_histogram.size())
                           ? m.battery_histogram[static_cast<std::size_t>(b)]
                           : 0;
    out.emplace_back(bin_label(b * width, (b + 1) * width), static_cast<double>(count));
  }
  return out;
}

}  // namespace relaypay
