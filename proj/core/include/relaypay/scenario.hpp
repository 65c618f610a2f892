#pragma once

// Scenario files: flat `section.key = value` text, one assignment per line,
// `#` starts a comment. Unknown keys, duplicates and malformed values are
// ParseErrors naming the key path. Decibel inputs (channel.G0_db,
// channel.sigma2_dbm) are converted to linear once at load and serialized
// back as linear values.
//
// channel.energy_scale multiplies the noise power wherever an energy is
// computed. It maps the Shannon energy onto the joule scale used by the
// battery and E_max constants.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "relaypay/cell_sim.hpp"

namespace relaypay {

/// The single source of the convergence and battery-sweep experiments.
struct SourceSpec {
  double r = 50.0;     ///< distance to the BS [m]
  double eta = 0.5;    ///< fading power of the source link
  double B = 10.0;     ///< battery [J]
  double D = 4.0;      ///< rate [bps/Hz]
  double mu_N = 2.0;   ///< mean number of helpers

  bool operator==(const SourceSpec&) const = default;
};

struct Scenario {
  SimConfig sim;           ///< channel constants stored unscaled
  double energy_scale = 1.0;
  SourceSpec source;
  int reps = 1000;         ///< Monte Carlo draws per battery level

  /// Channel with energy_scale folded into sigma2.
  ChannelParams effective_channel() const;
  /// sim with the effective channel.
  SimConfig sim_config() const;
  /// Throws ValidationError naming the violated invariant.
  void validate() const;
  bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
/// Every key, linear units, %.17g numbers. parse_scenario(serialize(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace relaypay
