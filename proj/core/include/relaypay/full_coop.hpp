#pragma once

// Complete-information benchmark: the source knows every helper's battery and
// fading, pays exactly the helper's energy cost, and splits its rate to
// minimize the weighted sum of energies.

#include <cstddef>
#include <optional>
#include <span>

#include "relaypay/channel.hpp"
#include "relaypay/mode.hpp"

namespace relaypay {

/// One MT as seen by the pricing logic: its unit energy cost and its link.
struct Party {
  double zeta = 0.0;
  LinkGain link;
};

struct SplitDecision {
  double D_r = 0.0;        ///< rate carried by the relay
  double D_s = 0.0;        ///< rate kept by the source, D_i - D_r
  double theta_i = 0.0;    ///< source effective energy cost
  double theta_j = 0.0;    ///< helper effective energy cost
  double pair_cost = 0.0;  ///< zeta_j E_cr(D_r) + zeta_i E_cs(D_s)
  double payment = 0.0;    ///< zeta_j E_cr(D_r)
};

struct RelayCandidate {
  std::size_t helper = 0;  ///< index into the helper span
  SplitDecision split;
};

struct BenchmarkOutcome {
  std::optional<std::size_t> chosen_helper;
  double C_hat = 0.0;       ///< min pair cost, or the direct cost with no helper
  double direct_cost = 0.0;
  Mode mode = Mode::DT;
  SplitDecision split;      ///< meaningful only in CT mode
};

/// Relay rate minimizing theta_j (2^D_r - 1) + theta_i (2^(D_i - D_r) - 1).
/// The unconstrained stationary point is (D_i + log2(theta_i / theta_j)) / 2;
/// the result is that point clamped to [0, D_i]. Both thetas zero gives D_i / 2.
double optimal_split(double theta_i, double theta_j, double D_i);

/// Optimal split and minimum cost for one source/helper pair. The effective
/// costs are zeta / g scaled by the source's large-scale gain, which reduces to
/// zeta / eta when both share the same path loss.
SplitDecision pair_cost(const Party& source, const Party& helper, double D_i, double sigma2);

/// Cost of handing the whole rate to the helper.
SplitDecision unsplit_cost(const Party& source, const Party& helper, double D_i, double sigma2);

/// Cheapest helper; ties go to the lowest index. Empty span -> nullopt.
std::optional<RelayCandidate> select_relay(const Party& source, std::span<const Party> helpers,
                                           double D_i, double sigma2, bool splittable);

/// CT iff the cost reduction over direct transmission reaches gamma.
Mode choose_mode_complete(double C_hat, double direct_cost, double gamma);

/// Relay selection followed by the mode decision.
BenchmarkOutcome decide_complete(const Party& source, std::span<const Party> helpers, double D_i,
                                 double sigma2, double gamma, bool splittable);

}  // namespace relaypay
