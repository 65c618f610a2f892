#pragma once

// Incomplete-information pricing. The source knows only the statistics of its
// helpers: their count is Poisson(mu_N), their unit costs are uniform on
// [0, zeta_max] and their fading is unit-mean exponential. It broadcasts a
// payment pi and a relay rate D_r, and minimizes its expected cost
//
//   E[C] = P_assoc * (pi + zeta_i E_cs(D_i - D_r) - zeta_i E_ds) + zeta_i E_ds
//
// where P_assoc = 1 - exp(-mu_N p) and p is the chance that one helper accepts.

#include <vector>

#include "relaypay/economics.hpp"
#include "relaypay/mode.hpp"

namespace relaypay {

struct UncertaintyModel {
  double mu_N = 0.0;       ///< mean number of helpers
  double zeta_max = 1.0;   ///< helper unit costs ~ U[0, zeta_max]
  double G_i = 0.0;        ///< source large-scale gain, shared by its helpers
  double sigma2 = 0.0;     ///< noise power [W]
  double epsilon = 0.0;    ///< helper reservation utility

  void validate() const;
};

/// Precisions are relative: delta_pi to the payment window width, delta_Dr to
/// D_i and delta_C to the direct-transmission cost.
struct AlgorithmConfig {
  double tau = 0.01;
  double delta_pi = 1e-4;
  double delta_Dr = 1e-4;
  double delta_C = 1e-6;
  int max_outer = 50;

  void validate() const;
  bool operator==(const AlgorithmConfig&) const = default;
};

/// What the source knows about itself.
struct SourceProfile {
  double zeta_i = 0.0;  ///< unit energy cost
  double g_i = 0.0;     ///< own channel power gain
  double D_i = 0.0;     ///< rate to deliver [bps/Hz]
};

struct PricingDecision {
  double pi = 0.0;
  double D_r = 0.0;
  double w = 0.0;
  double expected_cost = 0.0;
  double direct_cost = 0.0;
  Mode mode = Mode::DT;
  bool feasible = false;  ///< a payment window existed at the returned D_r
};

struct PriceSearch {
  bool feasible = false;
  double pi = 0.0;
  double cost = 0.0;
  int iterations = 0;
};

struct RateSearch {
  bool feasible = false;
  double D_r = 0.0;
  double cost = 0.0;
  int iterations = 0;
};

struct JointSearch {
  PricingDecision decision;
  /// Best cost after each sub-routine; entry 0 is the direct cost, odd
  /// entries follow a price search and even entries a rate search.
  std::vector<double> trace;
  int outer_iterations = 0;
};

/// G_i (pi - epsilon) / (sigma2 (2^D_r - 1)). Throws DomainError for D_r <= 0.
double w_value(double G_i, double pi, double epsilon, double sigma2, double D_r);

/// Chance that one helper accepts: (w / zeta_max)(1 - exp(-zeta_max / w)).
double acceptance_probability(double w, double zeta_max);

/// Chance that at least one of Poisson(mu) helpers accepts: 1 - exp(-mu p).
double association_probability(double mu, double p);

/// Source energies and payment window for a given relay rate.
CostBreakdown source_breakdown(const SourceProfile& src, double D_r, double sigma2,
                               double epsilon);

/// Expected source cost. Throws DomainError when pi lies outside the payment
/// window for D_r or D_r is outside [0, D_i].
double expected_cost(double pi, double D_r, const SourceProfile& src, const UncertaintyModel& u);

/// Best payment for a fixed relay rate.
PriceSearch optimize_price(double D_r, const SourceProfile& src, const UncertaintyModel& u,
                           const AlgorithmConfig& cfg);

/// Best relay rate for a fixed payment, searched over the rates for which pi
/// stays inside the payment window.
RateSearch optimize_rate(double pi, const SourceProfile& src, const UncertaintyModel& u,
                         const AlgorithmConfig& cfg);

/// Alternating price/rate searches starting from D_r = D_i.
JointSearch optimize_joint(const SourceProfile& src, const UncertaintyModel& u,
                           const AlgorithmConfig& cfg);

/// CT iff direct_cost >= max(gamma + expected_opt_cost, epsilon).
Mode choose_mode_incomplete(double direct_cost, double expected_opt_cost, double gamma,
                            double epsilon);

/// Non-splittable (price only, D_r = D_i) or splittable (joint) decision,
/// followed by the mode rule.
PricingDecision decide_incomplete(const SourceProfile& src, const UncertaintyModel& u,
                                  const AlgorithmConfig& cfg, double gamma, bool splittable);

}  // namespace relaypay
