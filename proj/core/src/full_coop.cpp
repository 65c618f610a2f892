#include "relaypay/full_coop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaypay/error.hpp"

namespace relaypay {

namespace {

void require_alive(const LinkGain& link, const char* who) {
  if (!(link.g >= kDeadLinkGain)) {
    throw DomainError(std::string("pair_cost: dead ") + who + " link");
  }
}

SplitDecision evaluate_split(const Party& source, const Party& helper, double D_i, double D_r,
                             double sigma2) {
  SplitDecision s;
  s.D_r = D_r;
  s.D_s = D_i - D_r;
  const double G_i = source.link.G;
  s.theta_i = source.zeta * G_i / source.link.g;
  s.theta_j = helper.zeta * G_i / helper.link.g;
  s.payment = helper.zeta * energy_for_rate(s.D_r, helper.link.g, sigma2);
  s.pair_cost = s.payment + source.zeta * energy_for_rate(s.D_s, source.link.g, sigma2);
  return s;
}

}  // namespace

double optimal_split(double theta_i, double theta_j, double D_i) {
  if (!(theta_i >= 0.0 && theta_j >= 0.0 && D_i >= 0.0)) {
    throw DomainError("optimal_split: negative effective cost or rate");
  }
  if (theta_i == 0.0 && theta_j == 0.0) return 0.5 * D_i;
  if (theta_j == 0.0) return D_i;
  if (theta_i == 0.0) return 0.0;

  const double log_ratio = std::log2(theta_i) - std::log2(theta_j);
  if (log_ratio < -D_i) return 0.0;
  if (log_ratio >= D_i) return D_i;
  return std::clamp(0.5 * (D_i + log_ratio), 0.0, D_i);
}

SplitDecision pair_cost(const Party& source, const Party& helper, double D_i, double sigma2) {
  require_alive(source.link, "source");
  require_alive(helper.link, "helper");
  const double G_i = source.link.G;
  const double theta_i = source.zeta * G_i / source.link.g;
  const double theta_j = helper.zeta * G_i / helper.link.g;
  return evaluate_split(source, helper, D_i, optimal_split(theta_i, theta_j, D_i), sigma2);
}

SplitDecision unsplit_cost(const Party& source, const Party& helper, double D_i, double sigma2) {
  require_alive(source.link, "source");
  require_alive(helper.link, "helper");
  return evaluate_split(source, helper, D_i, D_i, sigma2);
}

std::optional<RelayCandidate> select_relay(const Party& source, std::span<const Party> helpers,
                                           double D_i, double sigma2, bool splittable) {
  std::optional<RelayCandidate> best;
  for (std::size_t j = 0; j < helpers.size(); ++j) {
    SplitDecision s = splittable ? pair_cost(source, helpers[j], D_i, sigma2)
                                 : unsplit_cost(source, helpers[j], D_i, sigma2);
    if (!best || s.pair_cost < best->split.pair_cost) {
      best = RelayCandidate{j, s};
    }
  }
  return best;
}

Mode choose_mode_complete(double C_hat, double direct_cost, double gamma) {
  return direct_cost - C_hat >= gamma ? Mode::CT : Mode::DT;
}

BenchmarkOutcome decide_complete(const Party& source, std::span<const Party> helpers, double D_i,
                                 double sigma2, double gamma, bool splittable) {
  BenchmarkOutcome out;
  out.direct_cost = source.zeta * energy_for_rate(D_i, source.link.g, sigma2);
  out.C_hat = out.direct_cost;
  const auto candidate = select_relay(source, helpers, D_i, sigma2, splittable);
  if (!candidate) return out;

  out.C_hat = candidate->split.pair_cost;
  out.mode = choose_mode_complete(out.C_hat, out.direct_cost, gamma);
  if (out.mode == Mode::CT) {
    out.chosen_helper = candidate->helper;
    out.split = candidate->split;
  }
  return out;
}

}  // namespace relaypay
