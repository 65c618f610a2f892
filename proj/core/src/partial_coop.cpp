#include "relaypay/partial_coop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relaypay/channel.hpp"
#include "relaypay/dichotomous.hpp"
#include "relaypay/error.hpp"

namespace relaypay {

namespace {

// Objective with the per-source constants hoisted out of the search loops.
class ExpectedCostFn {
 public:
  ExpectedCostFn(const SourceProfile& src, const UncertaintyModel& u)
      : src_(src), u_(u), direct_(src.zeta_i * energy_for_rate(src.D_i, src.g_i, u.sigma2)) {}

  double direct_cost() const { return direct_; }

  double source_energy(double D_r) const {
    return energy_for_rate(std::max(src_.D_i - D_r, 0.0), src_.g_i, u_.sigma2);
  }

  // Upper end of the payment window for this relay rate.
  double window_hi(double D_r) const { return direct_ - src_.zeta_i * source_energy(D_r); }

  double operator()(double pi, double D_r) const {
    if (D_r <= 0.0) return direct_;
    const double w = u_.G_i * (pi - u_.epsilon) / (u_.sigma2 * std::expm1(D_r * std::numbers::ln2));
    const double p_assoc = association_probability(u_.mu_N, acceptance_probability(w, u_.zeta_max));
    return p_assoc * (pi + src_.zeta_i * source_energy(D_r) - direct_) + direct_;
  }

 private:
  SourceProfile src_;
  UncertaintyModel u_;
  double direct_;
};

}  // namespace

void UncertaintyModel::validate() const {
  if (!(mu_N >= 0.0)) throw ValidationError("uncertainty.mu_N must be >= 0");
  if (!(zeta_max > 0.0)) throw ValidationError("uncertainty.zeta_max must be > 0");
  if (!(G_i > 0.0)) throw ValidationError("uncertainty.G_i must be > 0");
  if (!(sigma2 > 0.0)) throw ValidationError("uncertainty.sigma2 must be > 0");
  if (!(epsilon >= 0.0)) throw ValidationError("uncertainty.epsilon must be >= 0");
}

void AlgorithmConfig::validate() const {
  if (!(tau > 0.0 && tau < 0.5)) throw ValidationError("alg.tau must be in (0, 0.5)");
  if (!(delta_pi > 0.0)) throw ValidationError("alg.delta_pi must be > 0");
  if (!(delta_Dr > 0.0)) throw ValidationError("alg.delta_Dr must be > 0");
  if (!(delta_C > 0.0)) throw ValidationError("alg.delta_C must be > 0");
  if (!(max_outer >= 1)) throw ValidationError("alg.max_outer must be >= 1");
}

double w_value(double G_i, double pi, double epsilon, double sigma2, double D_r) {
  if (!(D_r > 0.0)) {
    throw DomainError("w_value: undefined without a relay transmission (D_r <= 0)");
  }
  if (!(pi >= epsilon)) throw DomainError("w_value: payment below reservation utility");
  return G_i * (pi - epsilon) / (sigma2 * std::expm1(D_r * std::numbers::ln2));
}

double acceptance_probability(double w, double zeta_max) {
  if (!(w > 0.0)) return 0.0;
  if (std::isinf(w)) return 1.0;
  const double x = zeta_max / w;
  return -std::expm1(-x) / x;
}

double association_probability(double mu, double p) { return -std::expm1(-mu * p); }

CostBreakdown source_breakdown(const SourceProfile& src, double D_r, double sigma2,
                               double epsilon) {
  const double E_ds = energy_for_rate(src.D_i, src.g_i, sigma2);
  const double E_cs = energy_for_rate(std::max(src.D_i - D_r, 0.0), src.g_i, sigma2);
  return CostBreakdown::make(E_ds, E_cs, src.zeta_i, epsilon);
}

double expected_cost(double pi, double D_r, const SourceProfile& src, const UncertaintyModel& u) {
  if (!(D_r >= 0.0 && D_r <= src.D_i)) {
    throw DomainError("expected_cost: relay rate outside [0, D_i]");
  }
  const ExpectedCostFn f(src, u);
  const double hi = f.window_hi(D_r);
  const double slack = 1e-12 * std::max(1.0, std::abs(hi));
  if (pi < u.epsilon - slack || pi > hi + slack) {
    throw DomainError("expected_cost: payment outside the payment window");
  }
  return f(pi, D_r);
}

PriceSearch optimize_price(double D_r, const SourceProfile& src, const UncertaintyModel& u,
                           const AlgorithmConfig& cfg) {
  const ExpectedCostFn f(src, u);
  PriceSearch out;
  out.cost = f.direct_cost();
  const double lo = u.epsilon;
  const double hi = f.window_hi(D_r);
  if (!(hi >= lo)) return out;

  const double width = hi - lo;
  const double delta = cfg.delta_pi * width;
  const auto r = dichotomous_search([&](double pi) { return f(pi, D_r); }, lo, hi, delta, cfg.tau,
                                    dichotomous_iteration_cap(width, delta, cfg.tau));
  out.feasible = true;
  out.pi = r.x;
  out.cost = r.fx;
  out.iterations = r.iterations;
  return out;
}

RateSearch optimize_rate(double pi, const SourceProfile& src, const UncertaintyModel& u,
                         const AlgorithmConfig& cfg) {
  const ExpectedCostFn f(src, u);
  RateSearch out;
  out.cost = f.direct_cost();
  if (pi < u.epsilon) return out;

  // pi <= zeta_i (E_ds - E_cs(D_i - D_r)) bounds D_r from below.
  const double spare = f.direct_cost() - pi;
  if (spare < 0.0) return out;
  const double step = cfg.delta_Dr * src.D_i;
  double lo = step;
  if (src.zeta_i > 0.0) {
    const double unit = src.zeta_i * u.sigma2 / src.g_i;
    lo = std::max(lo, src.D_i - std::log2(1.0 + spare / unit));
  } else if (pi > 0.0) {
    return out;
  }
  const double hi = src.D_i;
  if (lo > hi) return out;

  const auto r = dichotomous_search([&](double D_r) { return f(pi, D_r); }, lo, hi, step, cfg.tau,
                                    dichotomous_iteration_cap(hi - lo, step, cfg.tau));
  out.feasible = true;
  out.D_r = r.x;
  out.cost = r.fx;
  out.iterations = r.iterations;
  return out;
}

JointSearch optimize_joint(const SourceProfile& src, const UncertaintyModel& u,
                           const AlgorithmConfig& cfg) {
  if (!(src.D_i > 0.0)) throw DomainError("optimize_joint: D_i must be > 0");
  const ExpectedCostFn f(src, u);

  JointSearch out;
  PricingDecision& best = out.decision;
  best.direct_cost = f.direct_cost();
  best.expected_cost = best.direct_cost;
  best.D_r = src.D_i;
  out.trace.push_back(best.expected_cost);

  const double tolerance = cfg.delta_C * best.direct_cost;
  double D_r = src.D_i;
  for (int n = 1; n <= cfg.max_outer; ++n) {
    out.outer_iterations = n;
    const double previous = best.expected_cost;

    const PriceSearch price = optimize_price(D_r, src, u, cfg);
    if (price.feasible && price.cost <= best.expected_cost) {
      best.feasible = true;
      best.pi = price.pi;
      best.D_r = D_r;
      best.expected_cost = price.cost;
    }
    out.trace.push_back(best.expected_cost);
    // No payment window even at D_r = D_i: cooperation is impossible.
    if (!best.feasible) break;

    const RateSearch rate = optimize_rate(best.pi, src, u, cfg);
    if (rate.feasible && rate.cost <= best.expected_cost) {
      best.D_r = rate.D_r;
      best.expected_cost = rate.cost;
    }
    out.trace.push_back(best.expected_cost);
    D_r = best.D_r;

    if (std::abs(best.expected_cost - previous) <= tolerance) break;
  }

  if (best.feasible && best.D_r > 0.0) {
    best.w = w_value(u.G_i, best.pi, u.epsilon, u.sigma2, best.D_r);
  }
  return out;
}

Mode choose_mode_incomplete(double direct_cost, double expected_opt_cost, double gamma,
                            double epsilon) {
  return direct_cost >= std::max(gamma + expected_opt_cost, epsilon) ? Mode::CT : Mode::DT;
}

PricingDecision decide_incomplete(const SourceProfile& src, const UncertaintyModel& u,
                                  const AlgorithmConfig& cfg, double gamma, bool splittable) {
  PricingDecision d;
  if (splittable) {
    d = optimize_joint(src, u, cfg).decision;
  } else {
    const ExpectedCostFn f(src, u);
    const PriceSearch price = optimize_price(src.D_i, src, u, cfg);
    d.direct_cost = f.direct_cost();
    d.D_r = src.D_i;
    d.feasible = price.feasible;
    d.pi = price.pi;
    d.expected_cost = price.feasible ? std::min(price.cost, d.direct_cost) : d.direct_cost;
    if (price.feasible && src.D_i > 0.0) {
      d.w = w_value(u.G_i, d.pi, u.epsilon, u.sigma2, d.D_r);
    }
  }
  d.mode = d.feasible ? choose_mode_incomplete(d.direct_cost, d.expected_cost, gamma, u.epsilon)
                      : Mode::DT;
  return d;
}

}  // namespace relaypay
