#include "relaypay/economics.hpp"

#include "relaypay/error.hpp"

namespace relaypay {

void EconParams::validate() const {
  if (!(B_max > 0.0)) throw ValidationError("econ.B_max must be > 0");
  if (!(zeta_max > 0.0)) throw ValidationError("econ.zeta_max must be > 0");
  if (!(epsilon >= 0.0)) throw ValidationError("econ.epsilon must be >= 0");
  if (!(gamma >= 0.0)) throw ValidationError("econ.gamma must be >= 0");
}

CostBreakdown CostBreakdown::make(double E_ds, double E_cs, double zeta_i, double epsilon) {
  CostBreakdown cb;
  cb.E_ds = E_ds;
  cb.E_cs = E_cs;
  cb.zeta_i = zeta_i;
  cb.direct_cost = zeta_i * E_ds;
  cb.window_lo = epsilon;
  cb.window_hi = zeta_i * E_ds - zeta_i * E_cs;
  return cb;
}

double unit_energy_cost(double battery, const EconParams& params) {
  if (!(battery >= 0.0 && battery <= params.B_max)) {
    throw DomainError("unit_energy_cost: battery outside [0, B_max]");
  }
  return params.zeta_max * (1.0 - battery / params.B_max);
}

HelperResponse helper_utility(double pi, double zeta_j, double E_cr, double epsilon) {
  if (!(pi >= 0.0 && zeta_j >= 0.0 && E_cr >= 0.0)) {
    throw DomainError("helper_utility: negative payment, cost or energy");
  }
  const double surplus = pi - zeta_j * E_cr;
  if (surplus >= epsilon) return {surplus, true};
  return {0.0, false};
}

PaymentWindow payment_window(const CostBreakdown& cb, double epsilon) {
  PaymentWindow w;
  w.lo = epsilon;
  w.hi = cb.zeta_i * cb.E_ds - cb.zeta_i * cb.E_cs;
  w.feasible = w.hi >= w.lo;
  return w;
}

}  // namespace relaypay
