#pragma once

// Battery-dependent valuation of energy and the helper/source incentives
// built on it. Payments are a currency ledger separate from batteries.

namespace relaypay {

struct EconParams {
  double B_max = 100.0;    ///< battery capacity [J]
  double zeta_max = 1.0;   ///< unit energy cost of an empty battery [cost/J]
  double epsilon = 0.2;    ///< helper reservation utility [cost]
  double gamma = 1.0;      ///< cost reduction a source needs to pick CT [cost]

  void validate() const;
  bool operator==(const EconParams&) const = default;
};

/// The source-side numbers that bound a cooperative payment.
struct CostBreakdown {
  double E_ds = 0.0;         ///< direct-transmission energy at the full rate
  double E_cs = 0.0;         ///< source-share energy under the current split
  double zeta_i = 0.0;       ///< source unit energy cost
  double direct_cost = 0.0;  ///< zeta_i * E_ds
  double window_lo = 0.0;    ///< epsilon
  double window_hi = 0.0;    ///< zeta_i * (E_ds - E_cs)

  static CostBreakdown make(double E_ds, double E_cs, double zeta_i, double epsilon);
};

struct PaymentWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool feasible = false;

  double width() const { return hi - lo; }
  bool contains(double pi, double slack = 0.0) const {
    return pi >= lo - slack && pi <= hi + slack;
  }
};

struct HelperResponse {
  double utility = 0.0;
  bool accept = false;
};

/// Linear cost map zeta_max * (1 - B / B_max). Throws DomainError when B is
/// outside [0, B_max].
double unit_energy_cost(double battery, const EconParams& params);

/// Utility of a helper offered `pi` for relaying at energy `E_cr`; zero on
/// rejection, never a value strictly between 0 and epsilon.
HelperResponse helper_utility(double pi, double zeta_j, double E_cr, double epsilon);

/// Payments that leave both parties better off: [epsilon, zeta_i (E_ds - E_cs)].
PaymentWindow payment_window(const CostBreakdown& cb, double epsilon);

}  // namespace relaypay
