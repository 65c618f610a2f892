#pragma once

// Radio-layer closed forms: dB conversions, distance path gain and the
// Shannon rate <-> energy-per-symbol pair. Symbol duration is normalized to
// one, so energy per symbol and transmit power are interchangeable.
//
// Units inside the library: watts/joules, linear gains, meters, bps/Hz.

namespace relaypay {

enum class DecibelRef {
  dB,   ///< plain power ratio
  dBm,  ///< power relative to 1 mW, converted to watts
};

/// Large-scale propagation constants of the cell.
struct ChannelParams {
  double alpha = 3.6;     ///< path-loss exponent, > 2
  double r0 = 10.0;       ///< reference distance [m]
  double G0 = 1e-7;       ///< linear path gain at r0, in (0, 1]
  double sigma2 = 1e-14;  ///< receiver noise power [W]

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
  bool operator==(const ChannelParams&) const = default;
};

/// Power attenuation of one MT -> BS link.
struct LinkGain {
  double G = 0.0;    ///< large-scale attenuation
  double eta = 0.0;  ///< Rayleigh power envelope, unit-mean exponential
  double g = 0.0;    ///< eta * G

  static LinkGain make(double G, double eta) { return {G, eta, eta * G}; }
};

/// Gains below this are treated as a dead link.
inline constexpr double kDeadLinkGain = 1e-30;

double from_decibels(double value, DecibelRef ref);
double to_decibels(double linear, DecibelRef ref);

/// G0 * (r / r0)^-alpha beyond r0, G0 inside it.
double path_gain(const ChannelParams& params, double r);

/// sigma2 / g * (2^D - 1). Throws DomainError for D < 0 or a dead link.
double energy_for_rate(double rate, double g, double sigma2);

/// log2(1 + g * E / sigma2), the inverse of energy_for_rate.
double rate_for_energy(double energy, double g, double sigma2);

}  // namespace relaypay
