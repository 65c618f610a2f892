#include "relaypay/channel.hpp"

#include <cmath>
#include <numbers>

#include "relaypay/error.hpp"

namespace relaypay {

void ChannelParams::validate() const {
  if (!(alpha > 2.0)) throw ValidationError("channel.alpha must be > 2");
  if (!(r0 > 0.0)) throw ValidationError("channel.r0 must be > 0");
  if (!(G0 > 0.0 && G0 <= 1.0)) throw ValidationError("channel.G0 must be in (0, 1]");
  if (!(sigma2 > 0.0)) throw ValidationError("channel.sigma2 must be > 0");
}

double from_decibels(double value, DecibelRef ref) {
  if (!std::isfinite(value)) {
    throw DomainError("from_decibels: non-finite input");
  }
  const double linear = std::pow(10.0, value / 10.0);
  return ref == DecibelRef::dBm ? linear * 1e-3 : linear;
}

double to_decibels(double linear, DecibelRef ref) {
  if (!(linear > 0.0) || !std::isfinite(linear)) {
    throw DomainError("to_decibels: input must be positive and finite");
  }
  const double ratio = ref == DecibelRef::dBm ? linear * 1e3 : linear;
  return 10.0 * std::log10(ratio);
}

double path_gain(const ChannelParams& params, double r) {
  if (!(r >= 0.0)) {
    throw DomainError("path_gain: distance must be non-negative");
  }
  if (r <= params.r0) return params.G0;
  return params.G0 * std::pow(r / params.r0, -params.alpha);
}

double energy_for_rate(double rate, double g, double sigma2) {
  if (!(rate >= 0.0)) throw DomainError("energy_for_rate: rate must be >= 0");
  if (!(g >= kDeadLinkGain)) throw DomainError("energy_for_rate: dead link");
  // expm1 keeps small rates accurate: 2^D - 1 = expm1(D ln 2).
  return sigma2 / g * std::expm1(rate * std::numbers::ln2);
}

double rate_for_energy(double energy, double g, double sigma2) {
  if (!(energy >= 0.0)) throw DomainError("rate_for_energy: energy must be >= 0");
  if (!(g >= kDeadLinkGain)) throw DomainError("rate_for_energy: dead link");
  return std::log1p(g * energy / sigma2) / std::numbers::ln2;
}

}  // namespace relaypay
