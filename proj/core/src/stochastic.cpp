#include "relaypay/stochastic.hpp"

#include <cmath>
#include <numbers>

#include "relaypay/error.hpp"

namespace relaypay {

namespace {

constexpr std::uint64_t kPcgMultiplier = 6364136223846793005ULL;

// splitmix64 finalizer, used to spread (stream, purpose) pairs.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kPoissonChunk = 30.0;

std::uint64_t poisson_by_inversion(double mu, Rng& rng) {
  const double u = rng.uniform();
  double p = std::exp(-mu);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mu / static_cast<double>(k);
    cdf += p;
    if (p < 1e-300 && static_cast<double>(k) > mu) break;
  }
  return k;
}

}  // namespace

Pcg32::Pcg32(std::uint64_t init_state, std::uint64_t init_seq) {
  state_ = 0;
  inc_ = (init_seq << 1u) | 1u;
  (*this)();
  state_ += init_state;
  (*this)();
}

std::uint32_t Pcg32::operator()() {
  const std::uint64_t old = state_;
  state_ = old * kPcgMultiplier + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
}

Rng::Rng(RngSeed seed) : seed_(seed), gen_(seed.seed, seed.stream_id) {}

Rng Rng::substream(std::uint64_t purpose) const {
  return Rng(seed_.seed, mix64(seed_.stream_id ^ mix64(purpose + 1)));
}

double Rng::uniform() {
  const std::uint64_t hi = gen_();
  const std::uint64_t lo = gen_();
  return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log1p(-uniform()); }

std::uint32_t Rng::uniform_index(std::uint32_t n) {
  if (n == 0) throw DomainError("uniform_index: empty range");
  // Rejection sampling, no modulo bias.
  const std::uint32_t limit = 0xffffffffu - (0xffffffffu % n);
  std::uint32_t x = gen_();
  while (x >= limit) x = gen_();
  return x % n;
}

std::uint64_t sample_poisson(double mu, Rng& rng) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("sample_poisson: mu must be >= 0");
  if (mu == 0.0) return 0;
  std::uint64_t total = 0;
  double remaining = mu;
  while (remaining > kPoissonChunk) {
    total += poisson_by_inversion(kPoissonChunk, rng);
    remaining -= kPoissonChunk;
  }
  return total + poisson_by_inversion(remaining, rng);
}

void CellGeometry::validate() const {
  if (!(width > 0.0 && height > 0.0)) throw ValidationError("geometry: width and height must be > 0");
  if (!(lambda >= 0.0)) throw ValidationError("geometry.lambda must be >= 0");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ValidationError("geometry.rho must be in [0, 1]");
  if (!(d >= 0.0)) throw ValidationError("geometry.d must be >= 0");
  if (placement == Placement::Fixed && mt_count < 0) {
    throw ValidationError("geometry.mt_count must be >= 0");
  }
}

double helper_count_mean(const CellGeometry& geom) {
  return (1.0 - geom.rho) * geom.lambda * std::numbers::pi * geom.d * geom.d;
}

double distance_to_bs(const CellGeometry& geom, double x, double y) {
  return std::hypot(x - geom.bs_x, y - geom.bs_y);
}

std::vector<MtState> sample_cell(const CellGeometry& geom, const EconParams& econ,
                                 const ChannelParams& ch, Rng& rng) {
  std::uint64_t count = 0;
  if (geom.placement == Placement::Fixed) {
    count = static_cast<std::uint64_t>(geom.mt_count);
  } else {
    count = sample_poisson(geom.lambda * geom.area(), rng);
  }

  std::vector<MtState> cell(count);
  for (MtState& mt : cell) {
    mt.x = rng.uniform(0.0, geom.width);
    mt.y = rng.uniform(0.0, geom.height);
    mt.r = distance_to_bs(geom, mt.x, mt.y);
    mt.role = rng.bernoulli(geom.rho) ? Role::Source : Role::Idle;
    mt.link = LinkGain::make(path_gain(ch, mt.r), rng.exponential());
    mt.battery = rng.uniform(0.0, econ.B_max);
  }
  return cell;
}

}  // namespace relaypay
