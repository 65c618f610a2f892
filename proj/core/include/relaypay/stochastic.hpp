#pragma once

// Seeded randomness. Every stream is a PCG32 generator (PCG-XSH-RR 64/32,
// O'Neill 2014) selected by (seed, stream id), so a run is reproducible on
// any platform from its seed alone. Non-uniform variates are derived from
// uniform draws by inversion; no <random> distributions are used because
// their algorithms differ between standard libraries.

#include <cstdint>
#include <vector>

#include "relaypay/channel.hpp"
#include "relaypay/economics.hpp"

namespace relaypay {

struct RngSeed {
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;

  bool operator==(const RngSeed&) const = default;
};

/// PCG32 v0.94 reference algorithm ("pcg32_srandom_r" seeding).
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  Pcg32(std::uint64_t init_state, std::uint64_t init_seq);

  std::uint32_t operator()();
  static constexpr std::uint32_t min() { return 0; }
  static constexpr std::uint32_t max() { return 0xffffffffu; }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

/// Uniform/exponential/Poisson draws on top of one PCG32 stream.
class Rng {
 public:
  explicit Rng(RngSeed seed);
  Rng(std::uint64_t seed, std::uint64_t stream_id) : Rng(RngSeed{seed, stream_id}) {}

  /// Independent generator for a numbered purpose within the same run.
  Rng substream(std::uint64_t purpose) const;

  std::uint32_t next_u32() { return gen_(); }
  /// 53-bit uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Unit-rate exponential by inversion: -log(1 - U).
  double exponential();
  /// Uniform integer in [0, n) by rejection, n > 0.
  std::uint32_t uniform_index(std::uint32_t n);
  bool bernoulli(double p) { return uniform() < p; }

  const RngSeed& seed() const { return seed_; }

 private:
  RngSeed seed_;
  Pcg32 gen_;
};

/// Poisson(mu) by sequential CDF inversion; large means are split into
/// chunks and summed. mu = 0 always yields 0.
std::uint64_t sample_poisson(double mu, Rng& rng);

enum class Placement {
  Fixed,    ///< exactly mt_count MTs, uniform in the rectangle
  Density,  ///< Poisson(lambda * area) MTs, uniform in the rectangle (HPPP)
};

struct CellGeometry {
  double width = 100.0;
  double height = 100.0;
  double bs_x = 50.0;
  double bs_y = 50.0;
  double lambda = 0.01;  ///< MTs per square meter
  double rho = 0.2;      ///< chance an MT has traffic in a slot
  double d = 7.0;        ///< short-range link radius [m]
  Placement placement = Placement::Fixed;
  int mt_count = 100;

  double area() const { return width * height; }
  void validate() const;
  bool operator==(const CellGeometry&) const = default;
};

enum class Role { Idle, Source };

struct MtState {
  double x = 0.0;
  double y = 0.0;
  double r = 0.0;        ///< distance to the BS
  LinkGain link;
  double battery = 0.0;  ///< [J]
  Role role = Role::Idle;
  bool alive = true;
};

/// (1 - rho) * lambda * pi * d^2.
double helper_count_mean(const CellGeometry& geom);

/// Distance from (x, y) to the base station.
double distance_to_bs(const CellGeometry& geom, double x, double y);

/// A fresh cell: positions, roles, fading and U[0, B_max] batteries.
std::vector<MtState> sample_cell(const CellGeometry& geom, const EconParams& econ,
                                 const ChannelParams& ch, Rng& rng);

}  // namespace relaypay
