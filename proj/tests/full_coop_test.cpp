#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "relaypay/error.hpp"
#include "relaypay/full_coop.hpp"
#include "relaypay/stochastic.hpp"

namespace relaypay {
namespace {

// theta_j (2^x - 1) + theta_i (2^(D - x) - 1), written out independently.
double split_objective(double theta_i, double theta_j, double D, double x) {
  return theta_j * (std::pow(2.0, x) - 1.0) + theta_i * (std::pow(2.0, D - x) - 1.0);
}

double grid_min(double theta_i, double theta_j, double D, double h) {
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(std::floor(D / h));
  for (int k = 0; k <= n; ++k) best = std::min(best, split_objective(theta_i, theta_j, D, k * h));
  return std::min(best, split_objective(theta_i, theta_j, D, D));
}

Party party(double zeta, double eta, double G = 1.0) { return {zeta, LinkGain::make(G, eta)}; }

TEST(OptimalSplit, Branches) {
  EXPECT_DOUBLE_EQ(optimal_split(1.0, 1.0, 4.0), 2.0);
  EXPECT_DOUBLE_EQ(optimal_split(std::pow(2.0, -5), 1.0, 4.0), 0.0);
  EXPECT_DOUBLE_EQ(optimal_split(std::pow(2.0, 5), 1.0, 4.0), 4.0);
  EXPECT_DOUBLE_EQ(optimal_split(0.0, 0.0, 4.0), 2.0);
  EXPECT_DOUBLE_EQ(optimal_split(1.0, 0.0, 4.0), 4.0);
  EXPECT_DOUBLE_EQ(optimal_split(0.0, 1.0, 4.0), 0.0);
  EXPECT_THROW(optimal_split(-1.0, 1.0, 4.0), DomainError);
}

TEST(OptimalSplit, BeatsFineGrid) {
  Rng rng(11, 0);
  for (int k = 0; k < 300; ++k) {
    const double ti = rng.uniform(0.01, 5.0);
    const double tj = rng.uniform(0.01, 5.0);
    const double D = rng.uniform(0.1, 8.0);
    const double x = optimal_split(ti, tj, D);
    EXPECT_LE(split_objective(ti, tj, D, x), grid_min(ti, tj, D, 1e-3) + 1e-9);
  }
}

TEST(OptimalSplit, MonotoneInRatioAndScaleFree) {
  double previous = -1.0;
  for (int k = -40; k <= 40; ++k) {
    const double ratio = std::pow(2.0, 0.25 * k);
    const double x = optimal_split(ratio, 1.0, 6.0);
    EXPECT_GE(x, previous);
    previous = x;
    EXPECT_DOUBLE_EQ(optimal_split(ratio * 7.5, 7.5, 6.0), x);
  }
}

TEST(PairCost, WorkedExample) {
  const SplitDecision s = pair_cost(party(1.0, 1.0), party(1.0, 1.0), 2.0, 1.0);
  EXPECT_DOUBLE_EQ(s.D_r, 1.0);
  EXPECT_DOUBLE_EQ(s.D_s, 1.0);
  EXPECT_NEAR(s.pair_cost, 2.0, 1e-12);
  EXPECT_NEAR(unsplit_cost(party(1.0, 1.0), party(1.0, 1.0), 2.0, 1.0).pair_cost, 3.0, 1e-12);
}

TEST(PairCost, FreeParties) {
  const SplitDecision free_helper = pair_cost(party(0.8, 0.7), party(0.0, 1.3), 3.0, 1.0);
  EXPECT_DOUBLE_EQ(free_helper.D_r, 3.0);
  EXPECT_EQ(free_helper.pair_cost, 0.0);
  const SplitDecision free_source = pair_cost(party(0.0, 0.7), party(0.4, 1.3), 3.0, 1.0);
  EXPECT_DOUBLE_EQ(free_source.D_r, 0.0);
  EXPECT_EQ(free_source.pair_cost, 0.0);
}

TEST(PairCost, Invariants) {
  Rng rng(5, 1);
  for (int k = 0; k < 100; ++k) {
    const Party src = party(rng.uniform(), rng.exponential() + 0.01, 1e-9);
    const Party hlp = party(rng.uniform(), rng.exponential() + 0.01, 1e-9);
    const double D = rng.uniform(0.5, 6.0);
    const SplitDecision s = pair_cost(src, hlp, D, 1e-12);
    EXPECT_DOUBLE_EQ(s.D_r + s.D_s, D);
    const double E_cr = energy_for_rate(s.D_r, hlp.link.g, 1e-12);
    const double E_cs = energy_for_rate(s.D_s, src.link.g, 1e-12);
    EXPECT_DOUBLE_EQ(s.payment, hlp.zeta * E_cr);
    EXPECT_NEAR(s.pair_cost, hlp.zeta * E_cr + src.zeta * E_cs, 1e-12 * (1.0 + s.pair_cost));
  }
}

TEST(PairCost, EqualWeightsMinimizeSumEnergy) {
  const Party src = party(0.6, 0.4);
  const Party hlp = party(0.6, 1.7);
  const double D = 5.0;
  const SplitDecision s = pair_cost(src, hlp, D, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 5000; ++k) {
    const double x = k * 1e-3;
    best = std::min(best, energy_for_rate(x, hlp.link.g, 1.0) + energy_for_rate(D - x, src.link.g, 1.0));
  }
  const double sum = energy_for_rate(s.D_r, hlp.link.g, 1.0) + energy_for_rate(s.D_s, src.link.g, 1.0);
  EXPECT_LE(sum, best + 1e-9);
}

TEST(PairCost, DeadLink) {
  EXPECT_THROW(pair_cost(party(0.5, 1.0), party(0.5, 0.0), 2.0, 1.0), DomainError);
}

TEST(SelectRelay, EmptyAndArgmin) {
  const Party src = party(0.9, 0.5);
  EXPECT_FALSE(select_relay(src, {}, 4.0, 1.0, true).has_value());

  // Unsplit cost is zeta_j * 15 / eta_j: 5 and 3.
  const std::vector<Party> two{party(1.0, 3.0), party(1.0, 5.0)};
  const auto pick = select_relay(src, two, 4.0, 1.0, false);
  ASSERT_TRUE(pick.has_value());
  EXPECT_EQ(pick->helper, 1u);
  EXPECT_NEAR(pick->split.pair_cost, 3.0, 1e-12);
}

TEST(SelectRelay, TiesGoToLowestIndex) {
  const std::vector<Party> same(4, party(0.5, 1.0));
  EXPECT_EQ(select_relay(party(0.9, 0.5), same, 4.0, 1.0, true)->helper, 0u);
}

TEST(SelectRelay, MatchesBruteForce) {
  Rng rng(3, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const Party src = party(rng.uniform(), rng.exponential() + 1e-3);
    std::vector<Party> helpers;
    for (int k = 0; k < 5; ++k) helpers.push_back(party(rng.uniform(), rng.exponential() + 1e-3));
    for (bool splittable : {false, true}) {
      std::size_t arg = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < helpers.size(); ++k) {
        const double c = splittable ? pair_cost(src, helpers[k], 4.0, 1.0).pair_cost
                                    : unsplit_cost(src, helpers[k], 4.0, 1.0).pair_cost;
        if (c < best) {
          best = c;
          arg = k;
        }
      }
      EXPECT_EQ(select_relay(src, helpers, 4.0, 1.0, splittable)->helper, arg);
    }
  }
}

TEST(ModeComplete, ReductionThreshold) {
  EXPECT_EQ(choose_mode_complete(0.0, 5.0, 1.0), Mode::CT);
  EXPECT_EQ(choose_mode_complete(4.5, 5.0, 1.0), Mode::DT);
  EXPECT_EQ(choose_mode_complete(4.46, 19.96, 1.0), Mode::CT);
  EXPECT_EQ(choose_mode_complete(4.0, 5.0, 1.0), Mode::CT);
}

TEST(DecideComplete, NoHelpersMeansDirect) {
  const BenchmarkOutcome o = decide_complete(party(0.9, 0.5), {}, 4.0, 1.0, 1.0, true);
  EXPECT_EQ(o.mode, Mode::DT);
  EXPECT_FALSE(o.chosen_helper.has_value());
  EXPECT_DOUBLE_EQ(o.C_hat, o.direct_cost);
}

TEST(DecideComplete, CtImpliesChosenHelper) {
  Rng rng(8, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Party> helpers;
    const auto n = sample_poisson(2.0, rng);
    for (std::uint64_t k = 0; k < n; ++k) helpers.push_back(party(rng.uniform(), rng.exponential()));
    const BenchmarkOutcome o = decide_complete(party(rng.uniform(), 0.5), helpers, 4.0, 1.0, 1.0, true);
    if (o.mode == Mode::CT) {
      ASSERT_TRUE(o.chosen_helper.has_value());
      EXPECT_GE(o.direct_cost - o.C_hat, 1.0);
    } else {
      EXPECT_FALSE(o.chosen_helper.has_value());
    }
  }
}

}  // namespace
}  // namespace relaypay
