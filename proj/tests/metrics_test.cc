// Copyright 2026 The Cournot Learning Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cournot/metrics.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cournot/equilibrium.h"
#include "cournot/error.h"
#include "cournot/presets.h"
#include "test_support.h"

namespace cournot {
namespace {

using ::cournot::testing::MakeRun;
using ::cournot::testing::ScriptedTrajectory;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected cournot::Error";
  return ErrorCode::kNumeric;
}

// A one-player trajectory with the given payoffs and zero actions.
Trajectory PayoffOnly(const std::vector<double>& payoffs) {
  Trajectory traj;
  traj.n_players = 1;
  traj.rounds = static_cast<std::int64_t>(payoffs.size());
  traj.actions.assign(payoffs.size(), 0.0);
  traj.prices.assign(payoffs.size(), 0.0);
  traj.payoffs = payoffs;
  return traj;
}

std::vector<double> PowerLaw(double scale, double exponent, int n) {
  std::vector<double> s(n);
  for (int t = 1; t <= n; ++t) s[t - 1] = scale * std::pow(t, exponent);
  return s;
}

TEST(TimeAveragePayoffTest, Examples) {
  EXPECT_EQ(TimeAveragePayoff(PayoffOnly({0.0, 1.0}), 0),
            (std::vector<double>{0.0, 0.5}));
  for (double v : TimeAveragePayoff(PayoffOnly(std::vector<double>(7, 0.3)), 0)) {
    EXPECT_NEAR(v, 0.3, 1e-16);
  }
  EXPECT_EQ(CodeOf([] { TimeAveragePayoff(PayoffOnly({1.0}), 1); }),
            ErrorCode::kDomain);
}

TEST(TimeAveragePayoffTest, EndsAtTotalOverRounds) {
  const Trajectory traj =
      RunGame(MakeRun(FindPreset("G4").game, Algorithm::kFkm, 10000, 2));
  for (int i = 0; i < 4; ++i) {
    double total = 0.0;
    for (std::int64_t t = 0; t < traj.rounds; ++t) total += traj.payoff(t, i);
    EXPECT_NEAR(TimeAveragePayoff(traj, i).back(), total / traj.rounds, 1e-12);
  }
}

TEST(TimeAveragePayoffTest, OmdApproachesEquilibriumPayoff) {
  const CournotGame game = FindPreset("M1").game;
  const Trajectory traj = RunGame(MakeRun(game, Algorithm::kOmd, 1000, 0));
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(TimeAveragePayoff(traj, i).back(), 0.0361, 0.005);
  }
}

TEST(ViolationFractionTest, Examples) {
  const CournotGame game = FindPreset("M1").game;
  const EquilibriumResult ne = SolveEquilibrium(game);
  std::vector<std::vector<double>> frozen(4, std::vector<double>(50, 0.19));
  const MeasureReport at_ne = ViolationFraction(
      ScriptedTrajectory(game, frozen), ne.payoffs_at_ne, 1e-9);
  for (double f : at_ne.violation_fraction) EXPECT_EQ(f, 0.0);

  std::vector<double> payoffs(10, 0.5);
  payoffs[6] = 0.52;
  const MeasureReport one =
      ViolationFraction(PayoffOnly(payoffs), std::vector<double>{0.5}, 0.01);
  EXPECT_DOUBLE_EQ(one.violation_fraction[0], 0.1);
  ASSERT_EQ(one.violation_curve[0].size(), 5u);  // 1, 2, 4, 8, 10
  EXPECT_EQ(one.violation_curve[0][3].t, 8);
  EXPECT_DOUBLE_EQ(one.violation_curve[0][3].fraction, 0.125);
  EXPECT_DOUBLE_EQ(one.violation_curve[0][2].fraction, 0.0);

  EXPECT_EQ(CodeOf([&] {
              ViolationFraction(PayoffOnly(payoffs), std::vector<double>{0.5},
                                0.0);
            }),
            ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] {
              ViolationFraction(PayoffOnly(payoffs),
                                std::vector<double>{0.5, 0.5}, 0.1);
            }),
            ErrorCode::kDomain);
}

TEST(ViolationFractionTest, NonincreasingInEpsilon) {
  const CournotGame game = FindPreset("G2").game;
  const EquilibriumResult ne = SolveEquilibrium(game);
  const Trajectory traj = RunGame(MakeRun(game, Algorithm::kFkm, 3000, 6));
  std::vector<double> prev(4, 1.0);
  for (double eps = 1e-4; eps < 0.2; eps *= 1.5) {
    const MeasureReport r = ViolationFraction(traj, ne.payoffs_at_ne, eps);
    for (int i = 0; i < 4; ++i) {
      EXPECT_GE(r.violation_fraction[i], 0.0);
      EXPECT_LE(r.violation_fraction[i], prev[i]);
      prev[i] = r.violation_fraction[i];
    }
  }
}

TEST(ViolationFractionTest, FkmCurveDeclinesFromCheckpoint64) {
  const CournotGame game = FindPreset("M1").game;
  const EquilibriumResult ne = SolveEquilibrium(game);
  int passing = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Trajectory traj = RunGame(MakeRun(game, Algorithm::kFkm, 10000, seed));
    const MeasureReport r = ViolationFraction(traj, ne.payoffs_at_ne, 0.02);
    bool ok = true;
    for (const auto& curve : r.violation_curve) {
      for (std::size_t k = 1; k < curve.size(); ++k) {
        if (curve[k - 1].t >= 64 && curve[k].fraction > curve[k - 1].fraction) {
          ok = false;
        }
      }
    }
    if (ok) ++passing;
  }
  EXPECT_GE(passing, 15);
}

TEST(DistanceToNeTest, Examples) {
  const CournotGame game = FindPreset("M1").game;
  const std::vector<double> x_star(4, 0.19);
  std::vector<std::vector<double>> actions(4, std::vector<double>(3, 0.19));
  actions[0][1] = 0.19 + 0.07;
  actions[0][2] = 0.19 - 0.05;
  const std::vector<double> d =
      DistanceToNe(ScriptedTrajectory(game, actions), x_star);
  EXPECT_EQ(d[0], 0.0);
  EXPECT_NEAR(d[1], 0.07, 1e-15);
  EXPECT_NEAR(d[2], 0.05, 1e-15);
  EXPECT_EQ(CodeOf([&] {
              DistanceToNe(ScriptedTrajectory(game, actions),
                           std::vector<double>(3, 0.19));
            }),
            ErrorCode::kDomain);
}

TEST(DistanceToNeTest, PayoffGapBoundedByDistance) {
  // grad pi_i is affine on [0, 1]^4 for the linear game, so its norm peaks at
  // a vertex and bounds the payoff change along any segment in the box.
  const CournotGame game = FindPreset("M1").game;
  double k_bound = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<double> v(4);
    double y = 0.0;
    for (int j = 0; j < 4; ++j) {
      v[j] = (mask >> j) & 1;
      y += v[j];
    }
    const double p = 1.0 - y;
    for (int i = 0; i < 4; ++i) {
      double sq = 0.0;
      for (int j = 0; j < 4; ++j) {
        const double g = j == i ? p - v[i] - 0.05 : -v[i];
        sq += g * g;
      }
      k_bound = std::max(k_bound, std::sqrt(sq));
    }
  }
  const EquilibriumResult ne = SolveEquilibrium(game);
  for (Algorithm alg : {Algorithm::kFkm, Algorithm::kOmd}) {
    const Trajectory traj = RunGame(MakeRun(game, alg, 5000, 12));
    const std::vector<double> d = DistanceToNe(traj, ne.x_star);
    for (std::int64_t t = 0; t < traj.rounds; ++t) {
      for (int i = 0; i < 4; ++i) {
        ASSERT_LE(std::abs(traj.payoff(t, i) - ne.payoffs_at_ne[i]),
                  k_bound * d[t] + 1e-12);
      }
    }
  }
}

TEST(FitRateTest, ExactPowerLaws) {
  for (double e : {-1.0, -0.5, -0.25, 0.0}) {
    const RateFit fit = FitRate(PowerLaw(1.0, e, 1000), {100, 1000});
    EXPECT_NEAR(fit.exponent, e, 1e-12);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_FALSE(fit.floored);
  }
  const RateFit scaled = FitRate(PowerLaw(3.0, -0.25, 500), {1, 500});
  EXPECT_NEAR(scaled.exponent, -0.25, 1e-12);
  EXPECT_NEAR(scaled.intercept, std::log(3.0), 1e-12);
  EXPECT_EQ(scaled.window.t_start, 1);
  EXPECT_EQ(scaled.window.t_end, 500);
}

TEST(FitRateTest, NoisyPowerLaws) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (double e : {-1.0, -0.5, -0.25, 0.0}) {
    std::vector<double> s = PowerLaw(2.0, e, 10000);
    for (double& v : s) v *= 1.0 + noise(rng);
    EXPECT_NEAR(FitRate(s, DefaultTailWindow(10000)).exponent, e, 0.05);
  }
}

TEST(FitRateTest, FloorsZerosAndRejectsBadWindows) {
  std::vector<double> s = PowerLaw(1.0, -0.5, 100);
  s[50] = 0.0;
  EXPECT_TRUE(FitRate(s, {10, 100}).floored);
  EXPECT_EQ(CodeOf([&] { FitRate(s, {1, 9}); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { FitRate(s, {0, 50}); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { FitRate(s, {50, 101}); }), ErrorCode::kDomain);
  s[60] = NAN;
  EXPECT_EQ(CodeOf([&] { FitRate(s, {10, 100}); }), ErrorCode::kNumeric);
}

TEST(FitRateTest, DefaultTailWindow) {
  EXPECT_EQ(DefaultTailWindow(10000).t_start, 1000);
  EXPECT_EQ(DefaultTailWindow(10000).t_end, 10000);
  EXPECT_EQ(DefaultTailWindow(5).t_start, 1);
}

TEST(FitRateTest, OmdDecaysFasterThanFkm) {
  const CournotGame game = FindPreset("M1").game;
  const EquilibriumResult ne = SolveEquilibrium(game);
  constexpr std::int64_t kRounds = 1000;
  std::vector<double> exponents[2];
  std::vector<std::vector<double>> distances[2];
  const Algorithm algs[2] = {Algorithm::kOmd, Algorithm::kFkm};
  for (int a = 0; a < 2; ++a) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Trajectory traj = RunGame(MakeRun(game, algs[a], kRounds, seed));
      distances[a].push_back(DistanceToNe(traj, ne.x_star));
      exponents[a].push_back(
          FitRate(distances[a].back(), DefaultTailWindow(kRounds)).exponent);
    }
  }
  EXPECT_LT(Median(exponents[0]), Median(exponents[1]));
  const double omd =
      FitRate(AverageSeries(distances[0]), DefaultTailWindow(kRounds)).exponent;
  const double fkm =
      FitRate(AverageSeries(distances[1]), DefaultTailWindow(kRounds)).exponent;
  EXPECT_LT(omd, fkm);
  EXPECT_LT(fkm, 0.0);
}

TEST(SeriesHelpersTest, AverageAndMedian) {
  const std::vector<std::vector<double>> s = {{1, 2}, {3, 6}};
  EXPECT_EQ(AverageSeries(s), (std::vector<double>{2, 4}));
  const std::vector<std::vector<double>> ragged = {{1, 2}, {3}};
  EXPECT_EQ(CodeOf([&] { AverageSeries(ragged); }), ErrorCode::kDomain);
  EXPECT_EQ(Median({3, 1, 2}), 2.0);
  EXPECT_EQ(Median({4, 1, 3, 2}), 2.5);
  EXPECT_EQ(CodeOf([] { Median({}); }), ErrorCode::kDomain);
}

}  // namespace
}  // namespace cournot
