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

#include "cournot/equilibrium.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cournot/error.h"
#include "cournot/presets.h"
#include "test_support.h"

namespace cournot {
namespace {

using ::cournot::testing::FdJacobian;
using ::cournot::testing::RandomInteriorProfile;
using ::cournot::testing::RelClose;
using ::cournot::testing::SmallestSingularValue;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected cournot::Error";
  return ErrorCode::kNumeric;
}

std::vector<double> Without(const std::vector<double>& x, int i) {
  std::vector<double> out = x;
  out.erase(out.begin() + i);
  return out;
}

TEST(QuantityForTotalTest, Examples) {
  EXPECT_NEAR(QuantityForTotal(FindPreset("M1").game, 0, 0.76), 0.19, 1e-15);
  // Quadratic price with C = 0.5 x^2: p(s) = x - x p'(s) gives
  // x = (1 - s^2) / (1 + 2 s).
  const double s = 0.7374;
  const double closed_form = (1.0 - s * s) / (1.0 + 2.0 * s);
  EXPECT_NEAR(QuantityForTotal(FindPreset("G4").game, 0, s), closed_form,
              1e-12);
  EXPECT_NEAR(closed_form, 0.1843, 1e-4);
  for (const Preset& p : AllPresets()) {
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(QuantityForTotal(p.game, i, p.game.action_cap()), 0.0) << p.id;
    }
  }
}

TEST(QuantityForTotalTest, Errors) {
  const CournotGame g = FindPreset("G1").game;
  EXPECT_EQ(CodeOf([&] { QuantityForTotal(g, 0, -0.1); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { QuantityForTotal(g, 0, 1.1); }), ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([&] { QuantityForTotal(g, 4, 0.5); }), ErrorCode::kDomain);
}

TEST(QuantityForTotalTest, NonincreasingInTotal) {
  std::mt19937_64 rng(21);
  for (const Preset& p : AllPresets()) {
    std::uniform_real_distribution<double> unif(0.0, p.game.action_cap());
    for (int k = 0; k < 100; ++k) {
      double s1 = unif(rng);
      double s2 = unif(rng);
      if (s1 > s2) std::swap(s1, s2);
      for (int i = 0; i < 4; ++i) {
        ASSERT_GE(QuantityForTotal(p.game, i, s1),
                  QuantityForTotal(p.game, i, s2))
            << p.id;
      }
    }
  }
}

TEST(SolveEquilibriumTest, TableRows) {
  const struct {
    const char* id;
    std::vector<double> ne;
  } rows[] = {
      {"G1", {0.199, 0.199, 0.199, 0.199}},
      {"G7", {0.283, 0.212, 0.141, 0.071}},
      {"G9", {0.284, 0.200, 0.126, 0.072}},
      {"M1", {0.19, 0.19, 0.19, 0.19}},
      {"M2", {0.19, 0.19, 0.19, 0.19}},
  };
  for (const auto& row : rows) {
    const EquilibriumResult r = SolveEquilibrium(FindPreset(row.id).game);
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(r.x_star[i], row.ne[i], 1e-3) << row.id << " player " << i;
    }
  }
}

TEST(SolveEquilibriumTest, ResultInvariants) {
  constexpr double kTol = kDefaultSolverTolerance;
  for (const Preset& p : AllPresets()) {
    const EquilibriumResult r = SolveEquilibrium(p.game, kTol);
    double total = 0.0;
    for (double xi : r.x_star) {
      EXPECT_GT(xi, 0.0) << p.id;
      total += xi;
    }
    EXPECT_LE(std::abs(total - r.s_star), kTol) << p.id;
    EXPECT_LT(r.s_star, p.game.action_cap());
    EXPECT_GT(r.price_at_ne, 0.0);
    EXPECT_LT(r.price_slope_at_ne, 0.0);
    EXPECT_LE(r.tolerance_achieved, kTol);
    EXPECT_LE(r.jacobian.diagonal().cwiseAbs().maxCoeff(), 10 * kTol) << p.id;
    EXPECT_TRUE(r.jacobian_invertible);
    EXPECT_GT(r.lipschitz_estimate, 0.0);
    ASSERT_EQ(r.payoffs_at_ne.size(), 4u);

    // Fixed-point residual recomputed from the per-player map.
    double fixed = 0.0;
    for (int i = 0; i < 4; ++i) fixed += QuantityForTotal(p.game, i, r.s_star);
    EXPECT_LE(std::abs(fixed - r.s_star), kTol);
  }
}

TEST(SolveEquilibriumTest, SingleSignChange) {
  for (const Preset& p : AllPresets()) {
    int changes = 0;
    double prev = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double s = p.game.action_cap() * k / 1000.0;
      double phi = -s;
      for (int i = 0; i < 4; ++i) phi += QuantityForTotal(p.game, i, s);
      if (k > 0 && (prev > 0.0) != (phi > 0.0)) ++changes;
      prev = phi;
    }
    EXPECT_EQ(changes, 1) << p.id;
  }
}

TEST(SolveEquilibriumTest, EquilibriumIsMutualBestResponse) {
  for (const Preset& p : AllPresets()) {
    const EquilibriumResult r = SolveEquilibrium(p.game);
    for (int i = 0; i < 4; ++i) {
      const BestResponse br =
          ComputeBestResponse(p.game, i, Without(r.x_star, i));
      EXPECT_NEAR(br.action, r.x_star[i], 1e-4) << p.id << " player " << i;
      EXPECT_NEAR(br.payoff, r.payoffs_at_ne[i], 1e-9);
    }
  }
}

TEST(SolveEquilibriumTest, RejectsInvalidGames) {
  const CournotGame costly = CournotGame::Symmetric(
      2, PriceFunction::Linear(), CostFunction::Linear(1.5));
  EXPECT_EQ(CodeOf([&] { SolveEquilibrium(costly); }),
            ErrorCode::kRejectedGame);
  EXPECT_EQ(CodeOf([] { SolveEquilibrium(FindPreset("G1").game, 0.0); }),
            ErrorCode::kDomain);
}

TEST(SolveEquilibriumTest, SinglePlayerIsMonopoly) {
  // Monopoly with p = 1 - y, c = 0.05: x = 0.95 / 2.
  const CournotGame mono = CournotGame::Symmetric(
      1, PriceFunction::PiecewiseLinear(), CostFunction::Linear(0.05));
  EXPECT_NEAR(SolveEquilibrium(mono).x_star[0], 0.475, 1e-9);
}

TEST(BestResponseTest, Examples) {
  const CournotGame m1 = FindPreset("M1").game;
  const BestResponse at_ne =
      ComputeBestResponse(m1, 0, std::vector<double>(3, 0.19));
  EXPECT_NEAR(at_ne.action, 0.19, 1e-6);
  EXPECT_NEAR(at_ne.payoff, 0.0361, 1e-6);
  EXPECT_NEAR(ComputeBestResponse(m1, 2, std::vector<double>(3, 0.0)).action,
              0.475, 1e-6);

  for (const char* id : {"M1", "M2", "G3", "G9"}) {
    const BestResponse flooded = ComputeBestResponse(
        FindPreset(id).game, 1, std::vector<double>{0.4, 0.4, 0.4});
    EXPECT_EQ(flooded.action, 0.0) << id;
    EXPECT_EQ(flooded.payoff, 0.0) << id;
  }
  EXPECT_EQ(CodeOf([&] { ComputeBestResponse(m1, 0, std::vector<double>(2)); }),
            ErrorCode::kDomain);
}

TEST(JacobianTest, EquilibriumOfLinearGame) {
  const Eigen::MatrixXd j =
      JacobianAt(FindPreset("M1").game, std::vector<double>(4, 0.19));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      EXPECT_NEAR(j(r, c), r == c ? 0.0 : -0.19, 1e-9);
    }
  }
}

TEST(JacobianTest, TwoPlayerHandExpansion) {
  // p = 1 - y, zero cost, x = (0.2, 0.3): p = 0.5, p' = -1.
  //   d pi_1/d x_1 = 0.5 - 0.2 = 0.3     d pi_1/d x_2 = -0.2
  //   d pi_2/d x_1 = -0.3                d pi_2/d x_2 = 0.5 - 0.3 = 0.2
  const CournotGame game =
      CournotGame::Symmetric(2, PriceFunction::Linear(), CostFunction::Linear(0));
  const std::vector<double> x = {0.2, 0.3};
  const Eigen::MatrixXd j = JacobianAt(game, x);
  Eigen::MatrixXd expected(2, 2);
  expected << 0.3, -0.2, -0.3, 0.2;
  EXPECT_LE((j - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((FdJacobian(game, x) - expected).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(JacobianTest, MatchesFiniteDifferences) {
  std::mt19937_64 rng(31);
  for (const Preset& p : AllPresets()) {
    for (int k = 0; k < 100; ++k) {
      const std::vector<double> x = RandomInteriorProfile(p.game, rng);
      const Eigen::MatrixXd an = JacobianAt(p.game, x);
      const Eigen::MatrixXd fd = FdJacobian(p.game, x);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          ASSERT_TRUE(RelClose(fd(r, c), an(r, c), 1e-5))
              << p.id << " (" << r << "," << c << ")";
        }
      }
    }
  }
}

TEST(JacobianTest, FlatRegionIsAnError) {
  EXPECT_EQ(CodeOf([] {
              JacobianAt(FindPreset("M2").game,
                         std::vector<double>{0.3, 0.3, 0.3, 0.3});
            }),
            ErrorCode::kFlatRegion);
}

TEST(InvertibilityTest, Basics) {
  const InvertibilityReport id = CheckInvertibility(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_TRUE(id.invertible);
  EXPECT_DOUBLE_EQ(id.condition_estimate, 1.0);
  const InvertibilityReport zero = CheckInvertibility(Eigen::MatrixXd::Zero(3, 3));
  EXPECT_FALSE(zero.invertible);
  EXPECT_TRUE(std::isinf(zero.condition_estimate));
  EXPECT_EQ(CodeOf([] { CheckInvertibility(Eigen::MatrixXd::Zero(2, 3)); }),
            ErrorCode::kDomain);
  for (const Preset& p : AllPresets()) {
    EXPECT_TRUE(CheckInvertibility(SolveEquilibrium(p.game).jacobian).invertible)
        << p.id;
  }
}

TEST(LipschitzTest, DiagonalMatrices) {
  EXPECT_NEAR(LipschitzEstimate(Eigen::MatrixXd::Identity(4, 4)), 1.0, 1e-12);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  EXPECT_NEAR(LipschitzEstimate(d), 0.5, 1e-12);
  EXPECT_EQ(CodeOf([] { LipschitzEstimate(Eigen::MatrixXd::Zero(2, 2)); }),
            ErrorCode::kSingularMatrix);
}

TEST(LipschitzTest, MatchesSingularValueOracle) {
  for (const Preset& p : AllPresets()) {
    const EquilibriumResult r = SolveEquilibrium(p.game);
    const double oracle = 1.0 / SmallestSingularValue(r.jacobian);
    EXPECT_NEAR(r.lipschitz_estimate, oracle, 1e-6 * oracle) << p.id;
  }
  // The linear game's Jacobian at 0.19 is -0.19 (11^T - I), with
  // eigenvalues 0.19 (x3) and -0.57.
  const EquilibriumResult m1 = SolveEquilibrium(FindPreset("M1").game);
  EXPECT_NEAR(m1.lipschitz_estimate, 1.0 / 0.19, 1e-6);
  std::cout << "M1 local Lipschitz estimate L = " << m1.lipschitz_estimate
            << '\n';
}

}  // namespace
}  // namespace cournot
