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

#ifndef COURNOT_EQUILIBRIUM_H_
#define COURNOT_EQUILIBRIUM_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cournot/game.h"

namespace cournot {

inline constexpr double kDefaultSolverTolerance = 1e-10;

struct EquilibriumResult {
  ActionProfile x_star;
  double s_star = 0.0;             // total production at the equilibrium
  double price_at_ne = 0.0;        // p(s*)
  double price_slope_at_ne = 0.0;  // p'(s*), negative
  std::vector<double> payoffs_at_ne;
  Eigen::MatrixXd jacobian;        // of the payoff map at x*
  bool jacobian_invertible = false;
  double condition_estimate = 0.0;
  // Spectral norm of the inverse Jacobian; +inf if the Jacobian is singular.
  double lipschitz_estimate = 0.0;
  double tolerance_achieved = 0.0;  // |sum_i x_i(s*) - s*|
  int iterations = 0;
};

// Player i's production consistent with total production s: the x >= 0
// solving p(s) = C_i'(x) - x p'(s), or 0 if none exists. Nonincreasing in s.
// Throws kDomain for s outside [0, y_max].
double QuantityForTotal(const CournotGame& game, int player, double s);

// The unique Nash equilibrium, found as the fixed point of
// s -> sum_i QuantityForTotal(i, s) by bisection on [0, y_max].
// Throws kRejectedGame if the game fails ValidateAssumptions and
// kDegenerateGame if the fixed-point map does not start above the diagonal.
EquilibriumResult SolveEquilibrium(const CournotGame& game,
                                   double tolerance = kDefaultSolverTolerance);

struct BestResponse {
  double action = 0.0;
  double payoff = 0.0;
};

inline constexpr double kBestResponseTolerance = 1e-9;

// argmax over [0, action_cap] of xi -> pi_i(xi, others). `others` holds the
// N - 1 opponent quantities in player order with player i removed.
BestResponse ComputeBestResponse(const CournotGame& game, int player,
                                 std::span<const double> others);
// Same, with the opponents summarized by their total production.
BestResponse ComputeBestResponseToTotal(const CournotGame& game, int player,
                                        double others_total);

// J_ij = d pi_i / d x_j. Throws kFlatRegion when sum(x) >= y_max for a
// price with a flat region.
Eigen::MatrixXd JacobianAt(const CournotGame& game, std::span<const double> x);

struct InvertibilityReport {
  bool invertible = false;
  double condition_estimate = 0.0;  // ||J||_1 ||J^-1||_1, +inf if singular
};

InvertibilityReport CheckInvertibility(const Eigen::MatrixXd& jacobian);

// Local Lipschitz estimate of the inverse payoff map: ||J^-1||_2 from 100
// power iterations on J^-T J^-1. Throws kSingularMatrix for singular J.
double LipschitzEstimate(const Eigen::MatrixXd& jacobian);

}  // namespace cournot

#endif  // COURNOT_EQUILIBRIUM_H_
