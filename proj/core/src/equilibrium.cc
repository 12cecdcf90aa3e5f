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
#include <limits>
#include <string>

#include "cournot/error.h"
#include "cournot/scalar_search.h"

namespace cournot {
namespace {

constexpr int kInnerIterations = 200;
constexpr int kOuterIterations = 200;
constexpr int kPowerIterations = 100;
constexpr double kPivotThreshold = 1e-12;

double OneNorm(const Eigen::MatrixXd& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

void CheckPlayer(const CournotGame& game, int player) {
  if (player < 0 || player >= game.n_players()) {
    throw Error(ErrorCode::kDomain,
                "player index " + std::to_string(player) + " out of range");
  }
}

}  // namespace

double QuantityForTotal(const CournotGame& game, int player, double s) {
  CheckPlayer(game, player);
  const double cap = game.action_cap();
  if (!(s >= 0.0 && s <= cap)) {
    throw Error(ErrorCode::kDomain, "total production outside [0, y_max]");
  }
  const double p = game.price().Value(s);
  const double slope = game.price().Slope(s).value;
  const CostFunction& cost = game.cost(player);

  // h is strictly increasing in x: C' nondecreasing and -x p'(s) >= 0.
  auto h = [&](double x) { return cost.Marginal(x) - x * slope - p; };
  if (h(0.0) >= 0.0) return 0.0;
  if (h(cap) <= 0.0) return cap;
  if (cost.kind() == CostKind::kLinear) {
    return (p - cost.coefficient()) / -slope;
  }
  return BisectIncreasing(h, 0.0, cap, kInnerIterations);
}

EquilibriumResult SolveEquilibrium(const CournotGame& game, double tolerance) {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::kDomain, "solver tolerance must be positive");
  }
  const ValidationReport report = ValidateAssumptions(game);
  if (!report.passed()) {
    std::string msg = "game violates:";
    for (const std::string& f : report.failures) msg += " [" + f + "]";
    throw Error(ErrorCode::kRejectedGame, msg);
  }

  const int n = game.n_players();
  auto excess = [&](double s) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += QuantityForTotal(game, i, s);
    return total - s;
  };
  if (!(excess(0.0) > 0.0)) {
    throw Error(ErrorCode::kDegenerateGame,
                "no player produces at zero total output");
  }

  EquilibriumResult result;
  double lo = 0.0;
  double hi = game.action_cap();
  double s = 0.5 * (lo + hi);
  double phi = excess(s);
  for (result.iterations = 1;
       std::abs(phi) > tolerance && result.iterations < kOuterIterations;
       ++result.iterations) {
    (phi > 0.0 ? lo : hi) = s;
    s = 0.5 * (lo + hi);
    phi = excess(s);
  }

  result.s_star = s;
  result.tolerance_achieved = std::abs(phi);
  result.x_star.resize(n);
  for (int i = 0; i < n; ++i) result.x_star[i] = QuantityForTotal(game, i, s);
  result.price_at_ne = game.price().Value(s);
  result.price_slope_at_ne = game.price().Slope(s).value;
  result.payoffs_at_ne = Payoffs(game, result.x_star);
  result.jacobian = JacobianAt(game, result.x_star);
  const InvertibilityReport inv = CheckInvertibility(result.jacobian);
  result.jacobian_invertible = inv.invertible;
  result.condition_estimate = inv.condition_estimate;
  result.lipschitz_estimate = inv.invertible
                                  ? LipschitzEstimate(result.jacobian)
                                  : std::numeric_limits<double>::infinity();
  return result;
}

BestResponse ComputeBestResponseToTotal(const CournotGame& game, int player,
                                        double others_total) {
  CheckPlayer(game, player);
  const ScalarMax best = GoldenSectionMax(
      [&](double xi) { return PlayerPayoff(game, player, xi, others_total); },
      0.0, game.action_cap(), kBestResponseTolerance);
  return {best.argmax, best.value};
}

BestResponse ComputeBestResponse(const CournotGame& game, int player,
                                 std::span<const double> others) {
  CheckPlayer(game, player);
  if (static_cast<int>(others.size()) != game.n_players() - 1) {
    throw Error(ErrorCode::kDomain, "best response needs N - 1 opponents");
  }
  double total = 0.0;
  for (double o : others) {
    if (!std::isfinite(o) || o < 0.0 || o > game.action_cap()) {
      throw Error(ErrorCode::kDomain, "opponent action outside [0, cap]");
    }
    total += o;
  }
  return ComputeBestResponseToTotal(game, player, total);
}

Eigen::MatrixXd JacobianAt(const CournotGame& game,
                           std::span<const double> x) {
  CheckProfile(game, x);
  double total = 0.0;
  for (double xi : x) total += xi;
  if (game.price().InFlatRegion(total)) {
    throw Error(ErrorCode::kFlatRegion,
                "Jacobian requested where total production >= y_max");
  }
  const double price = game.price().Value(total);
  const double slope = game.price().Slope(total).value;
  const int n = game.n_players();
  Eigen::MatrixXd jacobian(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) jacobian(i, j) = x[i] * slope;
    jacobian(i, i) = price + x[i] * slope - game.cost(i).Marginal(x[i]);
  }
  return jacobian;
}

InvertibilityReport CheckInvertibility(const Eigen::MatrixXd& jacobian) {
  if (jacobian.rows() != jacobian.cols() || jacobian.rows() == 0) {
    throw Error(ErrorCode::kDomain, "invertibility check needs a square matrix");
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jacobian);
  InvertibilityReport report;
  report.invertible =
      (lu.matrixLU().diagonal().array().abs() > kPivotThreshold).all();
  report.condition_estimate =
      report.invertible ? OneNorm(jacobian) * OneNorm(lu.inverse())
                        : std::numeric_limits<double>::infinity();
  return report;
}

double LipschitzEstimate(const Eigen::MatrixXd& jacobian) {
  if (!CheckInvertibility(jacobian).invertible) {
    throw Error(ErrorCode::kSingularMatrix,
                "Lipschitz estimate needs an invertible Jacobian");
  }
  const Eigen::MatrixXd inverse =
      Eigen::PartialPivLU<Eigen::MatrixXd>(jacobian).inverse();
  const Eigen::MatrixXd gram = inverse.transpose() * inverse;

  // A ramp start vector avoids being orthogonal to the dominant direction
  // for the symmetric games, whose Jacobians have the all-ones eigenvector.
  Eigen::VectorXd v(gram.rows());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = 1.0 + k;
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < kPowerIterations; ++it) {
    const Eigen::VectorXd w = gram * v;
    lambda = v.dot(w);
    v = w.normalized();
  }
  lambda = v.dot(gram * v);
  return std::sqrt(lambda);
}

}  // namespace cournot
