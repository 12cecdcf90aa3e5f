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

#include "cournot/game.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "cournot/error.h"

namespace cournot {
namespace {

constexpr double kPolynomialScanStep = 1e-3;
constexpr double kPolynomialScanLimit = 100.0;
constexpr int kBisectionIterations = 200;

double Polynomial(const std::vector<double>& c, double y) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
  return acc;
}

double PolynomialDerivative(const std::vector<double>& c, double y) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * y + k * c[k];
  return acc;
}

double PolynomialSecondDerivative(const std::vector<double>& c, double y) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 2;) acc = acc * y + k * (k - 1) * c[k];
  return acc;
}

void RequireFinite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kConfiguration,
                std::string(what) + " must be finite");
  }
}

}  // namespace

std::string_view PriceKindName(PriceKind kind) {
  switch (kind) {
    case PriceKind::kLinear: return "linear";
    case PriceKind::kPiecewiseLinear: return "piecewise_linear";
    case PriceKind::kQuadratic: return "quadratic";
    case PriceKind::kCubic: return "cubic";
    case PriceKind::kExponential: return "exponential";
    case PriceKind::kCustomPolynomial: return "custom_polynomial";
  }
  return "unknown";
}

PriceKind ParsePriceKind(std::string_view name) {
  for (PriceKind kind :
       {PriceKind::kLinear, PriceKind::kPiecewiseLinear, PriceKind::kQuadratic,
        PriceKind::kCubic, PriceKind::kExponential,
        PriceKind::kCustomPolynomial}) {
    if (PriceKindName(kind) == name) return kind;
  }
  throw Error(ErrorCode::kConfiguration,
              "unknown price kind '" + std::string(name) + "'");
}

std::string_view CostKindName(CostKind kind) {
  switch (kind) {
    case CostKind::kLinear: return "linear";
    case CostKind::kQuadratic: return "quadratic";
  }
  return "unknown";
}

CostKind ParseCostKind(std::string_view name) {
  if (name == "linear") return CostKind::kLinear;
  if (name == "quadratic") return CostKind::kQuadratic;
  throw Error(ErrorCode::kConfiguration,
              "unknown cost kind '" + std::string(name) + "'");
}

// -- PriceFunction ------------------------------------------------------------

PriceFunction::PriceFunction(PriceKind kind, std::vector<double> params)
    : kind_(kind), params_(std::move(params)) {
  for (double p : params_) RequireFinite(p, "price parameter");
  switch (kind_) {
    case PriceKind::kLinear:
    case PriceKind::kPiecewiseLinear:
      if (params_.empty()) params_ = {1.0, 1.0};
      if (params_.size() != 2 || params_[0] <= 0.0 || params_[1] <= 0.0) {
        throw Error(ErrorCode::kConfiguration,
                    "linear price takes [intercept, slope], both positive");
      }
      y_max_ = params_[0] / params_[1];
      break;
    case PriceKind::kQuadratic:
    case PriceKind::kCubic:
    case PriceKind::kExponential:
      if (!params_.empty()) {
        throw Error(ErrorCode::kConfiguration,
                    std::string(PriceKindName(kind_)) +
                        " price takes no parameters");
      }
      y_max_ = 1.0;
      break;
    case PriceKind::kCustomPolynomial: {
      if (params_.empty()) {
        throw Error(ErrorCode::kConfiguration,
                    "custom_polynomial needs at least one coefficient");
      }
      // First sign change on a scan grid, refined by bisection.
      reaches_zero_ = false;
      y_max_ = 1.0;
      if (Polynomial(params_, 0.0) <= 0.0) break;
      double lo = 0.0;
      for (double hi = kPolynomialScanStep; hi <= kPolynomialScanLimit;
           hi += kPolynomialScanStep) {
        if (Polynomial(params_, hi) <= 0.0) {
          for (int it = 0; it < kBisectionIterations; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (Polynomial(params_, mid) > 0.0 ? lo : hi) = mid;
          }
          y_max_ = hi;
          reaches_zero_ = true;
          break;
        }
        lo = hi;
      }
      break;
    }
  }
}

PriceFunction PriceFunction::Linear(double intercept, double slope) {
  return PriceFunction(PriceKind::kLinear, {intercept, slope});
}
PriceFunction PriceFunction::PiecewiseLinear(double intercept, double slope) {
  return PriceFunction(PriceKind::kPiecewiseLinear, {intercept, slope});
}
PriceFunction PriceFunction::Quadratic() {
  return PriceFunction(PriceKind::kQuadratic, {});
}
PriceFunction PriceFunction::Cubic() {
  return PriceFunction(PriceKind::kCubic, {});
}
PriceFunction PriceFunction::Exponential() {
  return PriceFunction(PriceKind::kExponential, {});
}
PriceFunction PriceFunction::CustomPolynomial(
    std::vector<double> coefficients) {
  return PriceFunction(PriceKind::kCustomPolynomial, std::move(coefficients));
}
PriceFunction PriceFunction::Make(PriceKind kind, std::vector<double> params) {
  return PriceFunction(kind, std::move(params));
}

double PriceFunction::SmoothValue(double y) const {
  switch (kind_) {
    case PriceKind::kLinear:
    case PriceKind::kPiecewiseLinear:
      return params_[0] - params_[1] * y;
    case PriceKind::kQuadratic: return 1.0 - y * y;
    case PriceKind::kCubic: return 1.0 - y * y * y;
    case PriceKind::kExponential: return std::numbers::e - std::exp(y);
    case PriceKind::kCustomPolynomial: return Polynomial(params_, y);
  }
  return 0.0;
}

double PriceFunction::SmoothSlope(double y) const {
  switch (kind_) {
    case PriceKind::kLinear:
    case PriceKind::kPiecewiseLinear:
      return -params_[1];
    case PriceKind::kQuadratic: return -2.0 * y;
    case PriceKind::kCubic: return -3.0 * y * y;
    case PriceKind::kExponential: return -std::exp(y);
    case PriceKind::kCustomPolynomial: return PolynomialDerivative(params_, y);
  }
  return 0.0;
}

double PriceFunction::SmoothCurvature(double y) const {
  switch (kind_) {
    case PriceKind::kLinear:
    case PriceKind::kPiecewiseLinear:
      return 0.0;
    case PriceKind::kQuadratic: return -2.0;
    case PriceKind::kCubic: return -6.0 * y;
    case PriceKind::kExponential: return -std::exp(y);
    case PriceKind::kCustomPolynomial:
      return PolynomialSecondDerivative(params_, y);
  }
  return 0.0;
}

double PriceFunction::Value(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw Error(ErrorCode::kDomain, "price evaluated at negative quantity");
  }
  if (InFlatRegion(y)) return 0.0;
  return SmoothValue(y);
}

PriceSlope PriceFunction::Slope(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw Error(ErrorCode::kDomain, "price slope at negative quantity");
  }
  if (InFlatRegion(y)) return {0.0, true};
  return {SmoothSlope(y), false};
}

double PriceFunction::Curvature(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw Error(ErrorCode::kDomain, "price curvature at negative quantity");
  }
  if (InFlatRegion(y)) return 0.0;
  return SmoothCurvature(y);
}

// -- CostFunction -------------------------------------------------------------

CostFunction::CostFunction(CostKind kind, double coefficient)
    : kind_(kind), coefficient_(coefficient) {
  if (!std::isfinite(coefficient) || coefficient < 0.0) {
    throw Error(ErrorCode::kConfiguration,
                "cost coefficient must be finite and nonnegative");
  }
}

double CostFunction::Value(double x) const {
  return kind_ == CostKind::kLinear ? coefficient_ * x
                                    : coefficient_ * x * x;
}

double CostFunction::Marginal(double x) const {
  return kind_ == CostKind::kLinear ? coefficient_ : 2.0 * coefficient_ * x;
}

double CostFunction::Curvature(double) const {
  return kind_ == CostKind::kLinear ? 0.0 : 2.0 * coefficient_;
}

// -- CournotGame --------------------------------------------------------------

CournotGame::CournotGame(PriceFunction price, std::vector<CostFunction> costs)
    : price_(std::move(price)), costs_(std::move(costs)) {
  if (costs_.empty()) {
    throw Error(ErrorCode::kConfiguration, "a game needs at least one player");
  }
}

CournotGame CournotGame::Symmetric(int n_players, PriceFunction price,
                                   CostFunction cost) {
  if (n_players < 1) {
    throw Error(ErrorCode::kConfiguration, "a game needs at least one player");
  }
  return CournotGame(std::move(price),
                     std::vector<CostFunction>(n_players, cost));
}

void CheckProfile(const CournotGame& game, std::span<const double> x) {
  if (static_cast<int>(x.size()) != game.n_players()) {
    throw Error(ErrorCode::kDomain, "action profile has " +
                                        std::to_string(x.size()) +
                                        " entries for " +
                                        std::to_string(game.n_players()) +
                                        " players");
  }
  for (double xi : x) {
    if (!std::isfinite(xi) || xi < 0.0 || xi > game.action_cap()) {
      throw Error(ErrorCode::kDomain, "action outside [0, action_cap]");
    }
  }
}

double PlayerPayoff(const CournotGame& game, int player, double own,
                    double others_total) {
  return game.price().Value(own + others_total) * own -
         game.cost(player).Value(own);
}

double PlayerPayoffGradient(const CournotGame& game, int player, double own,
                            double others_total) {
  const double total = own + others_total;
  return game.price().Value(total) + own * game.price().Slope(total).value -
         game.cost(player).Marginal(own);
}

std::vector<double> Payoffs(const CournotGame& game,
                            std::span<const double> x) {
  CheckProfile(game, x);
  double total = 0.0;
  for (double xi : x) total += xi;
  const double price = game.price().Value(total);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = price * x[i] - game.cost(static_cast<int>(i)).Value(x[i]);
  }
  return out;
}

std::vector<double> PayoffGradient(const CournotGame& game,
                                   std::span<const double> x) {
  CheckProfile(game, x);
  double total = 0.0;
  for (double xi : x) total += xi;
  const double price = game.price().Value(total);
  const double slope = game.price().Slope(total).value;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = price + x[i] * slope -
             game.cost(static_cast<int>(i)).Marginal(x[i]);
  }
  return out;
}

ValidationReport ValidateAssumptions(const CournotGame& game, int n_samples,
                                     double tolerance) {
  if (n_samples < 2) {
    throw Error(ErrorCode::kDomain, "validation needs at least 2 samples");
  }
  ValidationReport report;
  const PriceFunction& price = game.price();
  const double y_max = price.y_max();

  std::vector<double> grid(n_samples);
  std::vector<double> p(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    grid[k] = y_max * k / (n_samples - 1);
    p[k] = price.Value(grid[k]);
  }

  report.price_positive_at_zero = p.front() > 0.0;
  if (!report.price_positive_at_zero) {
    report.failures.push_back("p(0) > 0");
  }

  report.price_reaches_zero = price.reaches_zero();
  if (!report.price_reaches_zero) {
    report.failures.push_back("p reaches zero at y_max");
  }

  report.price_strictly_decreasing = true;
  for (int k = 1; k < n_samples; ++k) {
    if (!(p[k] < p[k - 1])) {
      report.price_strictly_decreasing = false;
      break;
    }
  }
  if (!report.price_strictly_decreasing) {
    report.failures.push_back("p strictly decreasing");
  }

  report.price_concave = true;
  for (int k = 1; k + 1 < n_samples; ++k) {
    if (p[k - 1] - 2.0 * p[k] + p[k + 1] > tolerance) {
      report.price_concave = false;
      break;
    }
  }
  if (!report.price_concave) report.failures.push_back("p concave");

  report.costs_convex_increasing = true;
  report.price_exceeds_marginal_cost = true;
  for (int i = 0; i < game.n_players(); ++i) {
    const CostFunction& cost = game.cost(i);
    for (int k = 0; k < n_samples; ++k) {
      const double c = cost.Value(grid[k]);
      if (k > 0 && !(c > cost.Value(grid[k - 1]))) {
        report.costs_convex_increasing = false;
      }
      if (k > 0 && k + 1 < n_samples &&
          cost.Value(grid[k - 1]) - 2.0 * c + cost.Value(grid[k + 1]) <
              -tolerance) {
        report.costs_convex_increasing = false;
      }
    }
    if (!(p.front() > cost.Marginal(0.0))) {
      report.price_exceeds_marginal_cost = false;
    }
  }
  if (!report.costs_convex_increasing) {
    report.failures.push_back("C_i convex and strictly increasing");
  }
  if (!report.price_exceeds_marginal_cost) {
    report.failures.push_back("p(0) > C_i'(0)");
  }
  return report;
}

double MonotonicityProbe(const CournotGame& game, std::span<const double> x,
                         std::span<const double> x2) {
  const std::vector<double> g = PayoffGradient(game, x);
  const std::vector<double> g2 = PayoffGradient(game, x2);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += (g[i] - g2[i]) * (x[i] - x2[i]);
  }
  return acc;
}

}  // namespace cournot
