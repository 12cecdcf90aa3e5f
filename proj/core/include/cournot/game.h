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

#ifndef COURNOT_GAME_H_
#define COURNOT_GAME_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cournot {

enum class PriceKind {
  kLinear,           // a - b*y, unbounded below
  kPiecewiseLinear,  // max(a - b*y, 0)
  kQuadratic,        // 1 - y^2 on [0, 1], zero beyond
  kCubic,            // 1 - y^3 on [0, 1], zero beyond
  kExponential,      // e - e^y on [0, 1], zero beyond
  kCustomPolynomial, // sum_k c_k y^k up to its first zero, zero beyond
};

std::string_view PriceKindName(PriceKind kind);
PriceKind ParsePriceKind(std::string_view name);

// Derivative of the price together with a flag that is set when y lies in
// the region where the price is identically zero.
struct PriceSlope {
  double value = 0.0;
  bool flat = false;
};

// Inverse demand curve. Every kind is strictly decreasing and concave on
// [0, y_max]; all kinds except kLinear are clamped to zero from y_max on.
class PriceFunction {
 public:
  static PriceFunction Linear(double intercept = 1.0, double slope = 1.0);
  static PriceFunction PiecewiseLinear(double intercept = 1.0,
                                       double slope = 1.0);
  static PriceFunction Quadratic();
  static PriceFunction Cubic();
  static PriceFunction Exponential();
  // Coefficients in increasing degree order. y_max is the first positive
  // zero, located by bisection; if none exists below the search limit,
  // y_max falls back to 1 and reaches_zero() is false.
  static PriceFunction CustomPolynomial(std::vector<double> coefficients);
  static PriceFunction Make(PriceKind kind, std::vector<double> params);

  PriceKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  double y_max() const { return y_max_; }
  bool reaches_zero() const { return reaches_zero_; }
  bool has_flat_region() const { return kind_ != PriceKind::kLinear; }
  bool InFlatRegion(double y) const {
    return has_flat_region() && y >= y_max_;
  }

  // p(y). Throws kDomain for negative or non-finite y.
  double Value(double y) const;
  // p'(y), left derivative at the kink; zero with `flat` set beyond it.
  PriceSlope Slope(double y) const;
  // p''(y); zero in the flat region.
  double Curvature(double y) const;

 private:
  PriceFunction(PriceKind kind, std::vector<double> params);

  double SmoothValue(double y) const;
  double SmoothSlope(double y) const;
  double SmoothCurvature(double y) const;

  PriceKind kind_;
  std::vector<double> params_;
  double y_max_ = 1.0;
  bool reaches_zero_ = true;
};

enum class CostKind {
  kLinear,     // c*x
  kQuadratic,  // a*x^2
};

std::string_view CostKindName(CostKind kind);
CostKind ParseCostKind(std::string_view name);

class CostFunction {
 public:
  CostFunction(CostKind kind, double coefficient);
  static CostFunction Linear(double c) { return {CostKind::kLinear, c}; }
  static CostFunction Quadratic(double a) { return {CostKind::kQuadratic, a}; }

  CostKind kind() const { return kind_; }
  double coefficient() const { return coefficient_; }

  double Value(double x) const;
  double Marginal(double x) const;
  double Curvature(double x) const;

 private:
  CostKind kind_;
  double coefficient_;
};

// N producers of a homogeneous good sharing one market price. Each player's
// action is a quantity in [0, action_cap] with action_cap = price.y_max().
class CournotGame {
 public:
  CournotGame(PriceFunction price, std::vector<CostFunction> costs);
  static CournotGame Symmetric(int n_players, PriceFunction price,
                               CostFunction cost);

  int n_players() const { return static_cast<int>(costs_.size()); }
  const PriceFunction& price() const { return price_; }
  const std::vector<CostFunction>& costs() const { return costs_; }
  const CostFunction& cost(int player) const { return costs_.at(player); }
  double action_cap() const { return price_.y_max(); }

 private:
  PriceFunction price_;
  std::vector<CostFunction> costs_;
};

using ActionProfile = std::vector<double>;

// Throws kDomain unless x has one finite entry per player in
// [0, action_cap].
void CheckProfile(const CournotGame& game, std::span<const double> x);

// pi_i(own, others) where the opponents enter only through their total.
double PlayerPayoff(const CournotGame& game, int player, double own,
                    double others_total);
// d pi_i / d x_i at (own, others_total), flat-region convention.
double PlayerPayoffGradient(const CournotGame& game, int player, double own,
                            double others_total);

std::vector<double> Payoffs(const CournotGame& game,
                            std::span<const double> x);
std::vector<double> PayoffGradient(const CournotGame& game,
                                   std::span<const double> x);

struct ValidationReport {
  bool price_positive_at_zero = false;
  bool price_reaches_zero = false;
  bool price_strictly_decreasing = false;
  bool price_concave = false;
  bool costs_convex_increasing = false;
  bool price_exceeds_marginal_cost = false;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

// Sampled check of the concavity/monotonicity assumptions on a uniform grid
// of n_samples points (n_samples >= 2).
ValidationReport ValidateAssumptions(const CournotGame& game,
                                     int n_samples = 1001,
                                     double tolerance = 1e-9);

// <g(x) - g(x2), x - x2>. A strictly positive value certifies that the game
// is not monotone.
double MonotonicityProbe(const CournotGame& game, std::span<const double> x,
                         std::span<const double> x2);

}  // namespace cournot

#endif  // COURNOT_GAME_H_
