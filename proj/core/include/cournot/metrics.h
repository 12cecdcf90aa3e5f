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

#ifndef COURNOT_METRICS_H_
#define COURNOT_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cournot/simulation.h"

namespace cournot {

inline constexpr double kDefaultEpsilon = 0.02;

// Running mean of player i's realized payoff.
std::vector<double> TimeAveragePayoff(const Trajectory& traj, int player);

struct ViolationPoint {
  std::int64_t t = 0;
  double fraction = 0.0;
};

struct MeasureReport {
  double epsilon = 0.0;
  std::vector<double> violation_fraction;  // per player, over all rounds
  // Per player, fraction over the prefix [1, t] at each checkpoint.
  std::vector<std::vector<ViolationPoint>> violation_curve;
};

// Fraction of rounds with |pi_i(x_t) - pi_i(x*)| > epsilon, overall and on
// power-of-two prefixes. Throws kDomain for epsilon <= 0.
MeasureReport ViolationFraction(const Trajectory& traj,
                                std::span<const double> payoffs_at_ne,
                                double epsilon = kDefaultEpsilon);

// Per-round running violation fraction for one player (length T).
std::vector<double> RunningViolationFraction(
    const Trajectory& traj, int player, double payoff_at_ne, double epsilon);

// ||x_t - x*||_2 per round.
std::vector<double> DistanceToNe(const Trajectory& traj,
                                 std::span<const double> x_star);

struct RateWindow {
  std::int64_t t_start = 1;  // 1-based, inclusive
  std::int64_t t_end = 1;
};

struct RateFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  RateWindow window;
  bool floored = false;  // some entries were raised to kRateFloor
};

inline constexpr double kRateFloor = 1e-15;

// Least-squares fit of log(series_t) on log(t) over the window, with t the
// 1-based round index. Throws kDomain for windows shorter than 10 rounds or
// outside the series.
RateFit FitRate(std::span<const double> series, RateWindow window);

// Tail window [T/10, T].
RateWindow DefaultTailWindow(std::int64_t rounds);

// Element-wise mean of equally long series.
std::vector<double> AverageSeries(std::span<const std::vector<double>> series);

double Median(std::vector<double> values);

}  // namespace cournot

#endif  // COURNOT_METRICS_H_
