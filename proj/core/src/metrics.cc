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

#include <algorithm>
#include <cmath>

#include "cournot/error.h"

namespace cournot {
namespace {

void CheckPlayer(const Trajectory& traj, int player) {
  if (player < 0 || player >= traj.n_players) {
    throw Error(ErrorCode::kDomain, "player index out of range");
  }
}

}  // namespace

std::vector<double> TimeAveragePayoff(const Trajectory& traj, int player) {
  CheckPlayer(traj, player);
  std::vector<double> out(traj.rounds);
  double sum = 0.0;
  for (std::int64_t t = 0; t < traj.rounds; ++t) {
    sum += traj.payoff(t, player);
    out[t] = sum / static_cast<double>(t + 1);
  }
  return out;
}

std::vector<double> RunningViolationFraction(const Trajectory& traj,
                                             int player, double payoff_at_ne,
                                             double epsilon) {
  CheckPlayer(traj, player);
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kDomain, "epsilon must be positive");
  }
  std::vector<double> out(traj.rounds);
  std::int64_t count = 0;
  for (std::int64_t t = 0; t < traj.rounds; ++t) {
    if (std::abs(traj.payoff(t, player) - payoff_at_ne) > epsilon) ++count;
    out[t] = static_cast<double>(count) / static_cast<double>(t + 1);
  }
  return out;
}

MeasureReport ViolationFraction(const Trajectory& traj,
                                std::span<const double> payoffs_at_ne,
                                double epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kDomain, "epsilon must be positive");
  }
  if (static_cast<int>(payoffs_at_ne.size()) != traj.n_players) {
    throw Error(ErrorCode::kDomain, "need one equilibrium payoff per player");
  }
  MeasureReport report;
  report.epsilon = epsilon;
  const std::vector<std::int64_t> checkpoints =
      PowerOfTwoCheckpoints(traj.rounds);
  for (int i = 0; i < traj.n_players; ++i) {
    const std::vector<double> running =
        RunningViolationFraction(traj, i, payoffs_at_ne[i], epsilon);
    report.violation_fraction.push_back(running.back());
    std::vector<ViolationPoint> curve;
    for (std::int64_t t : checkpoints) curve.push_back({t, running[t - 1]});
    report.violation_curve.push_back(std::move(curve));
  }
  return report;
}

std::vector<double> DistanceToNe(const Trajectory& traj,
                                 std::span<const double> x_star) {
  if (static_cast<int>(x_star.size()) != traj.n_players) {
    throw Error(ErrorCode::kDomain, "equilibrium has the wrong dimension");
  }
  std::vector<double> out(traj.rounds);
  for (std::int64_t t = 0; t < traj.rounds; ++t) {
    double acc = 0.0;
    for (int i = 0; i < traj.n_players; ++i) {
      const double d = traj.action(t, i) - x_star[i];
      acc += d * d;
    }
    out[t] = std::sqrt(acc);
  }
  return out;
}

RateFit FitRate(std::span<const double> series, RateWindow window) {
  if (window.t_start < 1 ||
      window.t_end > static_cast<std::int64_t>(series.size()) ||
      window.t_end - window.t_start + 1 < 10) {
    throw Error(ErrorCode::kDomain,
                "rate window must hold >= 10 rounds inside the series");
  }
  RateFit fit;
  fit.window = window;
  const std::int64_t m = window.t_end - window.t_start + 1;
  std::vector<double> lx(m);
  std::vector<double> ly(m);
  double mx = 0.0;
  double my = 0.0;
  for (std::int64_t k = 0; k < m; ++k) {
    const std::int64_t t = window.t_start + k;
    double v = series[t - 1];
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNumeric, "non-finite entry in rate series");
    }
    if (v < kRateFloor) {
      v = kRateFloor;
      fit.floored = true;
    }
    lx[k] = std::log(static_cast<double>(t));
    ly[k] = std::log(v);
    mx += lx[k];
    my += ly[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::int64_t k = 0; k < m; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double sse = 0.0;
  for (std::int64_t k = 0; k < m; ++k) {
    const double r = ly[k] - (fit.intercept + fit.exponent * lx[k]);
    sse += r * r;
  }
  // A constant series is fitted exactly.
  fit.r_squared =
      syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  return fit;
}

RateWindow DefaultTailWindow(std::int64_t rounds) {
  return {std::max<std::int64_t>(1, rounds / 10), rounds};
}

std::vector<double> AverageSeries(
    std::span<const std::vector<double>> series) {
  if (series.empty()) return {};
  std::vector<double> out(series.front().size(), 0.0);
  for (const std::vector<double>& s : series) {
    if (s.size() != out.size()) {
      throw Error(ErrorCode::kDomain, "series lengths differ");
    }
    for (std::size_t k = 0; k < s.size(); ++k) out[k] += s[k];
  }
  for (double& v : out) v /= static_cast<double>(series.size());
  return out;
}

double Median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kDomain, "median of nothing");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace cournot
