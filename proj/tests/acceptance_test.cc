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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cournot/equilibrium.h"
#include "cournot/game.h"
#include "cournot/metrics.h"
#include "cournot/presets.h"
#include "cournot/simulation.h"
#include "test_support.h"

namespace cournot {
namespace {

using ::cournot::testing::FdJacobian;
using ::cournot::testing::FdPayoffPartial;
using ::cournot::testing::kShortRounds;
using ::cournot::testing::MakeRun;
using ::cournot::testing::RandomInteriorProfile;
using ::cournot::testing::RelClose;
using ::cournot::testing::ScriptedTrajectory;

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs `body` and prints its line; `limit_s` <= 0 means no runtime limit.
bool Report(int id, const char* name, double limit_s,
            const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = Seconds(start);
  std::ostringstream timing;
  timing << elapsed << " s";
  if (limit_s > 0) {
    timing << " (limit " << limit_s << " s)";
    if (elapsed >= limit_s) o.ok = false;
  }
  std::printf("AC%d %s %s: %s; %s\n", id, o.ok ? "PASS" : "FAIL", name,
              o.detail.c_str(), timing.str().c_str());
  std::fflush(stdout);
  return o.ok;
}

Outcome TableReproduction() {
  double worst = 0.0;
  for (const Preset* p : TablePresets()) {
    const EquilibriumResult r = SolveEquilibrium(p->game);
    for (std::size_t i = 0; i < r.x_star.size(); ++i) {
      worst = std::max(worst, std::abs(r.x_star[i] - (*p->expected_ne)[i]));
    }
  }
  std::ostringstream s;
  s << "max |computed - tabulated| = " << worst << " over G1-G9";
  return {worst <= 1e-3, s.str()};
}

Outcome MainTextEquilibrium() {
  double worst = 0.0;
  for (const char* id : {"M1", "M2"}) {
    for (double xi : SolveEquilibrium(FindPreset(id).game).x_star) {
      worst = std::max(worst, std::abs(xi - 0.19));
    }
  }
  std::ostringstream s;
  s << "max |x_i - 0.19| = " << worst << " over M1, M2";
  return {worst <= 1e-3, s.str()};
}

Outcome CounterExample() {
  const CournotGame game = FindPreset("M2").game;
  const ProbePair pair = CounterExamplePair();
  const auto start = Clock::now();
  const double v = MonotonicityProbe(game, pair.x, pair.x2);
  const double elapsed = Seconds(start);
  std::ostringstream s;
  s << "probe = " << v << ", evaluation " << elapsed * 1e6 << " us";
  return {std::abs(v - 0.0242) <= 1e-4 && elapsed < 1e-3, s.str()};
}

Outcome OmdConvergence() {
  double worst = 0.0;
  double slowest = 0.0;
  for (const char* id : {"M1", "M2"}) {
    const CournotGame game = FindPreset(id).game;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto start = Clock::now();
      const Trajectory traj = RunGame(MakeRun(game, Algorithm::kOmd, 1000, seed));
      slowest = std::max(slowest, Seconds(start));
      for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(traj.action(999, i) - 0.19));
      }
    }
  }
  std::ostringstream s;
  s << "max final |x_i - 0.19| = " << worst << " (10 runs), slowest run "
    << slowest << " s";
  return {worst <= 0.01 && slowest < 1.0, s.str()};
}

Outcome FkmTrend() {
  const CournotGame game = FindPreset("M1").game;
  const EquilibriumResult ne = SolveEquilibrium(game);
  std::vector<std::vector<double>> distances;
  int monotone_seeds = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Trajectory traj = RunGame(MakeRun(game, Algorithm::kFkm, 10000, seed));
    distances.push_back(DistanceToNe(traj, ne.x_star));
    const MeasureReport m = ViolationFraction(traj, ne.payoffs_at_ne, 0.02);
    bool ok = true;
    for (const auto& curve : m.violation_curve) {
      for (std::size_t k = curve.size() - 3; k < curve.size(); ++k) {
        if (curve[k].fraction > curve[k - 1].fraction) ok = false;
      }
    }
    if (ok) ++monotone_seeds;
  }
  const RateFit fit = FitRate(AverageSeries(distances), {1000, 10000});
  std::ostringstream s;
  s << "seed-mean distance exponent = " << fit.exponent
    << ", violation curve nonincreasing over last 4 checkpoints for "
    << monotone_seeds << "/20 seeds";
  return {fit.exponent < -0.05 && monotone_seeds >= 15, s.str()};
}

Outcome RateOrdering() {
  const CournotGame game = FindPreset("M1").game;
  const EquilibriumResult ne = SolveEquilibrium(game);
  constexpr std::int64_t kRounds = 1000;
  double medians[2];
  const Algorithm algs[2] = {Algorithm::kOmd, Algorithm::kFkm};
  for (int a = 0; a < 2; ++a) {
    std::vector<double> exponents;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Trajectory traj = RunGame(MakeRun(game, algs[a], kRounds, seed));
      exponents.push_back(
          FitRate(DistanceToNe(traj, ne.x_star), DefaultTailWindow(kRounds))
              .exponent);
    }
    medians[a] = Median(exponents);
  }
  std::ostringstream s;
  s << "median exponent OMD = " << medians[0] << ", FKM = " << medians[1]
    << " (T = " << kRounds << ", window [T/10, T])";
  return {medians[0] < medians[1], s.str()};
}

Outcome RegretSublinearity() {
  const CournotGame game = FindPreset("M1").game;
  const std::int64_t points[] = {1000, 10000};
  std::ostringstream s;
  bool ok = true;
  for (Algorithm alg : {Algorithm::kFkm, Algorithm::kOmd}) {
    int passing = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Trajectory traj = RunGame(MakeRun(game, alg, 10000, seed));
      bool all = true;
      for (int i = 0; i < 4; ++i) {
        const RegretReport r = ComputeRegret(game, traj, i, points);
        if (r.regret_curve[1].regret / 10000 >= r.regret_curve[0].regret / 1000) {
          all = false;
        }
      }
      if (all) ++passing;
    }
    s << AlgorithmName(alg) << " " << passing << "/20 seeds, ";
    ok = ok && passing >= 18;
  }

  std::mt19937_64 rng(99);
  const std::vector<Preset> presets = AllPresets();
  double worst_value = 0.0;
  double worst_cells = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Preset& p = presets[k % presets.size()];
    std::uniform_int_distribution<int> len(2, kShortRounds);
    std::uniform_real_distribution<double> unif(0.0, p.game.action_cap() / 2);
    const int rounds = len(rng);
    std::vector<std::vector<double>> actions(4, std::vector<double>(rounds));
    for (auto& row : actions) {
      for (double& v : row) v = unif(rng);
    }
    const Trajectory traj = ScriptedTrajectory(p.game, actions);
    const BestFixedAction b = FindBestFixedAction(p.game, traj, k % 4, rounds);
    const double cell = p.game.action_cap() / (kRegretGridPoints - 1);
    worst_value = std::max(worst_value, std::abs(b.golden_value - b.grid_value));
    worst_cells =
        std::max(worst_cells, std::abs(b.golden_action - b.grid_action) / cell);
  }
  s << "oracle vs grid: max payoff gap " << worst_value << ", max action gap "
    << worst_cells << " cells";
  ok = ok && worst_value <= 1e-6 && worst_cells <= 1.0;
  return {ok, s.str()};
}

Outcome AnalyticVsNumeric() {
  std::mt19937_64 rng(8);
  int grad_bad = 0;
  int jac_bad = 0;
  int grad_total = 0;
  int jac_total = 0;
  double br_worst = 0.0;
  double diag_worst = 0.0;
  bool invertible = true;
  for (const Preset& p : AllPresets()) {
    for (int k = 0; k < 1000; ++k) {
      const std::vector<double> x = RandomInteriorProfile(p.game, rng);
      const std::vector<double> g = PayoffGradient(p.game, x);
      for (int i = 0; i < 4; ++i) {
        ++grad_total;
        if (!RelClose(FdPayoffPartial(p.game, x, i, i), g[i], 1e-5)) ++grad_bad;
      }
      if (k < 100) {
        const Eigen::MatrixXd an = JacobianAt(p.game, x);
        const Eigen::MatrixXd fd = FdJacobian(p.game, x);
        for (int r = 0; r < 4; ++r) {
          for (int c = 0; c < 4; ++c) {
            ++jac_total;
            if (!RelClose(fd(r, c), an(r, c), 1e-5)) ++jac_bad;
          }
        }
      }
    }
    const EquilibriumResult ne = SolveEquilibrium(p.game);
    for (int i = 0; i < 4; ++i) {
      std::vector<double> others = ne.x_star;
      others.erase(others.begin() + i);
      br_worst = std::max(
          br_worst,
          std::abs(ComputeBestResponse(p.game, i, others).action - ne.x_star[i]));
    }
    invertible = invertible && CheckInvertibility(ne.jacobian).invertible;
    diag_worst =
        std::max(diag_worst, ne.jacobian.diagonal().cwiseAbs().maxCoeff());
  }
  std::ostringstream s;
  s << "gradient FD mismatches " << grad_bad << "/" << grad_total
    << ", Jacobian FD mismatches " << jac_bad << "/" << jac_total
    << ", max |BR - x*| = " << br_worst << ", max |J_ii| at NE = "
    << diag_worst << (invertible ? ", all invertible" : ", SINGULAR");
  return {grad_bad == 0 && jac_bad == 0 && br_worst <= 1e-4 &&
              diag_worst <= 1e-6 && invertible,
          s.str()};
}

}  // namespace
}  // namespace cournot

int main() {
  using namespace cournot;
  bool ok = true;
  ok &= Report(1, "NE table reproduction", 1.0, TableReproduction);
  ok &= Report(2, "main-text NE", 1.0, MainTextEquilibrium);
  ok &= Report(3, "counter-example probe", 0.0, CounterExample);
  ok &= Report(4, "OMD convergence", 0.0, OmdConvergence);
  ok &= Report(5, "FKM convergence trend", 30.0, FkmTrend);
  ok &= Report(6, "rate ordering", 60.0, RateOrdering);
  ok &= Report(7, "regret sublinearity", 0.0, RegretSublinearity);
  ok &= Report(8, "analytic vs numeric", 0.0, AnalyticVsNumeric);
  std::printf("%s\n", ok ? "ALL ACCEPTANCE CRITERIA PASS"
                         : "SOME ACCEPTANCE CRITERIA FAIL");
  return ok ? 0 : 1;
}
