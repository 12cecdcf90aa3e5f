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

#ifndef COURNOT_SIMULATION_H_
#define COURNOT_SIMULATION_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cournot/game.h"
#include "cournot/learners.h"

namespace cournot {

enum class Algorithm { kFkm, kOmd };

std::string_view AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view name);

struct LearnerConfig {
  Algorithm algorithm = Algorithm::kOmd;
  double eta0 = kFkmDefaultEta0;
  double delta0 = kFkmDefaultDelta0;
  OmdVariant variant = OmdVariant::kAgile;
  std::optional<double> eta;  // OMD step; defaults to 1 / (2 sqrt(T))
  // FKM pivot y_1 (default cap / 2) or OMD y_1 (default 0).
  std::optional<double> initial_action;
};

// {"algorithm": "fkm"|"omd", "eta0", "delta0", "variant", "eta",
//  "initial_action"}; every key but "algorithm" optional, others rejected.
LearnerConfig LearnerConfigFromJson(const nlohmann::json& doc);
nlohmann::json LearnerConfigToJson(const LearnerConfig& config);

enum class FeedbackMode {
  kAuto,      // gradient feedback iff some learner needs it
  kBandit,    // own payoff only
  kGradient,  // own payoff plus own payoff gradient
};

struct RunConfig {
  CournotGame game;
  // One entry applied to every player, or exactly one per player.
  std::vector<LearnerConfig> learners;
  std::int64_t rounds = 1000;
  std::uint64_t seed = 0;
  std::int64_t record_stride = 1;
  FeedbackMode feedback = FeedbackMode::kAuto;
};

// Throws kConfiguration on an invalid config.
void CheckRunConfig(const RunConfig& config);

std::vector<std::unique_ptr<Learner>> MakeLearners(const RunConfig& config);

// Full-resolution record of a run; matrices are row-major T x N.
struct Trajectory {
  int n_players = 0;
  std::int64_t rounds = 0;
  std::uint64_t seed = 0;
  std::vector<double> actions;
  std::vector<double> prices;
  std::vector<double> payoffs;
  std::vector<double> gradients;  // empty under bandit feedback

  bool has_gradients() const { return !gradients.empty(); }
  std::span<const double> actions_at(std::int64_t t) const {
    return {actions.data() + t * n_players, static_cast<std::size_t>(n_players)};
  }
  double action(std::int64_t t, int i) const {
    return actions[t * n_players + i];
  }
  double payoff(std::int64_t t, int i) const {
    return payoffs[t * n_players + i];
  }
  double gradient(std::int64_t t, int i) const {
    return gradients[t * n_players + i];
  }
};

// Builds learners from `config` and plays `config.rounds` rounds.
Trajectory RunGame(const RunConfig& config);

// Plays with caller-supplied learners, one per player. The engine owns the
// random generator (seeded with `seed`) and draws one sign per player per
// round in player order.
Trajectory RunGame(const CournotGame& game,
                   std::span<const std::unique_ptr<Learner>> learners,
                   std::int64_t rounds, std::uint64_t seed,
                   FeedbackMode feedback);

struct RegretPoint {
  std::int64_t t = 0;
  double regret = 0.0;
  double best_fixed_action = 0.0;
};

struct RegretReport {
  int player = 0;
  double regret_total = 0.0;
  double best_fixed_action = 0.0;
  double average_regret = 0.0;
  std::vector<RegretPoint> regret_curve;
};

inline constexpr double kRegretActionTolerance = 1e-7;
inline constexpr int kRegretGridPoints = 2001;

// Both routes to the best fixed action for the first `t` rounds: golden-section
// search (the cumulative payoff is concave in the action) and a uniform grid
// of kRegretGridPoints points over [0, action_cap].
struct BestFixedAction {
  double golden_action = 0.0;
  double golden_value = 0.0;
  double grid_action = 0.0;
  double grid_value = 0.0;
};

BestFixedAction FindBestFixedAction(const CournotGame& game,
                                    const Trajectory& traj, int player,
                                    std::int64_t t);

// Regret of `player` over the first `t` rounds against the best fixed action
// in [0, action_cap], found by golden-section search and cross-checked
// against a 2001-point grid (the better of the two is kept).
RegretPoint RegretAt(const CournotGame& game, const Trajectory& traj,
                     int player, std::int64_t t);

// Checkpoints default to the powers of two below T followed by T itself.
RegretReport ComputeRegret(const CournotGame& game, const Trajectory& traj,
                           int player,
                           std::span<const std::int64_t> checkpoints = {});

// a_t = best-response payoff of `player` against the recorded opponents.
std::vector<double> BestResponsePayoffSeries(const CournotGame& game,
                                             const Trajectory& traj,
                                             int player);

// Powers of two up to T, then T if it is not one.
std::vector<std::int64_t> PowerOfTwoCheckpoints(std::int64_t rounds);

// Header `t,price,x_1..x_N,payoff_1..payoff_N[,grad_1..grad_N]`, rounds
// numbered from 1, every `stride`-th round (and always the last), 9
// significant digits.
void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out,
                        std::int64_t stride = 1);

// Inverse of WriteTrajectoryCsv for full-resolution files. Throws kIo on a
// malformed file.
Trajectory ReadTrajectoryCsv(std::istream& in);

}  // namespace cournot

#endif  // COURNOT_SIMULATION_H_
