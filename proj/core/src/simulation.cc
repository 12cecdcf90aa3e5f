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

#include "cournot/simulation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "cournot/equilibrium.h"
#include "cournot/error.h"
#include "cournot/game_json.h"
#include "cournot/scalar_search.h"

namespace cournot {
namespace {

void CheckPlayer(const Trajectory& traj, int player) {
  if (player < 0 || player >= traj.n_players) {
    throw Error(ErrorCode::kDomain,
                "player index " + std::to_string(player) + " out of range");
  }
}

std::vector<double> OthersTotals(const Trajectory& traj, int player) {
  std::vector<double> others(traj.rounds);
  for (std::int64_t t = 0; t < traj.rounds; ++t) {
    double total = 0.0;
    for (int j = 0; j < traj.n_players; ++j) {
      if (j != player) total += traj.action(t, j);
    }
    others[t] = total;
  }
  return others;
}

BestFixedAction BestFixedFromOthers(const CournotGame& game, int player,
                                    std::span<const double> others,
                                    std::int64_t t) {
  auto cumulative = [&](double xhat) {
    double acc = 0.0;
    for (std::int64_t s = 0; s < t; ++s) {
      acc += PlayerPayoff(game, player, xhat, others[s]);
    }
    return acc;
  };
  const double cap = game.action_cap();
  const ScalarMax golden =
      GoldenSectionMax(cumulative, 0.0, cap, kRegretActionTolerance);
  BestFixedAction best{golden.argmax, golden.value, 0.0, cumulative(0.0)};
  for (int k = 1; k < kRegretGridPoints; ++k) {
    const double xhat = cap * k / (kRegretGridPoints - 1);
    const double value = cumulative(xhat);
    if (value > best.grid_value) {
      best.grid_action = xhat;
      best.grid_value = value;
    }
  }
  return best;
}

RegretPoint RegretFromOthers(const CournotGame& game, const Trajectory& traj,
                             int player, std::span<const double> others,
                             std::int64_t t) {
  const BestFixedAction best = BestFixedFromOthers(game, player, others, t);
  double realized = 0.0;
  for (std::int64_t s = 0; s < t; ++s) realized += traj.payoff(s, player);
  // The grid guards against a non-unimodal cumulative payoff.
  return best.golden_value >= best.grid_value
             ? RegretPoint{t, best.golden_value - realized, best.golden_action}
             : RegretPoint{t, best.grid_value - realized, best.grid_action};
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  return algorithm == Algorithm::kFkm ? "fkm" : "omd";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "fkm") return Algorithm::kFkm;
  if (name == "omd") return Algorithm::kOmd;
  throw Error(ErrorCode::kConfiguration,
              "unknown learner '" + std::string(name) + "'");
}

LearnerConfig LearnerConfigFromJson(const nlohmann::json& doc) {
  RejectUnknownKeys(doc,
                    {"algorithm", "eta0", "delta0", "variant", "eta",
                     "initial_action"},
                    "learner");
  try {
    LearnerConfig config;
    config.algorithm = ParseAlgorithm(doc.at("algorithm").get<std::string>());
    if (doc.contains("eta0")) config.eta0 = doc["eta0"].get<double>();
    if (doc.contains("delta0")) config.delta0 = doc["delta0"].get<double>();
    if (doc.contains("variant")) {
      config.variant = ParseOmdVariant(doc["variant"].get<std::string>());
    }
    if (doc.contains("eta") && !doc["eta"].is_null()) {
      config.eta = doc["eta"].get<double>();
    }
    if (doc.contains("initial_action") && !doc["initial_action"].is_null()) {
      config.initial_action = doc["initial_action"].get<double>();
    }
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfiguration,
                std::string("malformed learner block: ") + e.what());
  }
}

nlohmann::json LearnerConfigToJson(const LearnerConfig& config) {
  nlohmann::json doc = {{"algorithm", AlgorithmName(config.algorithm)},
                        {"eta0", config.eta0},
                        {"delta0", config.delta0},
                        {"variant", OmdVariantName(config.variant)}};
  doc["eta"] = config.eta ? nlohmann::json(*config.eta) : nlohmann::json();
  if (config.initial_action) doc["initial_action"] = *config.initial_action;
  return doc;
}

void CheckRunConfig(const RunConfig& config) {
  if (config.rounds < 1) {
    throw Error(ErrorCode::kConfiguration, "rounds must be >= 1");
  }
  if (config.record_stride < 1) {
    throw Error(ErrorCode::kConfiguration, "record_stride must be >= 1");
  }
  const int n = config.game.n_players();
  if (config.learners.size() != 1 &&
      static_cast<int>(config.learners.size()) != n) {
    throw Error(ErrorCode::kConfiguration,
                "learner list must have 1 or N entries");
  }
  for (const LearnerConfig& l : config.learners) {
    if (l.algorithm == Algorithm::kOmd &&
        config.feedback == FeedbackMode::kBandit) {
      throw Error(ErrorCode::kConfiguration,
                  "OMD needs gradient feedback, not bandit feedback");
    }
  }
}

std::vector<std::unique_ptr<Learner>> MakeLearners(const RunConfig& config) {
  CheckRunConfig(config);
  const double cap = config.game.action_cap();
  std::vector<std::unique_ptr<Learner>> learners;
  for (int i = 0; i < config.game.n_players(); ++i) {
    const LearnerConfig& l =
        config.learners.size() == 1 ? config.learners[0] : config.learners[i];
    if (l.algorithm == Algorithm::kFkm) {
      learners.push_back(std::make_unique<FkmLearner>(
          cap, l.eta0, l.delta0, l.initial_action));
    } else {
      learners.push_back(std::make_unique<OmdLearner>(
          cap, l.eta.value_or(OmdDefaultEta(config.rounds)), l.variant,
          l.initial_action.value_or(0.0)));
    }
  }
  return learners;
}

Trajectory RunGame(const RunConfig& config) {
  const ValidationReport report = ValidateAssumptions(config.game);
  if (!report.passed()) {
    throw Error(ErrorCode::kRejectedGame,
                "game fails validation: " + report.failures.front());
  }
  const auto learners = MakeLearners(config);
  return RunGame(config.game, learners, config.rounds, config.seed,
                 config.feedback);
}

Trajectory RunGame(const CournotGame& game,
                   std::span<const std::unique_ptr<Learner>> learners,
                   std::int64_t rounds, std::uint64_t seed,
                   FeedbackMode feedback) {
  const int n = game.n_players();
  if (static_cast<int>(learners.size()) != n) {
    throw Error(ErrorCode::kConfiguration, "need one learner per player");
  }
  if (rounds < 1) throw Error(ErrorCode::kConfiguration, "rounds must be >= 1");
  bool any_gradient = false;
  for (const auto& l : learners) {
    if (!l) throw Error(ErrorCode::kConfiguration, "null learner");
    any_gradient = any_gradient || l->NeedsGradient();
  }
  if (feedback == FeedbackMode::kAuto) {
    feedback = any_gradient ? FeedbackMode::kGradient : FeedbackMode::kBandit;
  }
  if (feedback == FeedbackMode::kBandit && any_gradient) {
    throw Error(ErrorCode::kConfiguration,
                "a gradient learner cannot run under bandit feedback");
  }
  const bool with_gradient = feedback == FeedbackMode::kGradient;

  Trajectory traj;
  traj.n_players = n;
  traj.rounds = rounds;
  traj.seed = seed;
  traj.actions.resize(rounds * n);
  traj.prices.resize(rounds);
  traj.payoffs.resize(rounds * n);
  if (with_gradient) traj.gradients.resize(rounds * n);

  std::mt19937_64 rng(seed);
  std::vector<double> x(n);
  for (std::int64_t t = 0; t < rounds; ++t) {
    for (int i = 0; i < n; ++i) {
      const int sign = (rng() >> 63) != 0 ? 1 : -1;
      x[i] = learners[i]->Act(sign);
    }
    CheckProfile(game, x);
    double total = 0.0;
    for (double xi : x) total += xi;
    const double price = game.price().Value(total);
    traj.prices[t] = price;
    for (int i = 0; i < n; ++i) {
      const double payoff = price * x[i] - game.cost(i).Value(x[i]);
      traj.actions[t * n + i] = x[i];
      traj.payoffs[t * n + i] = payoff;
      Feedback fb{payoff, std::nullopt};
      if (with_gradient) {
        fb.gradient = PlayerPayoffGradient(game, i, x[i], total - x[i]);
        traj.gradients[t * n + i] = *fb.gradient;
      }
      learners[i]->Observe(fb);
    }
  }
  return traj;
}

std::vector<std::int64_t> PowerOfTwoCheckpoints(std::int64_t rounds) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t <= rounds; t *= 2) out.push_back(t);
  if (out.empty() || out.back() != rounds) out.push_back(rounds);
  return out;
}

BestFixedAction FindBestFixedAction(const CournotGame& game,
                                    const Trajectory& traj, int player,
                                    std::int64_t t) {
  CheckPlayer(traj, player);
  if (t < 1 || t > traj.rounds) {
    throw Error(ErrorCode::kDomain, "regret horizon outside the trajectory");
  }
  const std::vector<double> others = OthersTotals(traj, player);
  return BestFixedFromOthers(game, player, others, t);
}

RegretPoint RegretAt(const CournotGame& game, const Trajectory& traj,
                     int player, std::int64_t t) {
  CheckPlayer(traj, player);
  if (t < 1 || t > traj.rounds) {
    throw Error(ErrorCode::kDomain, "regret horizon outside the trajectory");
  }
  const std::vector<double> others = OthersTotals(traj, player);
  return RegretFromOthers(game, traj, player, others, t);
}

RegretReport ComputeRegret(const CournotGame& game, const Trajectory& traj,
                           int player,
                           std::span<const std::int64_t> checkpoints) {
  CheckPlayer(traj, player);
  std::vector<std::int64_t> points(checkpoints.begin(), checkpoints.end());
  if (points.empty()) points = PowerOfTwoCheckpoints(traj.rounds);
  for (std::int64_t t : points) {
    if (t < 1 || t > traj.rounds) {
      throw Error(ErrorCode::kDomain, "regret checkpoint outside trajectory");
    }
  }
  const std::vector<double> others = OthersTotals(traj, player);

  RegretReport report;
  report.player = player;
  for (std::int64_t t : points) {
    report.regret_curve.push_back(
        RegretFromOthers(game, traj, player, others, t));
  }
  const RegretPoint total =
      points.back() == traj.rounds
          ? report.regret_curve.back()
          : RegretFromOthers(game, traj, player, others, traj.rounds);
  report.regret_total = total.regret;
  report.best_fixed_action = total.best_fixed_action;
  report.average_regret = total.regret / static_cast<double>(traj.rounds);
  return report;
}

std::vector<double> BestResponsePayoffSeries(const CournotGame& game,
                                             const Trajectory& traj,
                                             int player) {
  CheckPlayer(traj, player);
  const std::vector<double> others = OthersTotals(traj, player);
  std::vector<double> out(traj.rounds);
  for (std::int64_t t = 0; t < traj.rounds; ++t) {
    out[t] = ComputeBestResponseToTotal(game, player, others[t]).payoff;
  }
  return out;
}

void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out,
                        std::int64_t stride) {
  if (stride < 1) throw Error(ErrorCode::kDomain, "stride must be >= 1");
  const int n = traj.n_players;
  out << "t,price";
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  for (int i = 1; i <= n; ++i) out << ",payoff_" << i;
  if (traj.has_gradients()) {
    for (int i = 1; i <= n; ++i) out << ",grad_" << i;
  }
  out << '\n';
  for (std::int64_t t = 0; t < traj.rounds; ++t) {
    if (t % stride != 0 && t + 1 != traj.rounds) continue;
    out << (t + 1) << ',' << FormatNumber(traj.prices[t]);
    for (int i = 0; i < n; ++i) out << ',' << FormatNumber(traj.action(t, i));
    for (int i = 0; i < n; ++i) out << ',' << FormatNumber(traj.payoff(t, i));
    if (traj.has_gradients()) {
      for (int i = 0; i < n; ++i) {
        out << ',' << FormatNumber(traj.gradient(t, i));
      }
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing trajectory CSV");
}

Trajectory ReadTrajectoryCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kIo, "empty trajectory CSV");
  }
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  int n = 0;
  while (std::find(header.begin(), header.end(),
                   "x_" + std::to_string(n + 1)) != header.end()) {
    ++n;
  }
  const bool grads =
      std::find(header.begin(), header.end(), "grad_1") != header.end();
  const std::size_t width = 2 + static_cast<std::size_t>(n) * (grads ? 3 : 2);
  if (n == 0 || header.size() != width || header[0] != "t" ||
      header[1] != "price") {
    throw Error(ErrorCode::kIo, "unrecognized trajectory CSV header");
  }

  Trajectory traj;
  traj.n_players = n;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kIo, "non-numeric cell in trajectory CSV");
    }
    if (row.size() != width) {
      throw Error(ErrorCode::kIo, "ragged row in trajectory CSV");
    }
    traj.prices.push_back(row[1]);
    traj.actions.insert(traj.actions.end(), row.begin() + 2,
                        row.begin() + 2 + n);
    traj.payoffs.insert(traj.payoffs.end(), row.begin() + 2 + n,
                        row.begin() + 2 + 2 * n);
    if (grads) {
      traj.gradients.insert(traj.gradients.end(), row.begin() + 2 + 2 * n,
                            row.end());
    }
    ++traj.rounds;
  }
  return traj;
}

}  // namespace cournot
