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

#include "experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "cournot/equilibrium.h"
#include "cournot/error.h"
#include "cournot/game_json.h"
#include "svg_plot.h"

namespace cournot::tools {
namespace {

// Sums of per-seed series; the only state shared between workers.
struct Collector {
  std::mutex mu;
  std::vector<double> distance;
  std::vector<std::vector<double>> avg_payoff;  // [player][t]
  std::vector<std::vector<double>> violation;   // [player][t]
  std::vector<double> regret;                   // per checkpoint
  std::vector<double> final_distance;           // per seed, in seed order
  std::vector<double> first_seed_actions;

  void Add(std::vector<double>& into, const std::vector<double>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) into[k] += v[k];
  }
};

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

nlohmann::json FiniteOrNull(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json();
}

}  // namespace

int WorkerCount() {
  if (const char* env = std::getenv("COURNOT_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ParallelFor(int n_tasks, int workers,
                 const std::function<void(int)>& fn) {
  workers = std::clamp(workers, 1, std::max(1, n_tasks));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (int k = next++; k < n_tasks; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n_tasks;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
}

ExperimentSummary RunExperiment(const ExperimentSpec& spec) {
  if (spec.seeds.empty()) {
    throw Error(ErrorCode::kConfiguration, "need at least one seed");
  }
  if (!(spec.epsilon > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "epsilon must be positive");
  }
  CheckRunConfig(RunConfig{spec.game, spec.learners, spec.rounds, 0,
                           spec.record_stride, FeedbackMode::kAuto});
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec || !std::filesystem::is_directory(spec.out_dir)) {
    throw Error(ErrorCode::kIo,
                "cannot create output directory " + spec.out_dir.string());
  }

  const EquilibriumResult ne = SolveEquilibrium(spec.game);
  const int n = spec.game.n_players();
  const std::int64_t rounds = spec.rounds;
  const std::vector<std::int64_t> checkpoints = PowerOfTwoCheckpoints(rounds);
  const int n_seeds = static_cast<int>(spec.seeds.size());

  Collector collector;
  collector.distance.assign(rounds, 0.0);
  collector.avg_payoff.assign(n, std::vector<double>(rounds, 0.0));
  collector.violation.assign(n, std::vector<double>(rounds, 0.0));
  collector.regret.assign(checkpoints.size(), 0.0);
  collector.final_distance.assign(n_seeds, 0.0);

  ExperimentSummary summary;
  summary.preset_id = spec.preset_id;
  summary.rounds = rounds;
  summary.seeds = spec.seeds;
  summary.x_star = ne.x_star;
  for (std::uint64_t seed : spec.seeds) {
    summary.trajectory_files.push_back(
        spec.out_dir / ("trajectory_seed_" + std::to_string(seed) + ".csv"));
  }
  summary.learner = std::string(AlgorithmName(spec.learners.front().algorithm));
  for (const LearnerConfig& l : spec.learners) {
    if (l.algorithm != spec.learners.front().algorithm) summary.learner = "mixed";
  }

  ParallelFor(n_seeds, WorkerCount(), [&](int k) {
    RunConfig config{spec.game, spec.learners, rounds, spec.seeds[k],
                     spec.record_stride, FeedbackMode::kAuto};
    const Trajectory traj = RunGame(config);
    {
      std::ofstream out = OpenForWrite(summary.trajectory_files[k]);
      WriteTrajectoryCsv(traj, out, spec.record_stride);
    }
    const std::vector<double> distance = DistanceToNe(traj, ne.x_star);
    std::vector<std::vector<double>> avg(n);
    std::vector<std::vector<double>> viol(n);
    std::vector<double> regret(checkpoints.size(), 0.0);
    for (int i = 0; i < n; ++i) {
      avg[i] = TimeAveragePayoff(traj, i);
      viol[i] = RunningViolationFraction(traj, i, ne.payoffs_at_ne[i],
                                         spec.epsilon);
      const RegretReport report = ComputeRegret(spec.game, traj, i, checkpoints);
      for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        regret[c] += report.regret_curve[c].regret /
                     static_cast<double>(checkpoints[c]);
      }
    }
    std::lock_guard<std::mutex> lock(collector.mu);
    collector.Add(collector.distance, distance);
    for (int i = 0; i < n; ++i) {
      collector.Add(collector.avg_payoff[i], avg[i]);
      collector.Add(collector.violation[i], viol[i]);
    }
    collector.Add(collector.regret, regret);
    collector.final_distance[k] = distance.back();
    if (k == 0) collector.first_seed_actions = traj.actions;
  });

  const double inv_seeds = 1.0 / n_seeds;
  for (double& v : collector.distance) v *= inv_seeds;
  for (int i = 0; i < n; ++i) {
    for (double& v : collector.avg_payoff[i]) v *= inv_seeds;
    for (double& v : collector.violation[i]) v *= inv_seeds;
    summary.violation_fraction_mean.push_back(collector.violation[i].back());
  }
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    summary.regret_curve_aggregate.push_back(
        {checkpoints[c], collector.regret[c] * inv_seeds / n});
  }
  summary.final_distance_median = Median(collector.final_distance);

  const RateWindow window = DefaultTailWindow(rounds);
  if (window.t_end - window.t_start + 1 >= 10) {
    summary.fit = FitRate(collector.distance, window);
    summary.fitted_exponent = summary.fit.exponent;
  } else {
    summary.fit.window = window;
    summary.fitted_exponent = std::nan("");
  }

  summary.metrics_file = spec.out_dir / "metrics.csv";
  {
    std::ofstream out = OpenForWrite(summary.metrics_file);
    out << "t,dist_l2";
    for (int i = 1; i <= n; ++i) out << ",avg_payoff_" << i;
    for (int i = 1; i <= n; ++i) out << ",violation_frac_" << i;
    out << '\n';
    for (std::int64_t t = 0; t < rounds; ++t) {
      if (t % spec.record_stride != 0 && t + 1 != rounds) continue;
      out << (t + 1) << ',' << FormatNumber(collector.distance[t]);
      for (int i = 0; i < n; ++i) {
        out << ',' << FormatNumber(collector.avg_payoff[i][t]);
      }
      for (int i = 0; i < n; ++i) {
        out << ',' << FormatNumber(collector.violation[i][t]);
      }
      out << '\n';
    }
    if (!out) throw Error(ErrorCode::kIo, "failed writing metrics CSV");
  }

  summary.plot_file = spec.out_dir / "actions.svg";
  {
    LineChart chart;
    chart.title = spec.preset_id + ": " + summary.learner + " actions (seed " +
                  std::to_string(spec.seeds.front()) + ")";
    chart.x_label = "round";
    chart.y_label = "production level";
    for (int i = 0; i < n; ++i) {
      LineSeries s;
      s.label = "player " + std::to_string(i + 1);
      s.x.resize(rounds);
      s.y.resize(rounds);
      for (std::int64_t t = 0; t < rounds; ++t) {
        s.x[t] = static_cast<double>(t + 1);
        s.y[t] = collector.first_seed_actions[t * n + i];
      }
      chart.series.push_back(std::move(s));
      chart.references.push_back(
          {"NE " + std::to_string(i + 1) + " = " + FormatNumber(ne.x_star[i]),
           ne.x_star[i]});
    }
    std::ofstream out = OpenForWrite(summary.plot_file);
    out << RenderLineChart(chart);
    if (!out) throw Error(ErrorCode::kIo, "failed writing SVG plot");
  }

  summary.summary_file = spec.out_dir / "summary.json";
  {
    std::ofstream out = OpenForWrite(summary.summary_file);
    out << SummaryToJson(spec, summary).dump(2) << '\n';
    if (!out) throw Error(ErrorCode::kIo, "failed writing summary JSON");
  }
  return summary;
}

nlohmann::json SummaryToJson(const ExperimentSpec& spec,
                             const ExperimentSummary& summary) {
  nlohmann::json learners = nlohmann::json::array();
  for (const LearnerConfig& l : spec.learners) {
    learners.push_back(LearnerConfigToJson(l));
  }
  nlohmann::json regret = nlohmann::json::array();
  for (const RegretAggregatePoint& p : summary.regret_curve_aggregate) {
    regret.push_back({{"t", p.t}, {"average_regret", p.average_regret}});
  }
  nlohmann::json files = {
      {"metrics", summary.metrics_file.string()},
      {"plot", summary.plot_file.string()},
      {"summary", summary.summary_file.string()},
      {"trajectories", nlohmann::json::array()}};
  for (const auto& f : summary.trajectory_files) {
    files["trajectories"].push_back(f.string());
  }
  return {
      {"spec_version", "1.0"},
      {"preset", summary.preset_id},
      {"game", GameToJson(spec.game)},
      {"learner", summary.learner},
      {"learner_config", learners},
      {"rounds", summary.rounds},
      {"seeds", summary.seeds},
      {"record_stride", spec.record_stride},
      {"epsilon", spec.epsilon},
      {"x_star", summary.x_star},
      {"final_distance_median", summary.final_distance_median},
      {"fitted_exponent", FiniteOrNull(summary.fitted_exponent)},
      {"rate_fit",
       {{"series", "seed-mean distance to NE"},
        {"window", {summary.fit.window.t_start, summary.fit.window.t_end}},
        {"window_rule", "tail [T/10, T], implementation default"},
        {"r_squared", summary.fit.r_squared},
        {"floored", summary.fit.floored}}},
      {"regret_curve_aggregate", regret},
      {"violation_fraction_mean", summary.violation_fraction_mean},
      {"files", files},
  };
}

}  // namespace cournot::tools
