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

#ifndef COURNOT_TOOLS_EXPERIMENT_H_
#define COURNOT_TOOLS_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cournot/game.h"
#include "cournot/metrics.h"
#include "cournot/simulation.h"

namespace cournot::tools {

struct ExperimentSpec {
  std::string preset_id;  // "custom" for games loaded from a config file
  CournotGame game;
  std::vector<LearnerConfig> learners;
  std::int64_t rounds = 1000;
  std::vector<std::uint64_t> seeds;
  std::int64_t record_stride = 1;
  double epsilon = kDefaultEpsilon;
  std::filesystem::path out_dir;
};

struct RegretAggregatePoint {
  std::int64_t t = 0;
  double average_regret = 0.0;  // mean over seeds and players of R_i(t) / t
};

struct ExperimentSummary {
  std::string preset_id;
  std::string learner;
  std::int64_t rounds = 0;
  std::vector<std::uint64_t> seeds;
  ActionProfile x_star;
  double final_distance_median = 0.0;
  double fitted_exponent = 0.0;
  RateFit fit;
  std::vector<RegretAggregatePoint> regret_curve_aggregate;
  std::vector<double> violation_fraction_mean;  // per player
  std::vector<std::filesystem::path> trajectory_files;
  std::filesystem::path metrics_file;
  std::filesystem::path plot_file;
  std::filesystem::path summary_file;
};

// Worker count from COURNOT_WORKERS, else the hardware concurrency (>= 1).
int WorkerCount();

// Runs fn(0..n_tasks-1) on a bounded pool; rethrows the first exception.
void ParallelFor(int n_tasks, int workers, const std::function<void(int)>& fn);

// Runs every seed, writes trajectory_seed_<s>.csv, metrics.csv,
// summary.json and actions.svg into spec.out_dir. Throws kIo when files
// cannot be written.
ExperimentSummary RunExperiment(const ExperimentSpec& spec);

nlohmann::json SummaryToJson(const ExperimentSpec& spec,
                             const ExperimentSummary& summary);

}  // namespace cournot::tools

#endif  // COURNOT_TOOLS_EXPERIMENT_H_
