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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cournot/equilibrium.h"
#include "cournot/error.h"
#include "cournot/game_json.h"
#include "cournot/presets.h"
#include "cournot/simulation.h"
#include "experiment.h"

namespace cournot::tools {
namespace {

constexpr const char* kSpecVersion = "1.0";
constexpr double kTableTolerance = 1e-3;
constexpr double kMonotoneThreshold = 1e-12;

struct GameSource {
  std::string preset;
  std::string config;
};

struct LoadedGame {
  std::string id;
  CournotGame game;
  nlohmann::json run_config;  // the whole document when it has "game"
};

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kConfiguration, "cannot open config " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfiguration,
                "config " + path + " is not valid JSON: " + e.what());
  }
}

// A config file is either a bare game document or a run config with a
// "game" member.
LoadedGame LoadGame(const GameSource& source) {
  if (!source.preset.empty() && !source.config.empty()) {
    throw Error(ErrorCode::kConfiguration,
                "use either --preset or --config, not both");
  }
  if (!source.preset.empty()) {
    const Preset& p = FindPreset(source.preset);
    return {p.id, p.game, nlohmann::json::object()};
  }
  if (source.config.empty()) {
    throw Error(ErrorCode::kConfiguration, "need --preset or --config");
  }
  nlohmann::json doc = ReadJsonFile(source.config);
  if (doc.is_object() && doc.contains("game")) {
    RejectUnknownKeys(doc,
                      {"game", "learner", "learners", "rounds", "seeds",
                       "record_stride", "epsilon"},
                      "run config");
    return {"custom", GameFromJson(doc["game"]), doc};
  }
  return {"custom", GameFromJson(doc), nlohmann::json::object()};
}

void AddGameOptions(CLI::App* cmd, GameSource& source) {
  cmd->add_option("--preset", source.preset,
                  "Preset id (M1, M2, G1..G9)");
  cmd->add_option("--config", source.config,
                  "Game or run-config JSON file");
}

nlohmann::json MatrixToJson(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json FiniteOrNull(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json();
}

// -- solve --------------------------------------------------------------------

int SolveCommand(const GameSource& source, double tolerance,
                 std::ostream& out) {
  const LoadedGame loaded = LoadGame(source);
  const EquilibriumResult r = SolveEquilibrium(loaded.game, tolerance);
  nlohmann::json doc = {
      {"spec_version", kSpecVersion},
      {"preset", loaded.id},
      {"game", GameToJson(loaded.game)},
      {"x_star", r.x_star},
      {"s_star", r.s_star},
      {"price_at_ne", r.price_at_ne},
      {"price_slope_at_ne", r.price_slope_at_ne},
      {"payoffs", r.payoffs_at_ne},
      {"jacobian", MatrixToJson(r.jacobian)},
      {"jacobian_invertible", r.jacobian_invertible},
      {"condition_estimate", FiniteOrNull(r.condition_estimate)},
      {"lipschitz_estimate", FiniteOrNull(r.lipschitz_estimate)},
      {"tolerance", tolerance},
      {"tolerance_achieved", r.tolerance_achieved},
      {"iterations", r.iterations},
  };
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// -- run ----------------------------------------------------------------------

struct RunFlags {
  GameSource source;
  std::string learner;
  std::optional<std::int64_t> rounds;
  std::optional<int> seeds;
  std::optional<double> epsilon;
  std::string out_dir = "cournot_run";
  std::optional<double> eta0;
  std::optional<double> delta0;
  std::optional<double> eta;
  std::string variant;
  std::optional<std::int64_t> stride;
};

int RunCommand(const RunFlags& flags, std::ostream& out) {
  const LoadedGame loaded = LoadGame(flags.source);
  const nlohmann::json& cfg = loaded.run_config;

  std::vector<LearnerConfig> learners;
  if (cfg.contains("learners")) {
    for (const auto& l : cfg["learners"]) {
      learners.push_back(LearnerConfigFromJson(l));
    }
  } else if (cfg.contains("learner")) {
    learners.push_back(LearnerConfigFromJson(cfg["learner"]));
  }
  if (!flags.learner.empty()) {
    const Algorithm algorithm = ParseAlgorithm(flags.learner);
    if (learners.empty()) learners.emplace_back();
    for (LearnerConfig& l : learners) l.algorithm = algorithm;
  }
  if (learners.empty()) {
    throw Error(ErrorCode::kConfiguration, "need --learner fkm|omd");
  }
  for (LearnerConfig& l : learners) {
    if (flags.eta0) l.eta0 = *flags.eta0;
    if (flags.delta0) l.delta0 = *flags.delta0;
    if (flags.eta) l.eta = *flags.eta;
    if (!flags.variant.empty()) l.variant = ParseOmdVariant(flags.variant);
  }

  try {
    const std::int64_t rounds =
        flags.rounds.value_or(cfg.value("rounds", std::int64_t{1000}));
    const int n_seeds = flags.seeds.value_or(cfg.value("seeds", 5));
    if (rounds < 1) {
      throw Error(ErrorCode::kConfiguration, "--rounds must be >= 1");
    }
    if (n_seeds < 1) {
      throw Error(ErrorCode::kConfiguration, "--seeds must be >= 1");
    }
    ExperimentSpec spec{
        .preset_id = loaded.id,
        .game = loaded.game,
        .learners = learners,
        .rounds = rounds,
        .seeds = {},
        .record_stride =
            flags.stride.value_or(cfg.value("record_stride", std::int64_t{1})),
        .epsilon =
            flags.epsilon.value_or(cfg.value("epsilon", kDefaultEpsilon)),
        .out_dir = flags.out_dir,
    };
    for (int s = 0; s < n_seeds; ++s) spec.seeds.push_back(s);

    const ExperimentSummary summary = RunExperiment(spec);
    out << SummaryToJson(spec, summary).dump(2) << '\n';
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfiguration,
                std::string("malformed run config: ") + e.what());
  }
  return kExitOk;
}

// -- probe --------------------------------------------------------------------

int ProbeCommand(const GameSource& source, int samples, std::uint64_t seed,
                 std::ostream& out) {
  if (samples < 0) {
    throw Error(ErrorCode::kConfiguration, "--samples must be >= 0");
  }
  const LoadedGame loaded = LoadGame(source);
  const CournotGame& game = loaded.game;
  const int n = game.n_players();

  std::optional<double> max_probe;
  nlohmann::json max_pair;
  int positive = 0;
  auto consider = [&](const ActionProfile& x, const ActionProfile& x2) {
    const double v = MonotonicityProbe(game, x, x2);
    if (v > kMonotoneThreshold) ++positive;
    if (!max_probe || v > *max_probe) {
      max_probe = v;
      max_pair = {{"x", x}, {"x2", x2}};
    }
    return v;
  };

  nlohmann::json doc = {{"spec_version", kSpecVersion},
                        {"preset", loaded.id},
                        {"samples", samples},
                        {"seed", seed}};
  if (loaded.id == "M2") {
    const ProbePair& pair = CounterExamplePair();
    const double v = consider(pair.x, pair.x2);
    doc["counterexample"] = {{"x", pair.x}, {"x2", pair.x2}, {"value", v}};
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, game.action_cap());
  ActionProfile x(n);
  ActionProfile x2(n);
  for (int k = 0; k < samples; ++k) {
    for (double& v : x) v = unif(rng);
    for (double& v : x2) v = unif(rng);
    consider(x, x2);
  }

  doc["pairs_evaluated"] = samples + (doc.contains("counterexample") ? 1 : 0);
  doc["positive_pairs"] = positive;
  doc["max_probe"] = max_probe ? nlohmann::json(*max_probe) : nlohmann::json();
  doc["max_pair"] = max_pair;
  doc["threshold"] = kMonotoneThreshold;
  if (!max_probe) {
    doc["verdict"] = "no-evidence";
  } else {
    doc["verdict"] = *max_probe > kMonotoneThreshold ? "non-monotone"
                                                     : "monotone";
  }
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// -- table --------------------------------------------------------------------

std::string CostSummary(const CournotGame& game) {
  std::ostringstream s;
  for (int i = 0; i < game.n_players(); ++i) {
    const CostFunction& c = game.cost(i);
    if (i > 0) s << '/';
    s << c.coefficient();
  }
  s << (game.cost(0).kind() == CostKind::kLinear ? " x" : " x^2");
  return s.str();
}

std::string FormatProfile(const ActionProfile& x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << '[';
  for (std::size_t i = 0; i < x.size(); ++i) s << (i ? ", " : "") << x[i];
  s << ']';
  return s.str();
}

int TableCommand(std::ostream& out, std::ostream& err) {
  bool ok = true;
  out << std::left << std::setw(4) << "id" << std::setw(18) << "price"
      << std::setw(22) << "cost" << std::setw(32) << "computed NE"
      << std::setw(32) << "tabulated NE" << "max |dev|\n";
  for (const Preset* p : TablePresets()) {
    std::string computed = "(solver failed)";
    double deviation = std::nan("");
    try {
      const EquilibriumResult r = SolveEquilibrium(p->game);
      computed = FormatProfile(r.x_star);
      deviation = 0.0;
      for (std::size_t i = 0; i < r.x_star.size(); ++i) {
        deviation =
            std::max(deviation, std::abs(r.x_star[i] - (*p->expected_ne)[i]));
      }
    } catch (const Error& e) {
      err << p->id << ": " << e.what() << '\n';
    }
    const bool row_ok = std::isfinite(deviation) && deviation <= kTableTolerance;
    ok = ok && row_ok;
    char dev[32];
    std::snprintf(dev, sizeof(dev), "%.2e", deviation);
    out << std::left << std::setw(4) << p->id << std::setw(18)
        << PriceKindName(p->game.price().kind()) << std::setw(22)
        << CostSummary(p->game) << std::setw(32) << computed << std::setw(32)
        << FormatProfile(*p->expected_ne) << dev
        << (row_ok ? "" : "  FAIL") << '\n';
  }
  out << (ok ? "all rows within 0.001\n" : "table mismatch\n");
  return ok ? kExitOk : kExitTable;
}

// -- validate -----------------------------------------------------------------

int ValidateCommand(const GameSource& source, int samples, std::ostream& out) {
  const LoadedGame loaded = LoadGame(source);
  const ValidationReport r = ValidateAssumptions(loaded.game, samples);
  nlohmann::json doc = {
      {"spec_version", kSpecVersion},
      {"preset", loaded.id},
      {"samples", samples},
      {"passed", r.passed()},
      {"checks",
       {{"price_positive_at_zero", r.price_positive_at_zero},
        {"price_reaches_zero", r.price_reaches_zero},
        {"price_strictly_decreasing", r.price_strictly_decreasing},
        {"price_concave", r.price_concave},
        {"costs_convex_increasing", r.costs_convex_increasing},
        {"price_exceeds_marginal_cost", r.price_exceeds_marginal_cost}}},
      {"failures", r.failures},
  };
  out << doc.dump(2) << '\n';
  return r.passed() ? kExitOk : kExitUsage;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Cournot games: equilibria and no-regret learning dynamics",
               "cournot"};
  app.require_subcommand(1);

  GameSource solve_source;
  double tolerance = kDefaultSolverTolerance;
  CLI::App* solve = app.add_subcommand("solve", "Solve the Nash equilibrium");
  AddGameOptions(solve, solve_source);
  solve->add_option("--tolerance", tolerance, "Fixed-point residual tolerance");

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Simulate learning dynamics");
  AddGameOptions(run, run_flags.source);
  run->add_option("--learner", run_flags.learner, "fkm or omd");
  run->add_option("--rounds", run_flags.rounds, "Rounds T per run");
  run->add_option("--seeds", run_flags.seeds, "Number of seeds (0..n-1)");
  run->add_option("--epsilon", run_flags.epsilon, "Payoff band for violations");
  run->add_option("--out", run_flags.out_dir, "Output directory");
  run->add_option("--eta0", run_flags.eta0, "FKM step-size scale");
  run->add_option("--delta0", run_flags.delta0, "FKM perturbation scale");
  run->add_option("--eta", run_flags.eta, "OMD step size override");
  run->add_option("--variant", run_flags.variant, "OMD variant: agile or lazy");
  run->add_option("--stride", run_flags.stride, "Record every k-th round");

  GameSource probe_source;
  int probe_samples = 1000;
  std::uint64_t probe_seed = 0;
  CLI::App* probe = app.add_subcommand("probe", "Probe the monotone-game condition");
  AddGameOptions(probe, probe_source);
  probe->add_option("--samples", probe_samples, "Random profile pairs");
  probe->add_option("--seed", probe_seed, "Sampling seed");

  CLI::App* table = app.add_subcommand("table", "Reproduce the NE table");

  GameSource validate_source;
  int validate_samples = 1001;
  CLI::App* validate = app.add_subcommand("validate", "Check the game assumptions");
  AddGameOptions(validate, validate_source);
  validate->add_option("--samples", validate_samples, "Grid size")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve) return SolveCommand(solve_source, tolerance, out);
    if (*run) return RunCommand(run_flags, out);
    if (*probe) return ProbeCommand(probe_source, probe_samples, probe_seed, out);
    if (*table) return TableCommand(out, err);
    if (*validate) {
      return ValidateCommand(validate_source, validate_samples, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kIo ? kExitIo : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cournot::tools
