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

#ifndef COURNOT_LEARNERS_H_
#define COURNOT_LEARNERS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

namespace cournot {

// What the engine hands a learner after each round. `gradient` is set only
// under gradient feedback; a learner never sees other players' data.
struct Feedback {
  double payoff = 0.0;
  std::optional<double> gradient;
};

// A single player's online algorithm over the scalar interval
// [0, action_cap]. The engine draws one random sign per player per round and
// passes it to Act(); learners never own a random generator.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual double Act(int random_sign) = 0;
  virtual void Observe(const Feedback& feedback) = 0;
  virtual bool NeedsGradient() const = 0;
};

// -- FKM ----------------------------------------------------------------------

inline constexpr double kFkmDefaultEta0 = 0.05;
inline constexpr double kFkmDefaultDelta0 = 1.0;
// Upper bound on the perturbation radius as a fraction of action_cap, so the
// shrunken interval [delta, cap - delta] is never empty.
inline constexpr double kFkmDeltaCapFraction = 0.45;

struct FkmSchedule {
  double eta = 0.0;
  double delta = 0.0;
};

// eta_t = eta0 / (0.1 t)^(3/4), delta_t = min(delta0 / t^(1/3), 0.45 cap).
// Throws kDomain for t < 1.
FkmSchedule FkmScheduleAt(std::int64_t t, double eta0, double delta0,
                          double action_cap);

// One-point gradient estimate for a scalar action: payoff * u / delta.
double OnePointEstimate(double payoff, int perturbation, double delta);

struct FkmState {
  double pivot = 0.0;        // y_t
  std::int64_t round = 1;    // t
  double eta0 = kFkmDefaultEta0;
  double delta0 = kFkmDefaultDelta0;
  double action_cap = 1.0;
  int last_perturbation = 0;  // u_t in {-1, +1}; 0 until the first Act()
  double feasible_low = 0.0;  // delta_t
  double feasible_high = 0.0; // action_cap - delta_t
  bool awaiting_feedback = false;

  FkmSchedule schedule() const {
    return FkmScheduleAt(round, eta0, delta0, action_cap);
  }
};

// Bandit gradient ascent with a one-point estimator:
//   x_t = y_t + delta_t u_t,  g_t = f(x_t) u_t / delta_t,
//   y_{t+1} = clamp(y_t + eta_t g_t, delta_{t+1}, cap - delta_{t+1}).
class FkmLearner : public Learner {
 public:
  // Starts at round 1 with the pivot at `initial_pivot` (default cap / 2),
  // clamped into the round-1 shrunken interval.
  FkmLearner(double action_cap, double eta0 = kFkmDefaultEta0,
             double delta0 = kFkmDefaultDelta0,
             std::optional<double> initial_pivot = std::nullopt);
  // Resumes from an explicit state.
  explicit FkmLearner(const FkmState& state);

  double Act(int random_sign) override;
  void Observe(const Feedback& feedback) override;
  bool NeedsGradient() const override { return false; }

  // Records u_t and returns the perturbed action.
  double Propose(int random_sign);
  // Gradient-estimate step from the observed own payoff. Throws kProtocol
  // if Propose() was not called this round and kNumeric for non-finite
  // payoffs.
  void Update(double observed_payoff);

  const FkmState& state() const { return state_; }

 private:
  FkmState state_;
};

// -- OMD ----------------------------------------------------------------------

enum class OmdVariant { kAgile, kLazy };

std::string_view OmdVariantName(OmdVariant variant);
OmdVariant ParseOmdVariant(std::string_view name);

// 1 / (2 sqrt(T)). Throws kDomain for T < 1.
double OmdDefaultEta(std::int64_t horizon);

struct OmdState {
  double iterate = 0.0;  // x_t
  double eta = 0.0;
  OmdVariant variant = OmdVariant::kAgile;
  double dual_accumulator = 0.0;  // y_t, lazy variant only
  double action_cap = 1.0;
};

// Online mirror descent with the quadratic regularizer, which reduces to
// projected gradient ascent on [0, action_cap].
class OmdLearner : public Learner {
 public:
  // y_1 = initial_point (default 0), x_1 = its projection.
  OmdLearner(double action_cap, double eta,
             OmdVariant variant = OmdVariant::kAgile,
             double initial_point = 0.0);
  explicit OmdLearner(const OmdState& state);

  double Act(int random_sign) override;
  void Observe(const Feedback& feedback) override;
  bool NeedsGradient() const override { return true; }

  // Throws kNumeric for a non-finite gradient.
  void Update(double gradient);

  const OmdState& state() const { return state_; }

 private:
  OmdState state_;
};

}  // namespace cournot

#endif  // COURNOT_LEARNERS_H_
