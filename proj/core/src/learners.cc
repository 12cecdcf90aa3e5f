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

#include "cournot/learners.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cournot/error.h"

namespace cournot {
namespace {

void RequirePositive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw Error(ErrorCode::kConfiguration,
                std::string(what) + " must be positive and finite");
  }
}

}  // namespace

FkmSchedule FkmScheduleAt(std::int64_t t, double eta0, double delta0,
                          double action_cap) {
  if (t < 1) throw Error(ErrorCode::kDomain, "FKM rounds start at t = 1");
  const double td = static_cast<double>(t);
  return {eta0 / std::pow(0.1 * td, 0.75),
          std::min(delta0 / std::cbrt(td), kFkmDeltaCapFraction * action_cap)};
}

double OnePointEstimate(double payoff, int perturbation, double delta) {
  return payoff * perturbation / delta;
}

// -- FkmLearner ---------------------------------------------------------------

FkmLearner::FkmLearner(double action_cap, double eta0, double delta0,
                       std::optional<double> initial_pivot) {
  RequirePositive(action_cap, "action_cap");
  RequirePositive(eta0, "eta0");
  RequirePositive(delta0, "delta0");
  state_.action_cap = action_cap;
  state_.eta0 = eta0;
  state_.delta0 = delta0;
  state_.round = 1;
  const double delta = state_.schedule().delta;
  state_.feasible_low = delta;
  state_.feasible_high = action_cap - delta;
  state_.pivot = std::clamp(initial_pivot.value_or(0.5 * action_cap),
                            state_.feasible_low, state_.feasible_high);
}

FkmLearner::FkmLearner(const FkmState& state) : state_(state) {
  RequirePositive(state_.action_cap, "action_cap");
  RequirePositive(state_.eta0, "eta0");
  RequirePositive(state_.delta0, "delta0");
  const double delta = state_.schedule().delta;
  state_.feasible_low = delta;
  state_.feasible_high = state_.action_cap - delta;
  if (state_.pivot < state_.feasible_low ||
      state_.pivot > state_.feasible_high) {
    throw Error(ErrorCode::kDomain, "FKM pivot outside the shrunken interval");
  }
}

double FkmLearner::Propose(int random_sign) {
  if (random_sign != 1 && random_sign != -1) {
    throw Error(ErrorCode::kDomain, "FKM perturbation must be +1 or -1");
  }
  state_.last_perturbation = random_sign;
  state_.awaiting_feedback = true;
  const double action = state_.pivot + state_.schedule().delta * random_sign;
  // pivot in [delta, cap - delta] keeps the action feasible; the clamp only
  // absorbs rounding.
  return std::clamp(action, 0.0, state_.action_cap);
}

void FkmLearner::Update(double observed_payoff) {
  if (!state_.awaiting_feedback) {
    throw Error(ErrorCode::kProtocol, "FKM update before propose");
  }
  if (!std::isfinite(observed_payoff)) {
    throw Error(ErrorCode::kNumeric, "non-finite payoff");
  }
  const FkmSchedule now = state_.schedule();
  const double estimate =
      OnePointEstimate(observed_payoff, state_.last_perturbation, now.delta);
  ++state_.round;
  const double next_delta = state_.schedule().delta;
  state_.feasible_low = next_delta;
  state_.feasible_high = state_.action_cap - next_delta;
  state_.pivot = std::clamp(state_.pivot + now.eta * estimate,
                            state_.feasible_low, state_.feasible_high);
  state_.awaiting_feedback = false;
}

double FkmLearner::Act(int random_sign) { return Propose(random_sign); }

void FkmLearner::Observe(const Feedback& feedback) { Update(feedback.payoff); }

// -- OmdLearner ---------------------------------------------------------------

std::string_view OmdVariantName(OmdVariant variant) {
  return variant == OmdVariant::kAgile ? "agile" : "lazy";
}

OmdVariant ParseOmdVariant(std::string_view name) {
  if (name == "agile") return OmdVariant::kAgile;
  if (name == "lazy") return OmdVariant::kLazy;
  throw Error(ErrorCode::kConfiguration,
              "unknown OMD variant '" + std::string(name) + "'");
}

double OmdDefaultEta(std::int64_t horizon) {
  if (horizon < 1) throw Error(ErrorCode::kDomain, "horizon must be >= 1");
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(horizon)));
}

OmdLearner::OmdLearner(double action_cap, double eta, OmdVariant variant,
                       double initial_point) {
  RequirePositive(action_cap, "action_cap");
  RequirePositive(eta, "eta");
  if (!std::isfinite(initial_point)) {
    throw Error(ErrorCode::kConfiguration, "initial point must be finite");
  }
  state_.action_cap = action_cap;
  state_.eta = eta;
  state_.variant = variant;
  state_.dual_accumulator = initial_point;
  state_.iterate = std::clamp(initial_point, 0.0, action_cap);
}

OmdLearner::OmdLearner(const OmdState& state) : state_(state) {
  RequirePositive(state_.action_cap, "action_cap");
  RequirePositive(state_.eta, "eta");
  if (state_.iterate < 0.0 || state_.iterate > state_.action_cap) {
    throw Error(ErrorCode::kDomain, "OMD iterate outside [0, action_cap]");
  }
}

void OmdLearner::Update(double gradient) {
  if (!std::isfinite(gradient)) {
    throw Error(ErrorCode::kNumeric, "non-finite gradient");
  }
  // Ascent: players maximize payoff.
  double unprojected;
  if (state_.variant == OmdVariant::kAgile) {
    unprojected = state_.iterate + state_.eta * gradient;
  } else {
    state_.dual_accumulator += state_.eta * gradient;
    unprojected = state_.dual_accumulator;
  }
  state_.iterate = std::clamp(unprojected, 0.0, state_.action_cap);
}

double OmdLearner::Act(int) { return state_.iterate; }

void OmdLearner::Observe(const Feedback& feedback) {
  if (!feedback.gradient) {
    throw Error(ErrorCode::kProtocol, "OMD needs gradient feedback");
  }
  Update(*feedback.gradient);
}

}  // namespace cournot
