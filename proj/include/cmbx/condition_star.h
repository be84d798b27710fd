// Copyright 2026 The Authors.
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

// Sampling falsifier for the scaling condition: whenever x is feasible for
// A x + B f(z) + C in K, so is alpha x for every alpha >= 1. Feasible points
// come from an LP anchor per (block, z) plus random box draws pulled back to
// the feasible set by bisection toward the anchor. Finding nothing is
// evidence, not proof.

#ifndef CMBX_CONDITION_STAR_H_
#define CMBX_CONDITION_STAR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmbx/model.h"

namespace cmbx {

struct FalsifierOptions {
  uint64_t seed = 0;
  int samples = 10'000;  // per block
  std::vector<double> alphas = {1.1, 2.0, 10.0, 100.0};
  // Also require the x-only linear rows over the block's columns (such as a
  // homogenization row v = 1) before and after scaling.
  bool include_slice_rows = false;
  double tol = 1e-7;
  int max_enumeration = 12;  // z is enumerated up to this n, sampled above
};

enum class FalsifyOutcome { kWitness, kNone, kInconclusive };

const char* FalsifyOutcomeName(FalsifyOutcome o);

struct ConditionStarWitness {
  int block = 0;
  std::vector<double> x;  // block-local
  Subset z = 0;
  double alpha = 1.0;
  double violation = 0.0;  // at alpha x
  std::string where;       // "cone" or "row <k>"
};

struct FalsifyResult {
  FalsifyOutcome outcome = FalsifyOutcome::kNone;
  std::optional<ConditionStarWitness> witness;
  long feasible_points = 0;
  long scalings_tested = 0;
  std::string diagnostic;
};

FalsifyResult ConditionStarFalsify(const MixedBinaryConicModel& model,
                                   const FalsifierOptions& options = {});

}  // namespace cmbx

#endif  // CMBX_CONDITION_STAR_H_
