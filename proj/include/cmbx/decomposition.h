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

// Midpoint search: is a point p of the continuous relaxation the midpoint of
// two distinct feasible points p - d and p + d? The set of admissible d is
// convex and symmetric, so it is probed with outer-approximation LPs, first
// with z-endpoints paired to binary vectors and then coordinate by
// coordinate. NoneFound is evidence of extremality, not a proof.

#ifndef CMBX_DECOMPOSITION_H_
#define CMBX_DECOMPOSITION_H_

#include <string>
#include <vector>

#include "cmbx/json_io.h"
#include "cmbx/model.h"

namespace cmbx {

struct DecompositionOptions {
  double tol_feas = 1e-7;
  double midpoint_tol = 1e-9;
  double min_distance = 1e-6;
  long max_iterations = 10'000;
};

struct Decomposition {
  bool decomposed = false;
  Point p1, p2;
  std::string method;            // "binary-pairing" or "coordinate <k>"
  double distance = 0.0;         // max-norm of p1 - p2
  double residual1 = 0.0, residual2 = 0.0;
  double midpoint_error = 0.0;
  std::vector<std::string> log;  // one line per probe
};

// Throws kArgument when the candidate violates the relaxation by more than
// tol_feas.
Decomposition DecompositionCheck(const MixedBinaryConicModel& model, const Point& candidate,
                                 const DecompositionOptions& options = {});

Json ToJson(const Decomposition& d);

}  // namespace cmbx

#endif  // CMBX_DECOMPOSITION_H_
