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

// Solvers over a MixedBinaryConicModel. The LP variables are laid out as
// w = [x, y, z]; y_j is boxed in [0, max(1e3, 10 max f_j)] with an
// artificial upper bound and z in [0, 1].
//
//   SolveRelaxation         continuous relaxation, z in [0,1], y_j in
//                           conv(epi f_j) through lazy greedy cuts
//   SolveExactEnumeration   every binary z, y_j = f_j(z), conic cuts only
//   SolveBranchAndBound     best-bound search on the relaxation

#ifndef CMBX_SOLVER_H_
#define CMBX_SOLVER_H_

#include <functional>
#include <string>
#include <vector>

#include "cmbx/json_io.h"
#include "cmbx/model.h"
#include "cmbx/outer_approximation.h"

namespace cmbx {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kCapHit,
  kStalled,
  kNodeLimit,
  kNumericalError,
};

const char* SolveStatusName(SolveStatus s);

struct SolverOptions {
  double tol_feas = 1e-7;
  double tol_opt = 1e-6;
  double pivot_tol = 1e-9;
  long max_iterations = 10'000;  // Kelley rounds per solve
  long max_nodes = 100'000;
  double integrality_tol = 1e-6;
  // Greedy separation for the epigraph constraints. Off leaves y_j >= 0 only.
  bool polymatroid = true;
  // Artificial bounds are widened by (bound_scale - 1) * max(1, |bound|).
  double bound_scale = 1.0;
  double touch_tol = 1e-8;
  std::function<void(const OaTraceRow&)> trace;  // SolveRelaxation only
};

// A greedy cut that entered a solve, with its source function.
struct RecordedCut {
  int function = 0;
  CutOrigin origin = CutOrigin::kPolymatroid;
  GreedyCut cut;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kNumericalError;
  double value = 0.0;  // includes the objective constant
  double bound = 0.0;
  Point point;
  int conic_cuts = 0;
  int polymatroid_cuts = 0;
  long iterations = 0;  // Kelley rounds over all LP solves
  long nodes = 0;
  double wall_time = 0.0;
  // Artificial bounds with a multiplier above touch_tol at the reported point.
  std::vector<std::string> touched;
  std::vector<RecordedCut> greedy_cuts;
  std::string diagnostic;

  int cuts_added() const { return conic_cuts + polymatroid_cuts; }
  bool ok() const { return status == SolveStatus::kOptimal; }
};

Json ToJson(const SolveResult& r);

SolveResult SolveRelaxation(const MixedBinaryConicModel& model,
                            const SolverOptions& options = {});

// Requires n <= 20.
SolveResult SolveExactEnumeration(const MixedBinaryConicModel& model,
                                  const SolverOptions& options = {});

SolveResult SolveBranchAndBound(const MixedBinaryConicModel& model,
                                const SolverOptions& options = {});

// The x, y, z column blocks of w.
struct Layout {
  int num_x = 0;
  int num_y = 0;
  int n = 0;
  int y(int j) const { return num_x + j; }
  int z(int i) const { return num_x + num_y + i; }
  int size() const { return num_x + num_y + n; }
};

Layout LayoutOf(const MixedBinaryConicModel& model);

// Upper bound used for y_j before scaling.
double EpigraphBound(const SetFunctionSpec& f);

// Lower and upper bound of every w column under `bound_scale`.
void ModelBounds(const MixedBinaryConicModel& model, double bound_scale,
                 std::vector<double>& lb, std::vector<double>& ub);

// An outer approximation holding the box, linear rows and conic terms of the
// model, plus the epigraph terms and model cuts when `epigraph` is set.
// Non-submodular functions get validated greedy cuts and, for n <= 5, every
// vertex of their polar polyhedron up front.
OuterApproximation BuildModelOa(const MixedBinaryConicModel& model,
                                const SolverOptions& options, bool epigraph);

Point SplitPoint(const MixedBinaryConicModel& model, std::span<const double> w);

}  // namespace cmbx

#endif  // CMBX_SOLVER_H_
