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

// Verification harnesses: hull equality between the relaxation and the
// mixed-binary optimum, the value of the polymatroid cuts, greedy separation
// against brute force, replayed cut validity and the half-integral candidate report.

#ifndef CMBX_VERIFY_H_
#define CMBX_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cmbx/condition_star.h"
#include "cmbx/decomposition.h"
#include "cmbx/json_io.h"
#include "cmbx/model.h"
#include "cmbx/solver.h"

namespace cmbx {

// Unit-sphere objective on (x, z) from normalized standard normals. An x
// coefficient is folded to +|c| when only the variable's upper bound is
// artificial and to -|c| when only the lower bound is, so the objective
// does not run along the unbounded direction.
LinearObjective SampleObjective(const MixedBinaryConicModel& model, uint64_t seed);

struct Hypotheses {
  std::vector<ScalingPattern> patterns;  // per block
  bool structural = true;                // no block is Unknown
  bool submodular = true;
  bool homogenized = false;              // a homogenization row is present
  FalsifyOutcome falsifier = FalsifyOutcome::kNone;
  bool falsifier_run = false;
  // Not a certificate of the hull identity for this model.
  bool unmet = false;
};

Hypotheses CheckHypotheses(const MixedBinaryConicModel& model,
                           const FalsifierOptions& falsifier = {});

struct HullOptions {
  SolverOptions solver;
  int threads = 1;
  double gap_tol = 1e-6;
  double inflation = 10.0;
  FalsifierOptions falsifier;
};

struct HullRow {
  int index = 0;
  uint64_t objective_seed = 0;
  double relaxation = 0.0;
  double exact = 0.0;
  double gap = 0.0;  // (exact - relaxation) / (1 + |exact|)
  bool bound_touched = false;
  int inflations = 0;
  bool failed = false;
  std::string note;
};

struct HullReport {
  std::string instance;
  uint64_t seed = 0;
  Hypotheses hypotheses;
  std::vector<HullRow> rows;
  double max_gap = 0.0;
  int trials = 0;
  int failures = 0;

  bool passed() const { return failures == 0; }
};

HullReport HullEqualityTest(const MixedBinaryConicModel& model, int num_objectives,
                            uint64_t seed, const HullOptions& options = {},
                            const std::string& instance = "");

Json ToJson(const Hypotheses& h);
Json ToJson(const HullReport& r);
std::string ToCsv(const HullReport& r);

struct StrengtheningGap {
  SolveResult no_polymatroid;
  SolveResult with;
  SolveResult exact;

  bool ok() const { return no_polymatroid.ok() && with.ok() && exact.ok(); }
};

// The model's own objective under the three solves.
StrengtheningGap MeasureStrengthening(const MixedBinaryConicModel& model,
                                      const SolverOptions& options = {});

Json ToJson(const StrengtheningGap& g);

struct SeparationReport {
  int trials = 0;
  int mismatches = 0;
  double max_difference = 0.0;
};

// Greedy value against the maximum over all n! permutation vertices at
// random z in [0,1]^n. n <= 8.
SeparationReport SeparationVsBruteforce(const SetFunctionSpec& f, int trials, uint64_t seed);

struct CutValidityReport {
  int checked = 0;
  int invalid = 0;
  std::vector<std::string> failures;

  bool passed() const { return invalid == 0; }
};

CutValidityReport CutValiditySuite(const std::vector<SetFunctionSpec>& functions,
                                   const std::vector<RecordedCut>& cuts, double tol = 1e-7);

Json ToJson(const CutValidityReport& r);

// Cut files are JSON arrays of {"function": j, "pi": [...], "offset": ...}.
std::vector<RecordedCut> CutsFromJson(const Json& j);
Json CutsToJson(const std::vector<RecordedCut>& cuts);

struct Example1Row {
  double x1 = 0.0;
  Point candidate;
  double feasibility = 0.0;         // relaxation violation
  double conic_residual = 0.0;
  std::vector<double> cut_slacks;   // y - offset - pi^T z per shipped cut
  Decomposition decomposition;
};

struct Example1Report {
  std::vector<GreedyCut> polar_vertices;
  Hypotheses hypotheses;
  FalsifyResult cone_only;
  FalsifyResult with_slice;
  double relaxation_min_x2 = 0.0;   // z fixed at (1/2, 1/2)
  std::vector<Example1Row> rows;

  bool feasibility_ok(double tol = 1e-7) const;
};

Example1Report RunExample1(const std::vector<double>& x1_values = {0.0, 0.5, 1.0});

Json ToJson(const Example1Report& r);

}  // namespace cmbx

#endif  // CMBX_VERIFY_H_
