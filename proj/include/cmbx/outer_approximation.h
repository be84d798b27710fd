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

// Kelley-style outer approximation over an LP in variables w. Nonlinear
// constraints are given as affine images of w:
//   conic terms      M w + m0 in K           (supporting-hyperplane cuts)
//   epigraph terms   (y(w), z(w)) in conv(epi f)   (greedy polymatroid cuts)
// Cuts are deduplicated and live for the lifetime of the object, so bound
// changes between solves (enumeration, branching) reuse them.

#ifndef CMBX_OUTER_APPROXIMATION_H_
#define CMBX_OUTER_APPROXIMATION_H_

#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cmbx/cone.h"
#include "cmbx/lp.h"
#include "cmbx/polymatroid.h"
#include "cmbx/set_function.h"

namespace cmbx {

struct AffineMap {
  std::vector<std::vector<double>> M;  // rows x num_w
  std::vector<double> m0;

  std::vector<double> Apply(std::span<const double> w) const;
};

struct ConicTerm {
  Cone cone;
  AffineMap map;
  int tag = 0;  // caller's block index
};

struct EpigraphTerm {
  SetFunctionSpec f;
  std::vector<double> y_row;  // y = y_row^T w + y0
  double y0 = 0.0;
  AffineMap z_map;
  int tag = 0;  // caller's function index
  // Greedy cuts are checked by enumeration before use (non-submodular f).
  bool validate_cuts = false;
};

enum class CutOrigin { kStatic, kPreloaded, kConic, kPolymatroid };
const char* CutOriginName(CutOrigin o);

struct CutRecord {
  CutOrigin origin = CutOrigin::kStatic;
  int tag = -1;
  int row = -1;  // LP row index
  std::optional<GreedyCut> greedy;
};

enum class OaStatus { kOptimal, kInfeasible, kCapHit, kStalled, kNumericalError };
const char* OaStatusName(OaStatus s);

struct OaOptions {
  double tol_feas = 1e-7;
  long max_iterations = 10'000;
  bool polymatroid = true;
  bool conic = true;
  LpOptions lp;
};

struct OaTraceRow {
  long iteration = 0;
  double lp_value = 0.0;
  double max_violation = 0.0;
  int cuts_added = 0;
};

struct OaResult {
  OaStatus status = OaStatus::kNumericalError;
  double value = 0.0;
  std::vector<double> w;
  LpSolution lp;
  long iterations = 0;
  int conic_cuts = 0;
  int polymatroid_cuts = 0;
  double max_violation = 0.0;
  std::string diagnostic;
};

class OuterApproximation {
 public:
  OuterApproximation(int num_w, OaOptions options = {});

  int num_w() const { return lp_.num_vars(); }
  IncrementalLp& lp() { return lp_; }
  const OaOptions& options() const { return options_; }
  void set_options(const OaOptions& o) { options_ = o; }

  void AddConic(ConicTerm term);
  void AddEpigraph(EpigraphTerm term);
  // g^T w <= h, exempt from deduplication.
  void AddStaticRow(std::span<const double> g, double h);
  // A greedy cut for epigraph term `term`. Returns false when it duplicates
  // a cut already present.
  bool AddGreedyCut(int term, const GreedyCut& cut, CutOrigin origin);

  void SetObjective(std::span<const double> c) { lp_.SetObjective(c); }
  void SetBounds(int var, double lb, double ub) { lp_.SetBounds(var, lb, ub); }

  OaResult Solve(const std::function<void(const OaTraceRow&)>& trace = nullptr);

  const std::vector<CutRecord>& cuts() const { return cuts_; }
  const std::vector<ConicTerm>& conic_terms() const { return conic_; }
  const std::vector<EpigraphTerm>& epigraph_terms() const { return epigraph_; }

  // Largest violation of the conic and epigraph terms at w (the epigraph
  // part uses the greedy value, exact for submodular f).
  double MaxViolation(std::span<const double> w) const;

 private:
  bool AddCutRow(std::vector<double> g, double h, CutRecord record);

  IncrementalLp lp_;
  OaOptions options_;
  std::vector<ConicTerm> conic_;
  std::vector<EpigraphTerm> epigraph_;
  std::vector<CutRecord> cuts_;
  std::unordered_set<std::string> keys_;
};

}  // namespace cmbx

#endif  // CMBX_OUTER_APPROXIMATION_H_
