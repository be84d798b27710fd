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

// Conic mixed-binary model: binaries z, boxed continuous x, one epigraph
// variable y_j >= f_j(z) per set function, conic blocks, linear rows and a
// linear objective.

#ifndef CMBX_MODEL_H_
#define CMBX_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cmbx/cone.h"
#include "cmbx/polymatroid.h"
#include "cmbx/set_function.h"

namespace cmbx {

// Bounds flagged non-natural are modeling artifacts: a solution resting on
// one with a positive multiplier is reported as bound-touching.
struct ContinuousVar {
  std::string name;
  double lb = 0.0;
  double ub = 1e3;
  bool lb_natural = true;
  bool ub_natural = false;
};

enum class Sense { kLe, kEq, kGe };
enum class RowKind { kGeneral, kHomogenization };

const char* SenseName(Sense s);
const char* RowKindName(RowKind k);

// cx^T x + cy^T y + cz^T z  (sense)  rhs
struct LinearRow {
  std::vector<double> cx, cy, cz;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
  RowKind kind = RowKind::kGeneral;

  bool ZOnly() const;
  bool XOnly() const;
};

struct LinearObjective {
  std::vector<double> cx, cy, cz;
  double constant = 0.0;
};

struct PreloadedCut {
  int function = 0;
  GreedyCut cut;
};

struct ModelMeta {
  std::string family;
  uint64_t seed = 0;
};

struct MixedBinaryConicModel {
  int n = 0;
  std::vector<ContinuousVar> vars;
  std::vector<SetFunctionSpec> functions;
  std::vector<ConicBlock> blocks;
  std::vector<LinearRow> linear;
  LinearObjective objective;
  std::vector<PreloadedCut> cuts;
  ModelMeta meta;

  int num_x() const { return static_cast<int>(vars.size()); }
  int num_y() const { return static_cast<int>(functions.size()); }

  int AddVar(ContinuousVar v);
  // Zero-filled row / objective of the right shapes.
  LinearRow EmptyRow() const;
  // Resizes the objective vectors to the current shapes, keeping entries.
  void ShapeObjective();

  // Throws kStructural (shapes, references) or kDomain (bounds).
  void Validate() const;
};

// Appends the homogenization column for `block` (adds v and the row v = 1)
// and returns the index of v. No-op returning -1 when the block has no
// constant.
int HomogenizeBlock(MixedBinaryConicModel& model, int block, int position,
                    const std::string& v_name = "v");

struct Point {
  std::vector<double> x, y, z;
};

enum class PointSet {
  kRelaxation,   // z in [0,1], y_j >= Lovasz extension of f_j, y >= 0
  kMixedBinary,  // z binary, y_j >= f_j(z)
};

struct PointCheck {
  double max_violation = 0.0;
  std::string worst;  // which constraint attains it
};

// Largest violation over box, linear rows, conic residuals, z range and
// epigraph constraints.
PointCheck CheckPoint(const MixedBinaryConicModel& model, const Point& p,
                      PointSet set);

double ObjectiveValue(const MixedBinaryConicModel& model, const Point& p);

// Block-local x values of p.
std::vector<double> BlockX(const ConicBlock& block, std::span<const double> x);

double BlockResidual(const ConicBlock& block, const Point& p);

}  // namespace cmbx

#endif  // CMBX_MODEL_H_
