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

#include "cmbx/model.h"

#include <algorithm>
#include <cmath>

#include "cmbx/errors.h"

namespace cmbx {
namespace {

bool AllZero(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

void RequireLength(const std::vector<double>& v, int expected, const std::string& what) {
  if (static_cast<int>(v.size()) != expected) {
    Fail(ErrorCode::kStructural, what + " has length " + std::to_string(v.size()) +
                                     ", expected " + std::to_string(expected));
  }
}

double RowActivity(const LinearRow& row, const Point& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < row.cx.size(); ++i) s += row.cx[i] * p.x[i];
  for (std::size_t i = 0; i < row.cy.size(); ++i) s += row.cy[i] * p.y[i];
  for (std::size_t i = 0; i < row.cz.size(); ++i) s += row.cz[i] * p.z[i];
  return s;
}

}  // namespace

const char* SenseName(Sense s) {
  switch (s) {
    case Sense::kLe: return "<=";
    case Sense::kEq: return "=";
    case Sense::kGe: return ">=";
  }
  return "?";
}

const char* RowKindName(RowKind k) {
  return k == RowKind::kHomogenization ? "homogenization" : "general";
}

bool LinearRow::ZOnly() const { return AllZero(cx) && AllZero(cy); }
bool LinearRow::XOnly() const { return AllZero(cy) && AllZero(cz); }

int MixedBinaryConicModel::AddVar(ContinuousVar v) {
  vars.push_back(std::move(v));
  return num_x() - 1;
}

LinearRow MixedBinaryConicModel::EmptyRow() const {
  LinearRow row;
  row.cx.assign(num_x(), 0.0);
  row.cy.assign(num_y(), 0.0);
  row.cz.assign(n, 0.0);
  return row;
}

void MixedBinaryConicModel::ShapeObjective() {
  objective.cx.resize(num_x(), 0.0);
  objective.cy.resize(num_y(), 0.0);
  objective.cz.resize(n, 0.0);
}

void MixedBinaryConicModel::Validate() const {
  if (n < 1 || n > kMaxVariables) {
    Fail(ErrorCode::kStructural, "model needs 1 <= n <= " + std::to_string(kMaxVariables));
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const ContinuousVar& v = vars[i];
    if (!std::isfinite(v.lb) || !std::isfinite(v.ub)) {
      Fail(ErrorCode::kDomain, "variable " + std::to_string(i) + " needs finite bounds");
    }
    if (v.lb > v.ub) {
      Fail(ErrorCode::kDomain, "variable " + std::to_string(i) + " has lb > ub");
    }
  }
  for (std::size_t j = 0; j < functions.size(); ++j) {
    if (functions[j].n() != n) {
      Fail(ErrorCode::kStructural, "function " + std::to_string(j) + " has n = " +
                                       std::to_string(functions[j].n()) +
                                       ", model has n = " + std::to_string(n));
    }
  }
  std::vector<int> uses(functions.size(), 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const ConicBlock& block = blocks[b];
    block.Validate();
    for (int col : block.x) {
      if (col < 0 || col >= num_x()) {
        Fail(ErrorCode::kStructural, "block " + std::to_string(b) +
                                         " references missing variable " +
                                         std::to_string(col));
      }
    }
    if (block.function) {
      const int j = *block.function;
      if (j < 0 || j >= num_y()) {
        Fail(ErrorCode::kStructural, "block " + std::to_string(b) +
                                         " references missing function " +
                                         std::to_string(j));
      }
      ++uses[j];
    }
  }
  for (std::size_t j = 0; j < uses.size(); ++j) {
    if (uses[j] != 1) {
      Fail(ErrorCode::kStructural, "function " + std::to_string(j) + " is used by " +
                                       std::to_string(uses[j]) +
                                       " blocks, expected exactly one");
    }
  }
  for (std::size_t r = 0; r < linear.size(); ++r) {
    const std::string where = "linear[" + std::to_string(r) + "]";
    RequireLength(linear[r].cx, num_x(), where + ".cx");
    RequireLength(linear[r].cy, num_y(), where + ".cy");
    RequireLength(linear[r].cz, n, where + ".cz");
  }
  RequireLength(objective.cx, num_x(), "objective.cx");
  RequireLength(objective.cy, num_y(), "objective.cy");
  RequireLength(objective.cz, n, "objective.cz");
  for (const PreloadedCut& c : cuts) {
    if (c.function < 0 || c.function >= num_y()) {
      Fail(ErrorCode::kStructural, "cut references missing function");
    }
    RequireLength(c.cut.pi, n, "cut.pi");
  }
}

int HomogenizeBlock(MixedBinaryConicModel& model, int block, int position,
                    const std::string& v_name) {
  if (block < 0 || block >= static_cast<int>(model.blocks.size())) {
    Fail(ErrorCode::kArgument, "no block " + std::to_string(block));
  }
  if (!model.blocks[block].HasConstant()) return -1;
  const int v = model.AddVar({v_name, -1e3, 1e3, false, false});
  for (LinearRow& row : model.linear) row.cx.push_back(0.0);
  model.ShapeObjective();
  model.blocks[block] = Homogenize(model.blocks[block], v, position);
  LinearRow row = model.EmptyRow();
  row.cx[v] = 1.0;
  row.sense = Sense::kEq;
  row.rhs = 1.0;
  row.kind = RowKind::kHomogenization;
  model.linear.push_back(std::move(row));
  return v;
}

std::vector<double> BlockX(const ConicBlock& block, std::span<const double> x) {
  std::vector<double> out(block.x.size());
  for (std::size_t k = 0; k < block.x.size(); ++k) out[k] = x[block.x[k]];
  return out;
}

double BlockResidual(const ConicBlock& block, const Point& p) {
  const double y = block.function ? p.y[*block.function] : 0.0;
  return Residual(block.cone, block.Image(BlockX(block, p.x), y));
}

PointCheck CheckPoint(const MixedBinaryConicModel& model, const Point& p,
                      PointSet set) {
  if (static_cast<int>(p.x.size()) != model.num_x() ||
      static_cast<int>(p.y.size()) != model.num_y() ||
      static_cast<int>(p.z.size()) != model.n) {
    Fail(ErrorCode::kArgument, "point shape does not match the model");
  }
  PointCheck out;
  auto note = [&](double v, const std::string& what) {
    if (v > out.max_violation) {
      out.max_violation = v;
      out.worst = what;
    }
  };
  for (int i = 0; i < model.num_x(); ++i) {
    note(model.vars[i].lb - p.x[i], "lb of x" + std::to_string(i));
    note(p.x[i] - model.vars[i].ub, "ub of x" + std::to_string(i));
  }
  for (int i = 0; i < model.n; ++i) {
    note(-p.z[i], "z" + std::to_string(i) + " >= 0");
    note(p.z[i] - 1.0, "z" + std::to_string(i) + " <= 1");
    if (set == PointSet::kMixedBinary) {
      note(std::min(std::fabs(p.z[i]), std::fabs(p.z[i] - 1.0)),
           "z" + std::to_string(i) + " binary");
    }
  }
  for (std::size_t r = 0; r < model.linear.size(); ++r) {
    const LinearRow& row = model.linear[r];
    const double gap = RowActivity(row, p) - row.rhs;
    const std::string what = "linear[" + std::to_string(r) + "]";
    if (row.sense != Sense::kGe) note(gap, what);
    if (row.sense != Sense::kLe) note(-gap, what);
  }
  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    note(BlockResidual(model.blocks[b], p), "block[" + std::to_string(b) + "]");
  }
  for (int j = 0; j < model.num_y(); ++j) {
    const std::string what = "epigraph[" + std::to_string(j) + "]";
    note(-p.y[j], what);
    if (set == PointSet::kRelaxation) {
      note(LovaszExtension(model.functions[j], p.z) - p.y[j], what);
    } else {
      Subset s = 0;
      for (int i = 0; i < model.n; ++i) {
        if (p.z[i] > 0.5) s |= 1u << i;
      }
      note(model.functions[j].Evaluate(s) - p.y[j], what);
    }
  }
  return out;
}

double ObjectiveValue(const MixedBinaryConicModel& model, const Point& p) {
  const LinearObjective& o = model.objective;
  double s = o.constant;
  for (int i = 0; i < model.num_x(); ++i) s += o.cx[i] * p.x[i];
  for (int j = 0; j < model.num_y(); ++j) s += o.cy[j] * p.y[j];
  for (int i = 0; i < model.n; ++i) s += o.cz[i] * p.z[i];
  return s;
}

}  // namespace cmbx
