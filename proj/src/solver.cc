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

#include "cmbx/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "cmbx/errors.h"
#include "cmbx/kernels.h"

namespace cmbx {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double Widen(double bound, double scale, double direction) {
  return bound + direction * (scale - 1.0) * std::max(1.0, std::abs(bound));
}

SolveStatus FromOa(OaStatus s) {
  switch (s) {
    case OaStatus::kOptimal: return SolveStatus::kOptimal;
    case OaStatus::kInfeasible: return SolveStatus::kInfeasible;
    case OaStatus::kCapHit: return SolveStatus::kCapHit;
    case OaStatus::kStalled: return SolveStatus::kStalled;
    case OaStatus::kNumericalError: return SolveStatus::kNumericalError;
  }
  return SolveStatus::kNumericalError;
}

std::vector<double> ObjectiveVector(const MixedBinaryConicModel& model) {
  const Layout L = LayoutOf(model);
  std::vector<double> c(L.size(), 0.0);
  const LinearObjective& o = model.objective;
  for (int i = 0; i < L.num_x && i < static_cast<int>(o.cx.size()); ++i) c[i] = o.cx[i];
  for (int j = 0; j < L.num_y && j < static_cast<int>(o.cy.size()); ++j) c[L.y(j)] = o.cy[j];
  for (int i = 0; i < L.n && i < static_cast<int>(o.cz.size()); ++i) c[L.z(i)] = o.cz[i];
  return c;
}

// Artificial bounds carrying a positive multiplier. y bounds count only when
// they are the free epigraph box, not values fixed by enumeration.
std::vector<std::string> Touched(const MixedBinaryConicModel& model, const LpSolution& lp,
                                 double tol, bool y_fixed) {
  std::vector<std::string> out;
  if (lp.lower_duals.empty()) return out;
  const Layout L = LayoutOf(model);
  for (int i = 0; i < L.num_x; ++i) {
    const ContinuousVar& v = model.vars[i];
    if (!v.lb_natural && lp.lower_duals[i] > tol) out.push_back(v.name + ".lb");
    if (!v.ub_natural && lp.upper_duals[i] > tol) out.push_back(v.name + ".ub");
  }
  if (!y_fixed) {
    for (int j = 0; j < L.num_y; ++j) {
      if (lp.upper_duals[L.y(j)] > tol) out.push_back("y" + std::to_string(j) + ".ub");
    }
  }
  return out;
}

bool ZRowsHold(const MixedBinaryConicModel& model, const std::vector<double>& z) {
  for (const LinearRow& row : model.linear) {
    if (!row.ZOnly()) continue;
    const double lhs = kernels::Dot(row.cz, z);
    const double tol = 1e-9 * (1.0 + std::abs(row.rhs));
    const bool ok = row.sense == Sense::kLe   ? lhs <= row.rhs + tol
                    : row.sense == Sense::kGe ? lhs >= row.rhs - tol
                                              : std::abs(lhs - row.rhs) <= tol;
    if (!ok) return false;
  }
  return true;
}

void CollectGreedy(const OuterApproximation& oa, SolveResult& r) {
  for (const CutRecord& c : oa.cuts()) {
    if (c.greedy) r.greedy_cuts.push_back({c.tag, c.origin, *c.greedy});
  }
}

// Inner problem of the exact solvers: z fixed to `mask`, y_j = f_j(z).
struct FixedSolve {
  OaResult oa;
  Point point;
};

FixedSolve SolveFixed(OuterApproximation& inner, const MixedBinaryConicModel& model,
                      Subset mask) {
  const Layout L = LayoutOf(model);
  for (int i = 0; i < L.n; ++i) {
    const double v = Contains(mask, i) ? 1.0 : 0.0;
    inner.SetBounds(L.z(i), v, v);
  }
  for (int j = 0; j < L.num_y; ++j) {
    const double f = model.functions[j].Evaluate(mask);
    inner.SetBounds(L.y(j), f, f);
  }
  FixedSolve out;
  out.oa = inner.Solve();
  if (out.oa.status == OaStatus::kOptimal) out.point = SplitPoint(model, out.oa.w);
  return out;
}

void Finish(SolveResult& r, Clock::time_point start) { r.wall_time = Seconds(start); }

}  // namespace

const char* SolveStatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kCapHit: return "CapHit";
    case SolveStatus::kStalled: return "Stalled";
    case SolveStatus::kNodeLimit: return "NodeLimit";
    case SolveStatus::kNumericalError: return "NumericalError";
  }
  return "Unknown";
}

Json ToJson(const SolveResult& r) {
  Json j;
  j["status"] = SolveStatusName(r.status);
  j["value"] = r.value;
  j["bound"] = r.bound;
  j["point"] = {{"x", r.point.x}, {"y", r.point.y}, {"z", r.point.z}};
  j["cuts_added"] = r.cuts_added();
  j["conic_cuts"] = r.conic_cuts;
  j["polymatroid_cuts"] = r.polymatroid_cuts;
  j["iterations"] = r.iterations;
  j["nodes"] = r.nodes;
  j["wall_time"] = r.wall_time;
  j["touched"] = r.touched;
  j["diagnostic"] = r.diagnostic;
  return j;
}

Layout LayoutOf(const MixedBinaryConicModel& model) {
  return {model.num_x(), model.num_y(), model.n};
}

double EpigraphBound(const SetFunctionSpec& f) {
  double f_max;
  if (f.n() <= kEnumerationLimit) {
    f_max = ExtremalValue(f, Extremum::kMax);
  } else {
    f_max = std::max(f.EmptyValue(), f.Evaluate((Subset{1} << f.n()) - 1));
  }
  return std::max(1e3, 10.0 * f_max);
}

void ModelBounds(const MixedBinaryConicModel& model, double bound_scale,
                 std::vector<double>& lb, std::vector<double>& ub) {
  const Layout L = LayoutOf(model);
  lb.assign(L.size(), 0.0);
  ub.assign(L.size(), 1.0);
  for (int i = 0; i < L.num_x; ++i) {
    const ContinuousVar& v = model.vars[i];
    lb[i] = v.lb_natural ? v.lb : Widen(v.lb, bound_scale, -1.0);
    ub[i] = v.ub_natural ? v.ub : Widen(v.ub, bound_scale, 1.0);
  }
  for (int j = 0; j < L.num_y; ++j) {
    ub[L.y(j)] = Widen(EpigraphBound(model.functions[j]), bound_scale, 1.0);
  }
}

Point SplitPoint(const MixedBinaryConicModel& model, std::span<const double> w) {
  const Layout L = LayoutOf(model);
  Point p;
  p.x.assign(w.begin(), w.begin() + L.num_x);
  p.y.assign(w.begin() + L.num_x, w.begin() + L.num_x + L.num_y);
  p.z.assign(w.begin() + L.num_x + L.num_y, w.begin() + L.size());
  return p;
}

OuterApproximation BuildModelOa(const MixedBinaryConicModel& model,
                                const SolverOptions& options, bool epigraph) {
  model.Validate();
  const Layout L = LayoutOf(model);
  OaOptions o;
  o.tol_feas = options.tol_feas;
  o.max_iterations = options.max_iterations;
  o.polymatroid = epigraph && options.polymatroid;
  o.lp.pivot_tol = options.pivot_tol;
  OuterApproximation oa(L.size(), o);

  std::vector<double> lb, ub;
  ModelBounds(model, options.bound_scale, lb, ub);
  for (int k = 0; k < L.size(); ++k) oa.SetBounds(k, lb[k], ub[k]);

  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    const ConicBlock& block = model.blocks[b];
    ConicTerm t;
    t.cone = block.cone;
    t.tag = static_cast<int>(b);
    t.map.M.assign(block.cone.dim, std::vector<double>(L.size(), 0.0));
    t.map.m0 = block.HasConstant() ? block.C : std::vector<double>(block.cone.dim, 0.0);
    for (int r = 0; r < block.cone.dim; ++r) {
      for (std::size_t c = 0; c < block.x.size(); ++c) t.map.M[r][block.x[c]] += block.A[r][c];
      if (block.function) t.map.M[r][L.y(*block.function)] += block.B[r];
    }
    oa.AddConic(std::move(t));
  }

  for (const LinearRow& row : model.linear) {
    std::vector<double> g(L.size(), 0.0);
    for (int i = 0; i < L.num_x; ++i) g[i] = row.cx[i];
    for (int j = 0; j < L.num_y; ++j) g[L.y(j)] = row.cy[j];
    for (int i = 0; i < L.n; ++i) g[L.z(i)] = row.cz[i];
    if (row.sense != Sense::kGe) oa.AddStaticRow(g, row.rhs);
    if (row.sense != Sense::kLe) {
      for (double& v : g) v = -v;
      oa.AddStaticRow(g, -row.rhs);
    }
  }

  if (!o.polymatroid) return oa;
  for (int j = 0; j < L.num_y; ++j) {
    const SetFunctionSpec& f = model.functions[j];
    EpigraphTerm e{f, std::vector<double>(L.size(), 0.0), 0.0, {}, j, false};
    e.y_row[L.y(j)] = 1.0;
    e.z_map.M.assign(L.n, std::vector<double>(L.size(), 0.0));
    e.z_map.m0.assign(L.n, 0.0);
    for (int i = 0; i < L.n; ++i) e.z_map.M[i][L.z(i)] = 1.0;
    const bool checkable = f.n() <= 12;
    e.validate_cuts = checkable && !CheckSubmodular(f, options.tol_feas).submodular;
    const bool preload = e.validate_cuts && f.n() <= 5;
    oa.AddEpigraph(std::move(e));
    if (preload) {
      for (const GreedyCut& cut : EnumeratePolarVertices(f, options.tol_feas)) {
        oa.AddGreedyCut(j, cut, CutOrigin::kPreloaded);
      }
    }
  }
  for (const PreloadedCut& pc : model.cuts) {
    oa.AddGreedyCut(pc.function, pc.cut, CutOrigin::kPreloaded);
  }
  return oa;
}

SolveResult SolveRelaxation(const MixedBinaryConicModel& model,
                            const SolverOptions& options) {
  const auto start = Clock::now();
  SolveResult r;
  OuterApproximation oa = BuildModelOa(model, options, true);
  oa.SetObjective(ObjectiveVector(model));
  const OaResult res = oa.Solve(options.trace);
  r.status = FromOa(res.status);
  r.iterations = res.iterations;
  r.conic_cuts = res.conic_cuts;
  r.polymatroid_cuts = res.polymatroid_cuts;
  r.diagnostic = res.diagnostic;
  CollectGreedy(oa, r);
  if (res.status == OaStatus::kInfeasible) {
    r.value = r.bound = kInf;
  } else if (!res.w.empty()) {
    r.value = res.value + model.objective.constant;
    r.bound = r.value;
    r.point = SplitPoint(model, res.w);
    r.touched = Touched(model, res.lp, options.touch_tol, false);
  }
  Finish(r, start);
  return r;
}

SolveResult SolveExactEnumeration(const MixedBinaryConicModel& model,
                                  const SolverOptions& options) {
  const auto start = Clock::now();
  if (model.n > 20) Fail(ErrorCode::kCapacity, "exact enumeration needs n <= 20");
  SolveResult r;
  r.status = SolveStatus::kInfeasible;
  r.value = r.bound = kInf;
  OuterApproximation inner = BuildModelOa(model, options, false);
  inner.SetObjective(ObjectiveVector(model));
  const Subset count = Subset{1} << model.n;
  for (Subset mask = 0; mask < count; ++mask) {
    const std::vector<double> z = Indicator(mask, model.n);
    if (!ZRowsHold(model, z)) continue;
    FixedSolve s = SolveFixed(inner, model, mask);
    ++r.nodes;
    r.iterations += s.oa.iterations;
    if (s.oa.status == OaStatus::kInfeasible) continue;
    if (s.oa.status != OaStatus::kOptimal) {
      r.status = FromOa(s.oa.status);
      r.diagnostic = "z mask " + std::to_string(mask) + ": " + s.oa.diagnostic;
      break;
    }
    const double value = s.oa.value + model.objective.constant;
    if (value < r.value) {
      r.status = SolveStatus::kOptimal;
      r.value = r.bound = value;
      r.point = s.point;
      r.touched = Touched(model, s.oa.lp, options.touch_tol, true);
    }
  }
  r.conic_cuts = static_cast<int>(std::count_if(
      inner.cuts().begin(), inner.cuts().end(),
      [](const CutRecord& c) { return c.origin == CutOrigin::kConic; }));
  Finish(r, start);
  return r;
}

SolveResult SolveBranchAndBound(const MixedBinaryConicModel& model,
                                const SolverOptions& options) {
  const auto start = Clock::now();
  const Layout L = LayoutOf(model);
  SolveResult r;
  r.value = kInf;
  OuterApproximation relax = BuildModelOa(model, options, true);
  OuterApproximation inner = BuildModelOa(model, options, false);
  const std::vector<double> c = ObjectiveVector(model);
  relax.SetObjective(c);
  inner.SetObjective(c);
  const double constant = model.objective.constant;

  struct Node {
    double bound;
    long id;
    std::vector<double> lo, hi;
  };
  auto worse = [](const Node& a, const Node& b) {
    return a.bound != b.bound ? a.bound > b.bound : a.id > b.id;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  long next_id = 0;
  open.push({-kInf, next_id++, std::vector<double>(L.n, 0.0), std::vector<double>(L.n, 1.0)});

  auto close_enough = [&](double a, double b) {
    return a >= b - options.tol_opt * (1.0 + std::abs(b));
  };
  bool error = false;
  while (!open.empty()) {
    if (r.nodes >= options.max_nodes) {
      r.status = SolveStatus::kNodeLimit;
      r.bound = open.top().bound;
      r.diagnostic = "node limit reached";
      break;
    }
    Node node = open.top();
    open.pop();
    if (std::isfinite(r.value) && close_enough(node.bound, r.value)) continue;
    for (int i = 0; i < L.n; ++i) relax.SetBounds(L.z(i), node.lo[i], node.hi[i]);
    const OaResult res = relax.Solve();
    ++r.nodes;
    r.iterations += res.iterations;
    if (res.status == OaStatus::kInfeasible) continue;
    if (res.status != OaStatus::kOptimal) {
      r.status = FromOa(res.status);
      r.diagnostic = "node " + std::to_string(node.id) + ": " + res.diagnostic;
      error = true;
      break;
    }
    const double bound = res.value + constant;
    if (std::isfinite(r.value) && close_enough(bound, r.value)) continue;

    int branch = -1;
    double frac_best = options.integrality_tol;
    for (int i = 0; i < L.n; ++i) {
      const double zi = res.w[L.z(i)];
      const double frac = std::abs(zi - std::round(zi));
      if (frac > frac_best) {
        frac_best = frac;
        branch = i;
      }
    }
    if (branch < 0) {
      Subset mask = 0;
      for (int i = 0; i < L.n; ++i) {
        if (res.w[L.z(i)] > 0.5) mask |= Subset{1} << i;
      }
      if (ZRowsHold(model, Indicator(mask, L.n))) {
        FixedSolve s = SolveFixed(inner, model, mask);
        r.iterations += s.oa.iterations;
        if (s.oa.status == OaStatus::kOptimal) {
          const double value = s.oa.value + constant;
          if (value < r.value) {
            r.value = value;
            r.point = s.point;
            r.touched = Touched(model, s.oa.lp, options.touch_tol, true);
          }
          if (value <= bound + options.tol_opt * (1.0 + std::abs(bound))) continue;
        } else if (s.oa.status != OaStatus::kInfeasible) {
          r.status = FromOa(s.oa.status);
          r.diagnostic = "incumbent at node " + std::to_string(node.id) + ": " +
                         s.oa.diagnostic;
          error = true;
          break;
        }
      }
      for (int i = 0; i < L.n; ++i) {
        if (node.lo[i] < node.hi[i]) {
          branch = i;
          break;
        }
      }
      if (branch < 0) continue;
    }
    for (double v : {0.0, 1.0}) {
      Node child{bound, next_id++, node.lo, node.hi};
      child.lo[branch] = child.hi[branch] = v;
      open.push(std::move(child));
    }
  }
  if (!error && open.empty()) {
    r.status = std::isfinite(r.value) ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    r.bound = r.value;
  }
  for (const CutRecord& cut : relax.cuts()) {
    if (cut.origin == CutOrigin::kConic) ++r.conic_cuts;
    if (cut.origin == CutOrigin::kPolymatroid) ++r.polymatroid_cuts;
  }
  CollectGreedy(relax, r);
  Finish(r, start);
  return r;
}

}  // namespace cmbx
