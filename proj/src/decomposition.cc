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

#include "cmbx/decomposition.h"

#include <algorithm>
#include <cmath>

#include "cmbx/errors.h"
#include "cmbx/kernels.h"
#include "cmbx/outer_approximation.h"
#include "cmbx/solver.h"

namespace cmbx {
namespace {

std::vector<double> Flatten(const Point& p) {
  std::vector<double> w(p.x);
  w.insert(w.end(), p.y.begin(), p.y.end());
  w.insert(w.end(), p.z.begin(), p.z.end());
  return w;
}

// Outer approximation over d with p + d and p - d both constrained to the
// relaxation.
class MidpointProblem {
 public:
  MidpointProblem(const MixedBinaryConicModel& model, const Point& p,
                  const DecompositionOptions& options)
      : model_(model), L_(LayoutOf(model)), p_(Flatten(p)), oa_(L_.size(), Options(options)) {
    std::vector<double> lb, ub;
    ModelBounds(model, 1.0, lb, ub);
    radius_.resize(L_.size());
    for (int k = 0; k < L_.size(); ++k) {
      radius_[k] = std::max(0.0, std::min(ub[k] - p_[k], p_[k] - lb[k]));
      oa_.SetBounds(k, -radius_[k], radius_[k]);
    }
    SolverOptions so;
    so.tol_feas = options.tol_feas;
    // The model terms in w, then composed with w = p + s d.
    OuterApproximation base = BuildModelOa(model, so, true);
    for (double s : {1.0, -1.0}) {
      for (const ConicTerm& t : base.conic_terms()) {
        ConicTerm u = t;
        u.map.m0 = t.map.Apply(p_);
        for (auto& row : u.map.M) {
          for (double& v : row) v *= s;
        }
        oa_.AddConic(std::move(u));
      }
      for (const EpigraphTerm& e : base.epigraph_terms()) {
        EpigraphTerm u = e;
        u.y0 = kernels::Dot(e.y_row, p_) + e.y0;
        for (double& v : u.y_row) v *= s;
        u.z_map.m0 = e.z_map.Apply(p_);
        for (auto& row : u.z_map.M) {
          for (double& v : row) v *= s;
        }
        oa_.AddEpigraph(std::move(u));
      }
    }
    const int terms = static_cast<int>(base.epigraph_terms().size());
    for (const CutRecord& c : base.cuts()) {
      if (c.origin == CutOrigin::kStatic) {
        const std::vector<double>& g = base.lp().row(c.row);
        const double slack = base.lp().rhs(c.row) - kernels::Dot(g, p_);
        std::vector<double> neg(g);
        for (double& v : neg) v = -v;
        oa_.AddStaticRow(g, slack);
        oa_.AddStaticRow(neg, slack);
      } else if (c.greedy) {
        oa_.AddGreedyCut(c.tag, *c.greedy, CutOrigin::kPreloaded);
        oa_.AddGreedyCut(terms + c.tag, *c.greedy, CutOrigin::kPreloaded);
      }
    }
  }

  const Layout& layout() const { return L_; }
  const std::vector<double>& radius() const { return radius_; }
  OuterApproximation& oa() { return oa_; }

  std::pair<Point, Point> Endpoints(const std::vector<double>& d) const {
    std::vector<double> a(p_), b(p_);
    for (std::size_t k = 0; k < d.size(); ++k) {
      a[k] += d[k];
      b[k] -= d[k];
    }
    return {SplitPoint(model_, a), SplitPoint(model_, b)};
  }

 private:
  static OaOptions Options(const DecompositionOptions& options) {
    OaOptions o;
    o.tol_feas = options.tol_feas / 10.0;
    o.max_iterations = options.max_iterations;
    return o;
  }

  const MixedBinaryConicModel& model_;
  Layout L_;
  std::vector<double> p_;
  std::vector<double> radius_;
  OuterApproximation oa_;
};

bool Accept(const MixedBinaryConicModel& model, const Point& candidate,
            const std::vector<double>& d, MidpointProblem& problem,
            const DecompositionOptions& options, Decomposition& out) {
  auto [a, b] = problem.Endpoints(d);
  const double r1 = CheckPoint(model, a, PointSet::kRelaxation).max_violation;
  const double r2 = CheckPoint(model, b, PointSet::kRelaxation).max_violation;
  const std::vector<double> fa = Flatten(a), fb = Flatten(b), fp = Flatten(candidate);
  double mid = 0.0, dist = 0.0;
  for (std::size_t k = 0; k < fp.size(); ++k) {
    mid = std::max(mid, std::abs(0.5 * (fa[k] + fb[k]) - fp[k]));
    dist = std::max(dist, std::abs(fa[k] - fb[k]));
  }
  const bool ok = r1 <= options.tol_feas && r2 <= options.tol_feas &&
                  mid <= options.midpoint_tol && dist >= options.min_distance;
  if (!ok) {
    out.log.push_back("  rejected: residuals " + std::to_string(r1) + ", " +
                      std::to_string(r2) + ", distance " + std::to_string(dist));
    return false;
  }
  out.decomposed = true;
  out.p1 = std::move(a);
  out.p2 = std::move(b);
  out.residual1 = r1;
  out.residual2 = r2;
  out.midpoint_error = mid;
  out.distance = dist;
  return true;
}

}  // namespace

Decomposition DecompositionCheck(const MixedBinaryConicModel& model, const Point& candidate,
                                 const DecompositionOptions& options) {
  const PointCheck check = CheckPoint(model, candidate, PointSet::kRelaxation);
  if (check.max_violation > options.tol_feas) {
    Fail(ErrorCode::kArgument, "candidate violates " + check.worst + " by " +
                                   std::to_string(check.max_violation));
  }
  Decomposition out;
  MidpointProblem problem(model, candidate, options);
  const Layout& L = problem.layout();
  OuterApproximation& oa = problem.oa();

  // z endpoints paired to binary vectors: z = 1/2 splits as {0, 1}.
  std::vector<int> halves;
  bool pairable = true;
  for (int i = 0; i < L.n; ++i) {
    const double zi = candidate.z[i];
    if (std::abs(zi - 0.5) <= 1e-9) halves.push_back(i);
    else if (std::abs(zi) > 1e-9 && std::abs(zi - 1.0) > 1e-9) pairable = false;
  }
  if (pairable && !halves.empty() && halves.size() <= 12) {
    oa.SetObjective(std::vector<double>(L.size(), 0.0));
    const int h = static_cast<int>(halves.size());
    for (Subset signs = 0; signs < (Subset{1} << (h - 1)); ++signs) {
      for (int i = 0; i < L.n; ++i) oa.SetBounds(L.z(i), 0.0, 0.0);
      std::string label = "binary-pairing d_z=(";
      for (int t = 0; t < h; ++t) {
        const double v = (t > 0 && Contains(signs, t - 1)) ? -0.5 : 0.5;
        oa.SetBounds(L.z(halves[t]), v, v);
        label += (t ? "," : "") + std::to_string(v);
      }
      label += ")";
      const OaResult res = oa.Solve();
      out.log.push_back(label + ": " + OaStatusName(res.status));
      if (res.status == OaStatus::kOptimal &&
          Accept(model, candidate, res.w, problem, options, out)) {
        out.method = "binary-pairing";
        return out;
      }
    }
  }

  for (int i = 0; i < L.n; ++i) {
    oa.SetBounds(L.z(i), -problem.radius()[L.z(i)], problem.radius()[L.z(i)]);
  }
  for (int k = 0; k < L.size(); ++k) {
    if (problem.radius()[k] < options.min_distance / 2) continue;
    std::vector<double> c(L.size(), 0.0);
    c[k] = -1.0;
    oa.SetObjective(c);
    const OaResult res = oa.Solve();
    const double reach = res.status == OaStatus::kOptimal ? -res.value : 0.0;
    out.log.push_back("coordinate " + std::to_string(k) + ": " + OaStatusName(res.status) +
                      ", max |d| = " + std::to_string(reach));
    if (res.status == OaStatus::kOptimal && 2.0 * reach >= options.min_distance &&
        Accept(model, candidate, res.w, problem, options, out)) {
      out.method = "coordinate " + std::to_string(k);
      return out;
    }
  }
  return out;
}

Json ToJson(const Decomposition& d) {
  Json j;
  j["outcome"] = d.decomposed ? "Decomposed" : "NoneFound";
  if (d.decomposed) {
    j["method"] = d.method;
    j["p1"] = {{"x", d.p1.x}, {"y", d.p1.y}, {"z", d.p1.z}};
    j["p2"] = {{"x", d.p2.x}, {"y", d.p2.y}, {"z", d.p2.z}};
    j["distance"] = d.distance;
    j["residuals"] = {d.residual1, d.residual2};
    j["midpoint_error"] = d.midpoint_error;
  }
  j["log"] = d.log;
  return j;
}

}  // namespace cmbx
