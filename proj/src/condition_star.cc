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

#include "cmbx/condition_star.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "cmbx/kernels.h"
#include "cmbx/outer_approximation.h"
#include "cmbx/rng.h"

namespace cmbx {
namespace {

struct LocalRow {
  std::vector<double> a;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
  int index = 0;

  double Violation(std::span<const double> x) const {
    const double lhs = kernels::Dot(a, x);
    switch (sense) {
      case Sense::kLe: return lhs - rhs;
      case Sense::kGe: return rhs - lhs;
      case Sense::kEq: return std::abs(lhs - rhs);
    }
    return 0.0;
  }
};

class BlockSampler {
 public:
  BlockSampler(const MixedBinaryConicModel& model, int b, const FalsifierOptions& options)
      : model_(model), block_(model.blocks[b]), options_(options) {
    const int k = static_cast<int>(block_.x.size());
    std::vector<int> local(model.num_x(), -1);
    for (int c = 0; c < k; ++c) {
      local[block_.x[c]] = c;
      lb_.push_back(model.vars[block_.x[c]].lb);
      ub_.push_back(model.vars[block_.x[c]].ub);
    }
    if (!options.include_slice_rows) return;
    for (std::size_t r = 0; r < model.linear.size(); ++r) {
      const LinearRow& row = model.linear[r];
      if (!row.XOnly()) continue;
      LocalRow lr{std::vector<double>(k, 0.0), row.sense, row.rhs, static_cast<int>(r)};
      bool inside = true;
      int support = 0, last = -1;
      for (int i = 0; i < model.num_x() && inside; ++i) {
        if (row.cx[i] == 0.0) continue;
        if (local[i] < 0) inside = false;
        else {
          lr.a[local[i]] = row.cx[i];
          ++support;
          last = local[i];
        }
      }
      if (!inside || support == 0) continue;
      if (support == 1 && row.sense == Sense::kEq) {
        lb_[last] = ub_[last] = row.rhs / lr.a[last];
      }
      rows_.push_back(std::move(lr));
    }
  }

  double Y(Subset z) const {
    return block_.function ? model_.functions[*block_.function].Evaluate(z) : 0.0;
  }

  double ConeResidual(std::span<const double> x, double y) const {
    return Residual(block_.cone, block_.Image(x, y));
  }

  bool Feasible(std::span<const double> x, double y) const {
    if (ConeResidual(x, y) > options_.tol) return false;
    for (const LocalRow& r : rows_) {
      if (r.Violation(x) > options_.tol * (1.0 + std::abs(r.rhs))) return false;
    }
    return true;
  }

  const std::optional<std::vector<double>>& Anchor(Subset z) {
    auto it = anchors_.find(z);
    if (it != anchors_.end()) return it->second;
    std::optional<std::vector<double>>& slot = anchors_[z];
    const int k = static_cast<int>(lb_.size());
    OaOptions o;
    o.tol_feas = options_.tol / 10.0;
    o.polymatroid = false;
    OuterApproximation oa(k, o);
    for (int c = 0; c < k; ++c) oa.SetBounds(c, lb_[c], ub_[c]);
    ConicTerm term;
    term.cone = block_.cone;
    term.map.M = block_.A;
    term.map.m0 = block_.Image(std::vector<double>(k, 0.0), Y(z));
    oa.AddConic(std::move(term));
    for (const LocalRow& r : rows_) {
      if (r.sense != Sense::kGe) oa.AddStaticRow(r.a, r.rhs);
      if (r.sense != Sense::kLe) {
        std::vector<double> g(r.a);
        for (double& v : g) v = -v;
        oa.AddStaticRow(g, -r.rhs);
      }
    }
    oa.SetObjective(std::vector<double>(k, 0.0));
    const OaResult res = oa.Solve();
    if (res.status == OaStatus::kOptimal && Feasible(res.w, Y(z))) slot = res.w;
    return slot;
  }

  std::vector<double> Draw(Rng& rng) const {
    std::vector<double> x(lb_.size());
    for (std::size_t c = 0; c < x.size(); ++c) x[c] = rng.Uniform(lb_[c], ub_[c]);
    return x;
  }

  // Largest feasible point on the segment from the anchor toward x.
  std::vector<double> PullBack(const std::vector<double>& anchor,
                               const std::vector<double>& x, double y) const {
    double lo = 0.0, hi = 1.0;
    std::vector<double> p(x.size());
    auto at = [&](double t) {
      for (std::size_t c = 0; c < x.size(); ++c) p[c] = anchor[c] + t * (x[c] - anchor[c]);
    };
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      at(mid);
      (Feasible(p, y) ? lo : hi) = mid;
    }
    at(lo);
    return p;
  }

  // The first alpha on the grid at which a scaled copy of the feasible point
  // x leaves the block (or its slice rows).
  std::optional<ConditionStarWitness> Test(const std::vector<double>& x, Subset z,
                                           long& tested) const {
    const double y = Y(z);
    const double base = std::max(0.0, ConeResidual(x, y));
    std::vector<double> xs(x.size());
    for (double alpha : options_.alphas) {
      ++tested;
      for (std::size_t c = 0; c < x.size(); ++c) xs[c] = alpha * x[c];
      const std::vector<double> image = block_.Image(xs, y);
      const double viol = Residual(block_.cone, image);
      const double eps = 1e-9 * (1.0 + kernels::MaxAbs(image));
      if (viol > std::max(options_.tol, alpha * base) + eps) {
        return ConditionStarWitness{0, x, z, alpha, viol, "cone"};
      }
      for (const LocalRow& r : rows_) {
        const double rv = r.Violation(xs);
        const double allow = std::max(options_.tol * (1.0 + std::abs(r.rhs)),
                                      alpha * std::max(0.0, r.Violation(x)));
        if (rv > allow + 1e-9 * (1.0 + std::abs(r.rhs))) {
          return ConditionStarWitness{0, x, z, alpha, rv, "row " + std::to_string(r.index)};
        }
      }
    }
    return std::nullopt;
  }

 private:
  const MixedBinaryConicModel& model_;
  const ConicBlock& block_;
  const FalsifierOptions& options_;
  std::vector<double> lb_, ub_;
  std::vector<LocalRow> rows_;
  std::map<Subset, std::optional<std::vector<double>>> anchors_;
};

}  // namespace

const char* FalsifyOutcomeName(FalsifyOutcome o) {
  switch (o) {
    case FalsifyOutcome::kWitness: return "Witness";
    case FalsifyOutcome::kNone: return "None";
    case FalsifyOutcome::kInconclusive: return "Inconclusive";
  }
  return "Unknown";
}

FalsifyResult ConditionStarFalsify(const MixedBinaryConicModel& model,
                                   const FalsifierOptions& options) {
  model.Validate();
  FalsifyResult result;
  bool inconclusive = false;
  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    const ConicBlock& block = model.blocks[b];
    BlockSampler sampler(model, static_cast<int>(b), options);
    Rng rng(Rng::Derive(options.seed, b));
    const int n = block.function ? model.n : 0;
    const bool enumerate = n <= options.max_enumeration;
    const Subset count = enumerate ? Subset{1} << n : 0;
    long feasible = 0;
    auto check = [&](const std::vector<double>& x, Subset z) {
      ++feasible;
      std::optional<ConditionStarWitness> w = sampler.Test(x, z, result.scalings_tested);
      if (w) {
        w->block = static_cast<int>(b);
        result.witness = std::move(w);
      }
      return result.witness.has_value();
    };
    for (int s = 0; s < options.samples; ++s) {
      Subset z = 0;
      if (enumerate) {
        z = static_cast<Subset>(s % count);
      } else {
        for (int i = 0; i < n; ++i) {
          if (rng.Uniform() < 0.5) z |= Subset{1} << i;
        }
      }
      const double y = sampler.Y(z);
      const bool fresh = enumerate ? s < static_cast<int>(count) : true;
      const std::optional<std::vector<double>>& anchor = sampler.Anchor(z);
      if (fresh && anchor && check(*anchor, z)) break;
      const std::vector<double> x = sampler.Draw(rng);
      if (sampler.Feasible(x, y)) {
        if (check(x, z)) break;
      } else if (anchor) {
        if (check(sampler.PullBack(*anchor, x, y), z)) break;
      }
    }
    result.feasible_points += feasible;
    if (result.witness) break;
    if (feasible == 0) {
      inconclusive = true;
      result.diagnostic += "block " + std::to_string(b) + ": no feasible point found; ";
    }
  }
  if (result.witness) {
    result.outcome = FalsifyOutcome::kWitness;
  } else {
    result.outcome = inconclusive ? FalsifyOutcome::kInconclusive : FalsifyOutcome::kNone;
  }
  return result;
}

}  // namespace cmbx
