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

#include "cmbx/outer_approximation.h"

#include <algorithm>
#include <cmath>

#include "cmbx/errors.h"
#include "cmbx/kernels.h"

namespace cmbx {
namespace {

void CheckMap(const AffineMap& map, int rows, int num_w, const char* what) {
  if (static_cast<int>(map.M.size()) != rows || static_cast<int>(map.m0.size()) != rows) {
    Fail(ErrorCode::kStructural, std::string(what) + " map has the wrong number of rows");
  }
  for (const auto& r : map.M) {
    if (static_cast<int>(r.size()) != num_w) {
      Fail(ErrorCode::kStructural, std::string(what) + " map has the wrong number of columns");
    }
  }
}

}  // namespace

std::vector<double> AffineMap::Apply(std::span<const double> w) const {
  std::vector<double> out(m0);
  for (std::size_t r = 0; r < M.size(); ++r) out[r] += kernels::Dot(M[r], w);
  return out;
}

const char* CutOriginName(CutOrigin o) {
  switch (o) {
    case CutOrigin::kStatic: return "static";
    case CutOrigin::kPreloaded: return "preloaded";
    case CutOrigin::kConic: return "conic";
    case CutOrigin::kPolymatroid: return "polymatroid";
  }
  return "unknown";
}

const char* OaStatusName(OaStatus s) {
  switch (s) {
    case OaStatus::kOptimal: return "Optimal";
    case OaStatus::kInfeasible: return "Infeasible";
    case OaStatus::kCapHit: return "CapHit";
    case OaStatus::kStalled: return "Stalled";
    case OaStatus::kNumericalError: return "NumericalError";
  }
  return "Unknown";
}

OuterApproximation::OuterApproximation(int num_w, OaOptions options)
    : lp_(num_w, options.lp), options_(options) {}

void OuterApproximation::AddConic(ConicTerm term) {
  term.cone.Validate();
  CheckMap(term.map, term.cone.dim, num_w(), "conic");
  conic_.push_back(std::move(term));
}

void OuterApproximation::AddEpigraph(EpigraphTerm term) {
  CheckMap(term.z_map, term.f.n(), num_w(), "epigraph z");
  if (static_cast<int>(term.y_row.size()) != num_w()) {
    Fail(ErrorCode::kStructural, "epigraph y row has the wrong length");
  }
  epigraph_.push_back(std::move(term));
}

void OuterApproximation::AddStaticRow(std::span<const double> g, double h) {
  CutRecord record;
  record.origin = CutOrigin::kStatic;
  record.row = lp_.AddRow(g, h);
  cuts_.push_back(std::move(record));
}

bool OuterApproximation::AddCutRow(std::vector<double> g, double h, CutRecord record) {
  const double scale = kernels::MaxAbs(g);
  if (scale == 0.0) {
    if (h >= 0.0) return false;
  } else {
    for (double& v : g) v /= scale;
    h /= scale;
  }
  if (!keys_.insert(CutKey(g, h)).second) return false;
  record.row = lp_.AddRow(g, h);
  cuts_.push_back(std::move(record));
  return true;
}

bool OuterApproximation::AddGreedyCut(int term, const GreedyCut& cut, CutOrigin origin) {
  const EpigraphTerm& e = epigraph_.at(term);
  // pi^T z(w) - y(w) <= -offset
  std::vector<double> g(num_w(), 0.0);
  double h = -cut.offset + e.y0;
  for (std::size_t i = 0; i < cut.pi.size(); ++i) {
    if (cut.pi[i] == 0.0) continue;
    kernels::Axpy(cut.pi[i], e.z_map.M[i], g);
    h -= cut.pi[i] * e.z_map.m0[i];
  }
  kernels::Axpy(-1.0, e.y_row, g);
  CutRecord record;
  record.origin = origin;
  record.tag = e.tag;
  record.greedy = cut;
  return AddCutRow(std::move(g), h, std::move(record));
}

double OuterApproximation::MaxViolation(std::span<const double> w) const {
  double worst = 0.0;
  for (const ConicTerm& t : conic_) {
    worst = std::max(worst, Residual(t.cone, t.map.Apply(w)));
  }
  for (const EpigraphTerm& e : epigraph_) {
    std::vector<double> z = e.z_map.Apply(w);
    for (double& v : z) v = std::clamp(v, 0.0, 1.0);
    const double y = kernels::Dot(e.y_row, w) + e.y0;
    const Separation sep = SeparateGreedy(e.f, z, y, options_.tol_feas);
    worst = std::max(worst, sep.cut.offset + sep.value - y);
  }
  return worst;
}

OaResult OuterApproximation::Solve(const std::function<void(const OaTraceRow&)>& trace) {
  OaResult result;
  const double tol = options_.tol_feas;
  for (long it = 1;; ++it) {
    result.lp = lp_.Solve();
    result.iterations = it;
    if (result.lp.status == LpStatus::kInfeasible) {
      result.status = OaStatus::kInfeasible;
      result.diagnostic = result.lp.diagnostic;
      return result;
    }
    if (result.lp.status != LpStatus::kOptimal) {
      result.status = OaStatus::kNumericalError;
      result.diagnostic = std::string("LP ") + LpStatusName(result.lp.status) + ": " +
                          result.lp.diagnostic;
      return result;
    }
    result.w = result.lp.w;
    result.value = result.lp.value;
    const std::vector<double>& w = result.w;

    double worst = 0.0;
    int added = 0;
    if (options_.conic) {
      for (const ConicTerm& t : conic_) {
        const std::vector<double> v = t.map.Apply(w);
        const double res = Residual(t.cone, v);
        worst = std::max(worst, res);
        if (res <= tol) continue;
        const SupportingCut cut = SupportingHyperplane(t.cone, v, tol);
        // lambda^T (M w + m0) >= 0  ->  -(M^T lambda)^T w <= lambda^T m0
        std::vector<double> g(num_w(), 0.0);
        double h = 0.0;
        for (std::size_t r = 0; r < cut.lambda.size(); ++r) {
          if (cut.lambda[r] == 0.0) continue;
          kernels::Axpy(-cut.lambda[r], t.map.M[r], g);
          h += cut.lambda[r] * t.map.m0[r];
        }
        CutRecord record;
        record.origin = CutOrigin::kConic;
        record.tag = t.tag;
        if (AddCutRow(std::move(g), h, std::move(record))) {
          ++added;
          ++result.conic_cuts;
        }
      }
    }
    if (options_.polymatroid) {
      for (std::size_t k = 0; k < epigraph_.size(); ++k) {
        const EpigraphTerm& e = epigraph_[k];
        std::vector<double> z = e.z_map.Apply(w);
        for (double& v : z) v = std::clamp(v, 0.0, 1.0);
        const double y = kernels::Dot(e.y_row, w) + e.y0;
        const Separation sep = SeparateGreedy(e.f, z, y, tol);
        worst = std::max(worst, sep.cut.offset + sep.value - y);
        if (!sep.violated) continue;
        if (e.validate_cuts && !ValidateCut(e.f, sep.cut, tol).valid) continue;
        if (AddGreedyCut(static_cast<int>(k), sep.cut, CutOrigin::kPolymatroid)) {
          ++added;
          ++result.polymatroid_cuts;
        }
      }
    }
    result.max_violation = worst;
    if (trace) trace({it, result.value, worst, added});

    if (added == 0) {
      result.status = worst <= tol ? OaStatus::kOptimal : OaStatus::kStalled;
      if (result.status == OaStatus::kStalled) {
        result.diagnostic = "violation " + std::to_string(worst) +
                            " remains but every separating cut is already present";
      }
      return result;
    }
    if (it >= options_.max_iterations) {
      result.status = OaStatus::kCapHit;
      result.diagnostic = "iteration cap reached";
      return result;
    }
  }
}

}  // namespace cmbx
