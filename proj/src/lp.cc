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

#include "cmbx/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmbx/errors.h"
#include "cmbx/kernels.h"

namespace cmbx {
namespace {

constexpr double kSingular = 1e-12;
constexpr double kFinalTol = 1e-7;

}  // namespace

const char* LpStatusName(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kIterationLimit: return "IterationLimit";
    case LpStatus::kNumericalError: return "NumericalError";
  }
  return "Unknown";
}

IncrementalLp::IncrementalLp(int num_vars, LpOptions options)
    : n_(num_vars), options_(options) {
  if (n_ < 1) Fail(ErrorCode::kArgument, "LP needs at least one variable");
  c_.assign(n_, 0.0);
  lb_.assign(n_, 0.0);
  ub_.assign(n_, 0.0);
  position_.assign(2 * n_, -1);
  ResetBasis();
}

void IncrementalLp::SetObjective(std::span<const double> c) {
  if (static_cast<int>(c.size()) != n_) Fail(ErrorCode::kArgument, "objective length");
  c_.assign(c.begin(), c.end());
  ComputeBasicValues();
  if (!BasisFeasible(options_.feas_tol)) ResetBasis();
}

void IncrementalLp::SetBounds(int var, double lb, double ub) {
  if (var < 0 || var >= n_) Fail(ErrorCode::kArgument, "bound index out of range");
  if (!std::isfinite(lb) || !std::isfinite(ub)) {
    Fail(ErrorCode::kDomain, "LP bounds must be finite");
  }
  lb_[var] = lb;
  ub_[var] = ub;
}

int IncrementalLp::AddRow(std::span<const double> g, double h) {
  if (static_cast<int>(g.size()) != n_) Fail(ErrorCode::kArgument, "row length");
  if (!std::isfinite(h)) Fail(ErrorCode::kDomain, "row rhs must be finite");
  rows_.emplace_back(g.begin(), g.end());
  rhs_.push_back(h);
  position_.push_back(-1);
  return num_rows() - 1;
}

double IncrementalLp::DualCost(int id) const {
  if (id < n_) return -lb_[id];
  if (id < 2 * n_) return ub_[id - n_];
  return rhs_[id - 2 * n_];
}

// d = B^{-1} a_id.
void IncrementalLp::DualColumnTimesBinv(int id, std::vector<double>& d) const {
  d.assign(n_, 0.0);
  if (id < 2 * n_) {
    const int i = id < n_ ? id : id - n_;
    const double sign = id < n_ ? -1.0 : 1.0;
    for (int r = 0; r < n_; ++r) d[r] = sign * binv_[r * n_ + i];
    return;
  }
  const std::vector<double>& g = rows_[id - 2 * n_];
  for (int r = 0; r < n_; ++r) {
    d[r] = kernels::Dot(std::span<const double>(&binv_[r * n_], n_), g);
  }
}

void IncrementalLp::ResetBasis() {
  std::fill(position_.begin(), position_.end(), -1);
  basis_.assign(n_, 0);
  binv_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const int id = c_[i] >= 0.0 ? i : n_ + i;
    basis_[i] = id;
    position_[id] = i;
    binv_[i * n_ + i] = id < n_ ? -1.0 : 1.0;
  }
  pivots_since_refactor_ = 0;
  ComputeBasicValues();
}

bool IncrementalLp::Refactor() {
  // Gauss-Jordan on [B | I] with partial pivoting.
  std::vector<double> b(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int p = 0; p < n_; ++p) {
    const int id = basis_[p];
    if (id < 2 * n_) {
      const int i = id < n_ ? id : id - n_;
      b[i * n_ + p] = id < n_ ? -1.0 : 1.0;
    } else {
      const std::vector<double>& g = rows_[id - 2 * n_];
      for (int r = 0; r < n_; ++r) b[r * n_ + p] = g[r];
    }
  }
  std::vector<double> inv(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) inv[i * n_ + i] = 1.0;
  for (int k = 0; k < n_; ++k) {
    int pivot = k;
    for (int r = k + 1; r < n_; ++r) {
      if (std::fabs(b[r * n_ + k]) > std::fabs(b[pivot * n_ + k])) pivot = r;
    }
    if (std::fabs(b[pivot * n_ + k]) < kSingular) return false;
    if (pivot != k) {
      std::swap_ranges(b.begin() + k * n_, b.begin() + (k + 1) * n_, b.begin() + pivot * n_);
      std::swap_ranges(inv.begin() + k * n_, inv.begin() + (k + 1) * n_,
                       inv.begin() + pivot * n_);
    }
    const double scale = 1.0 / b[k * n_ + k];
    for (int j = 0; j < n_; ++j) {
      b[k * n_ + j] *= scale;
      inv[k * n_ + j] *= scale;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == k) continue;
      const double f = b[r * n_ + k];
      if (f == 0.0) continue;
      kernels::Axpy(-f, std::span<const double>(&b[k * n_], n_),
                    std::span<double>(&b[r * n_], n_));
      kernels::Axpy(-f, std::span<const double>(&inv[k * n_], n_),
                    std::span<double>(&inv[r * n_], n_));
    }
  }
  binv_ = std::move(inv);
  pivots_since_refactor_ = 0;
  ComputeBasicValues();
  return true;
}

void IncrementalLp::ComputeBasicValues() {
  x_basic_.assign(n_, 0.0);
  std::vector<double> rhs(n_);
  for (int i = 0; i < n_; ++i) rhs[i] = -c_[i];
  for (int r = 0; r < n_; ++r) {
    x_basic_[r] = kernels::Dot(std::span<const double>(&binv_[r * n_], n_), rhs);
  }
}

void IncrementalLp::ComputePrimal(std::vector<double>& pi) const {
  pi.assign(n_, 0.0);
  for (int r = 0; r < n_; ++r) {
    const double cb = DualCost(basis_[r]);
    if (cb != 0.0) {
      kernels::Axpy(cb, std::span<const double>(&binv_[r * n_], n_), pi);
    }
  }
}

bool IncrementalLp::BasisFeasible(double tol) const {
  double scale = 1.0;
  for (double c : c_) scale = std::max(scale, std::fabs(c));
  for (double x : x_basic_) {
    if (x < -tol * scale) return false;
  }
  return true;
}

// Farkas check: the dual ray r (r_entering = 1, r_B = -d) must satisfy
// sum_j r_j a_j ~ 0 with negative cost and the residual must be too small
// to matter over the bound box.
bool IncrementalLp::VerifyInfeasibility(int entering, const std::vector<double>& d,
                                        std::string& why) const {
  std::vector<double> residual(n_, 0.0);
  double cost = 0.0;
  double magnitude = 0.0;
  auto add = [&](int id, double r) {
    if (r == 0.0) return;
    cost += r * DualCost(id);
    if (id < 2 * n_) {
      const int i = id < n_ ? id : id - n_;
      residual[i] += id < n_ ? -r : r;
      magnitude = std::max(magnitude, std::fabs(r));
    } else {
      const std::vector<double>& g = rows_[id - 2 * n_];
      kernels::Axpy(r, g, residual);
      magnitude = std::max(magnitude, std::fabs(r) * kernels::MaxAbs(g));
    }
  };
  add(entering, 1.0);
  for (int p = 0; p < n_; ++p) {
    if (-d[p] < -options_.pivot_tol) {
      why = "ray leaves the dual orthant";
      return false;
    }
    add(basis_[p], std::max(0.0, -d[p]));
  }
  double slack = 0.0;
  for (int i = 0; i < n_; ++i) {
    slack += std::fabs(residual[i]) * std::max(std::fabs(lb_[i]), std::fabs(ub_[i]));
  }
  if (!(cost < 0.0) || slack >= -cost * 0.5 || magnitude == 0.0) {
    why = "infeasibility certificate does not verify (cost " + std::to_string(cost) +
          ", residual term " + std::to_string(slack) + ")";
    return false;
  }
  return true;
}

LpSolution IncrementalLp::Solve() {
  for (int i = 0; i < n_; ++i) {
    if (lb_[i] > ub_[i]) {
      LpSolution s;
      s.status = LpStatus::kInfeasible;
      s.diagnostic = "variable " + std::to_string(i) + " has lb > ub";
      return s;
    }
  }
  if (pivots_since_refactor_ > 0 && !Refactor()) ResetBasis();

  const int total = 2 * n_ + num_rows();
  const long degenerate_limit = 10L * (num_rows() + 2L * n_);
  std::vector<double> pi, d;
  long iterations = 0;
  long degenerate = 0;
  bool fresh = pivots_since_refactor_ == 0;

  while (true) {
    if (iterations >= options_.max_iterations) {
      return Extract(LpStatus::kIterationLimit, iterations);
    }
    ComputePrimal(pi);
    const bool bland = degenerate > degenerate_limit;

    int entering = -1;
    double best = 0.0;
    for (int id = 0; id < total && !(bland && entering >= 0); ++id) {
      if (position_[id] >= 0) continue;
      double reduced, tol;
      if (id < n_) {
        reduced = pi[id] - lb_[id];
        tol = options_.feas_tol * (1.0 + std::fabs(lb_[id]));
      } else if (id < 2 * n_) {
        reduced = ub_[id - n_] - pi[id - n_];
        tol = options_.feas_tol * (1.0 + std::fabs(ub_[id - n_]));
      } else {
        const int k = id - 2 * n_;
        reduced = rhs_[k] - kernels::Dot(rows_[k], pi);
        tol = options_.feas_tol * (1.0 + std::fabs(rhs_[k]));
      }
      if (reduced < -tol && (entering < 0 || reduced < best)) {
        entering = id;
        best = reduced;
      }
    }

    if (entering < 0) {
      if (!fresh) {
        if (!Refactor()) return Extract(LpStatus::kNumericalError, iterations);
        fresh = true;
        continue;
      }
      return Extract(LpStatus::kOptimal, iterations);
    }

    DualColumnTimesBinv(entering, d);
    int leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (int p = 0; p < n_; ++p) {
      if (d[p] <= options_.pivot_tol) continue;
      const double ratio = std::max(0.0, x_basic_[p]) / d[p];
      if (leave < 0 || ratio < theta - 1e-12 * (1.0 + theta)) {
        leave = p;
        theta = ratio;
      } else if (ratio <= theta + 1e-12 * (1.0 + theta)) {
        const bool better = bland ? basis_[p] < basis_[leave] : d[p] > d[leave];
        if (better) {
          leave = p;
          theta = std::min(theta, ratio);
        }
      }
    }

    if (leave < 0) {
      if (!fresh) {
        if (!Refactor()) return Extract(LpStatus::kNumericalError, iterations);
        fresh = true;
        continue;
      }
      std::string why;
      if (VerifyInfeasibility(entering, d, why)) {
        LpSolution s = Extract(LpStatus::kInfeasible, iterations);
        s.diagnostic = "dual ray certifies infeasibility";
        return s;
      }
      LpSolution s = Extract(LpStatus::kNumericalError, iterations);
      s.diagnostic = why;
      return s;
    }

    // Pivot: entering replaces basis_[leave].
    for (int p = 0; p < n_; ++p) {
      if (p != leave) x_basic_[p] -= theta * d[p];
    }
    x_basic_[leave] = theta;
    const double dr = d[leave];
    std::span<double> pivot_row(&binv_[leave * n_], n_);
    for (double& v : pivot_row) v /= dr;
    for (int p = 0; p < n_; ++p) {
      if (p == leave || d[p] == 0.0) continue;
      kernels::Axpy(-d[p], pivot_row, std::span<double>(&binv_[p * n_], n_));
    }
    position_[basis_[leave]] = -1;
    basis_[leave] = entering;
    position_[entering] = leave;

    ++iterations;
    degenerate = theta <= 1e-12 ? degenerate + 1 : 0;
    fresh = false;
    if (++pivots_since_refactor_ >= options_.refactor_interval) {
      if (!Refactor()) return Extract(LpStatus::kNumericalError, iterations);
      fresh = true;
    }
  }
}

LpSolution IncrementalLp::Extract(LpStatus status, long iterations) {
  LpSolution s;
  s.status = status;
  s.iterations = iterations;
  ComputePrimal(s.w);
  s.row_duals.assign(num_rows(), 0.0);
  s.lower_duals.assign(n_, 0.0);
  s.upper_duals.assign(n_, 0.0);
  for (int p = 0; p < n_; ++p) {
    const int id = basis_[p];
    const double v = std::max(0.0, x_basic_[p]);
    if (id < n_) {
      s.lower_duals[id] = v;
    } else if (id < 2 * n_) {
      s.upper_duals[id - n_] = v;
    } else {
      s.row_duals[id - 2 * n_] = v;
    }
  }
  s.value = 0.0;
  for (int i = 0; i < n_; ++i) s.value += c_[i] * s.w[i];
  if (status != LpStatus::kOptimal) return s;

  // Never report Optimal for a point that is not primal feasible.
  for (int i = 0; i < n_; ++i) {
    const double tol = kFinalTol * (1.0 + std::max(std::fabs(lb_[i]), std::fabs(ub_[i])));
    if (s.w[i] < lb_[i] - tol || s.w[i] > ub_[i] + tol) {
      s.status = LpStatus::kNumericalError;
      s.diagnostic = "final point violates the bounds of variable " + std::to_string(i);
      return s;
    }
    s.w[i] = std::clamp(s.w[i], lb_[i], ub_[i]);
  }
  for (int k = 0; k < num_rows(); ++k) {
    const double tol = kFinalTol * (1.0 + std::fabs(rhs_[k]));
    if (kernels::Dot(rows_[k], s.w) - rhs_[k] > tol) {
      s.status = LpStatus::kNumericalError;
      s.diagnostic = "final point violates row " + std::to_string(k);
      return s;
    }
  }
  if (!BasisFeasible(kFinalTol)) {
    s.status = LpStatus::kNumericalError;
    s.diagnostic = "final multipliers are not dual feasible";
    return s;
  }
  s.value = 0.0;
  for (int i = 0; i < n_; ++i) s.value += c_[i] * s.w[i];
  return s;
}

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options) {
  const int n = static_cast<int>(problem.c.size());
  if (problem.lb.size() != problem.c.size() || problem.ub.size() != problem.c.size()) {
    Fail(ErrorCode::kArgument, "bounds must match the objective length");
  }
  if (problem.G.size() != problem.h.size()) {
    Fail(ErrorCode::kArgument, "G and h disagree on the number of rows");
  }
  IncrementalLp lp(n, options);
  for (int i = 0; i < n; ++i) lp.SetBounds(i, problem.lb[i], problem.ub[i]);
  for (std::size_t k = 0; k < problem.G.size(); ++k) lp.AddRow(problem.G[k], problem.h[k]);
  lp.SetObjective(problem.c);
  return lp.Solve();
}

}  // namespace cmbx
