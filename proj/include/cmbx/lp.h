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

// Dense LP core for
//
//   min c^T w   s.t.  G w <= h,  l <= w <= u   (l, u finite).
//
// The solver runs the revised primal simplex method on the dual
//
//   min h^T lam - l^T mu_l + u^T mu_u
//   s.t. G^T lam - mu_l + mu_u = -c,   lam, mu_l, mu_u >= 0,
//
// whose basis is N x N for N primal variables. The slack basis built from
// the bound multipliers is always feasible, so there is no phase one; the
// simplex multipliers are the primal point w. Appending a row adds a dual
// column and changing bounds changes dual costs, so both keep the current
// basis feasible and the next solve starts warm.

#ifndef CMBX_LP_H_
#define CMBX_LP_H_

#include <span>
#include <string>
#include <vector>

namespace cmbx {

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit, kNumericalError };

const char* LpStatusName(LpStatus s);

struct LpOptions {
  double pivot_tol = 1e-9;
  // Primal feasibility tolerance, relative to 1 + |rhs| (row) or 1 + |bound|.
  double feas_tol = 1e-9;
  int refactor_interval = 100;
  long max_iterations = 2'000'000;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericalError;
  double value = 0.0;
  std::vector<double> w;
  std::vector<double> row_duals;    // >= 0, one per row of G
  std::vector<double> lower_duals;  // >= 0, multipliers of w >= l
  std::vector<double> upper_duals;  // >= 0, multipliers of w <= u
  long iterations = 0;
  std::string diagnostic;
};

struct LpProblem {
  std::vector<double> c;
  std::vector<std::vector<double>> G;
  std::vector<double> h;
  std::vector<double> lb, ub;
};

class IncrementalLp {
 public:
  explicit IncrementalLp(int num_vars, LpOptions options = {});

  int num_vars() const { return n_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  // Keeps the basis when it stays dual feasible, otherwise restarts from
  // the slack basis.
  void SetObjective(std::span<const double> c);
  void SetBounds(int var, double lb, double ub);
  double lower(int var) const { return lb_[var]; }
  double upper(int var) const { return ub_[var]; }
  // g^T w <= h; returns the row index.
  int AddRow(std::span<const double> g, double h);
  const std::vector<double>& row(int k) const { return rows_[k]; }
  double rhs(int k) const { return rhs_[k]; }

  LpSolution Solve();

 private:
  // Dual column ids: [0, n) mu_l, [n, 2n) mu_u, [2n, 2n + rows) lam.
  double DualCost(int id) const;
  void DualColumnTimesBinv(int id, std::vector<double>& d) const;
  void ResetBasis();
  bool Refactor();
  void ComputePrimal(std::vector<double>& pi) const;
  void ComputeBasicValues();
  bool BasisFeasible(double tol) const;
  bool VerifyInfeasibility(int entering, const std::vector<double>& d,
                           std::string& why) const;
  LpSolution Extract(LpStatus status, long iterations);

  int n_;
  LpOptions options_;
  std::vector<double> c_, lb_, ub_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;

  std::vector<int> basis_;       // dual column id per basis position
  std::vector<int> position_;    // basis position per id, -1 when nonbasic
  std::vector<double> binv_;     // n x n, row-major
  std::vector<double> x_basic_;  // dual basic values
  int pivots_since_refactor_ = 0;
};

// One-shot convenience wrapper.
LpSolution SolveLp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace cmbx

#endif  // CMBX_LP_H_
