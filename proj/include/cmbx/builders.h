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

// Model builders for the application families and seeded random instance
// generators. Continuous variables default to the box [0, 1e3] (or
// [-1e3, 1e3] when free); bounds that are not implied by the family are
// flagged non-natural.

#ifndef CMBX_BUILDERS_H_
#define CMBX_BUILDERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cmbx/model.h"

namespace cmbx {

inline constexpr double kDefaultBound = 1e3;

// H:  sqrt(sigma + c^T z + sum_{j<m} d_j x_j^2) <= x_m,  x >= 0;  d has m-1
// entries. Block Soc(m+1) with rows [y; sqrt(d_j) x_j; x_m] and an orthant
// block for x >= 0. Default objective x_m - sum z.
MixedBinaryConicModel BuildH(double sigma, const std::vector<double>& c,
                             const std::vector<double>& d, int m,
                             double bound = kDefaultBound);

// R:  sigma + c^T z + sum_{j<=m-2} d_j x_j^2 <= 4 x_{m-1} x_m,  x >= 0;  d has
// m-2 entries. Block RotatedSoc(m+1) with rows [y; sqrt(d_j) x_j; x_{m-1};
// x_m]. Default objective x_{m-1} + x_m - sum z.
MixedBinaryConicModel BuildR(double sigma, const std::vector<double>& c,
                             const std::vector<double>& d, int m,
                             double bound = kDefaultBound);

struct QuadraticParams {
  double sigma = 0.0;
  std::vector<double> c;
  std::vector<double> d;
  int m = 1;
};

// Several H- and R-type constraints over the same z with disjoint x blocks.
MixedBinaryConicModel BuildM(const std::vector<QuadraticParams>& h_params,
                             const std::vector<QuadraticParams>& r_params,
                             double bound = kDefaultBound);

// coeffs^T z  (sense)  rhs
struct ZRow {
  std::vector<double> coeffs;
  Sense sense = Sense::kGe;
  double rhs = 0.0;
};

// min sum_l (a0_l + a_l^T z) / (b0_l + b_l^T z)  over z in X.
struct FractionalData {
  std::vector<double> a0;
  std::vector<std::vector<double>> a;
  std::vector<double> b0;
  std::vector<std::vector<double>> b;
  std::vector<ZRow> X;
};

// Per ratio: u_l, v_l, RotatedSoc(3) block [y; u; v] with
// f_l = sqrt(4 a0_l + 4 a_l^T z), row v_l = b0_l + b_l^T z. Objective sum u.
MixedBinaryConicModel BuildFractional(const FractionalData& data);

// Direct evaluation of the ratio sum; +inf when z violates X.
double FractionalObjective(const FractionalData& data, Subset z);

enum class Criterion { kAic, kBic, kAicc };
const char* CriterionName(Criterion c);
Criterion ParseCriterion(const std::string& name);

struct BssData {
  std::vector<std::vector<double>> U;  // k rows, n columns
  std::vector<double> a;               // k responses
  int k() const { return static_cast<int>(a.size()); }
  int n() const { return U.empty() ? 0 : static_cast<int>(U[0].size()); }
};

// Header row, then one sample per line; the last column is the response.
BssData ReadBssCsv(const std::string& path);
BssData ParseBssCsv(const std::string& text, const std::string& source = "<csv>");

// h(z) = g(sum z) for the criterion; AICc requires alpha > n.
SetFunctionSpec BssWeight(Criterion criterion, double alpha, int n);

// x = [t; v; beta], block Soc(k+2) with rows
// [2a - 2U beta; t - h_max v + y; t + h_max v - y], v = 1,
// -M z_i <= beta_i <= M z_i, objective t.
MixedBinaryConicModel BuildBss(const BssData& data, double big_m, Criterion criterion,
                               double alpha);

// ||[x; z; eta2]||_p <= t with eta1 = 1: POrder(p, m+2) block [y; x; t] and
// f = ||[z; eta2]||_p; x, t >= 0. Default objective t - sum z.
MixedBinaryConicModel BuildDrccpNorm(double p, int eta1, int eta2, int m, int n,
                                     double bound = kDefaultBound);

// sqrt(x1^2 + z1 + z2) <= x2 - 1 homogenized with v = 1 and the two greedy
// cuts of f = sqrt(z1 + z2) preloaded. Default objective x2.
MixedBinaryConicModel BuildExample1();

// Seeded generators (uniform draws only).
MixedBinaryConicModel RandomH(int m, int n, uint64_t seed);
MixedBinaryConicModel RandomR(int m, int n, uint64_t seed);
MixedBinaryConicModel RandomM(int n, int m_h, int m_r, uint64_t seed);
FractionalData RandomFractionalData(int ratios, int n, uint64_t seed);
BssData RandomBssData(int k, int n, uint64_t seed);
MixedBinaryConicModel RandomDrccp(double p, int eta2, int m, int n, uint64_t seed);

// Builder for a named family with integer/real parameters, used by the CLI.
struct GenParams {
  std::string family;
  int m = 3;
  int n = 4;
  int k = 6;
  int ratios = 2;
  double p = 2.0;
  int eta2 = 1;
  double alpha = 0.5;
  double big_m = 100.0;
  Criterion criterion = Criterion::kAic;
  uint64_t seed = 0;
};
MixedBinaryConicModel Generate(const GenParams& params);

}  // namespace cmbx

#endif  // CMBX_BUILDERS_H_
