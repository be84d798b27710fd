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

#include "cmbx/builders.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cmbx/errors.h"
#include "cmbx/rng.h"

namespace cmbx {
namespace {

void RequireNonnegative(const std::vector<double>& v, const std::string& what) {
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      Fail(ErrorCode::kDomain, what + " must be finite and nonnegative");
    }
  }
}

std::vector<std::vector<double>> Zeros(int rows, int cols) {
  return std::vector<std::vector<double>>(rows, std::vector<double>(cols, 0.0));
}

ConicBlock OrthantBlock(const std::vector<int>& cols) {
  const int k = static_cast<int>(cols.size());
  ConicBlock b;
  b.cone = Cone::NonnegOrthant(k);
  b.A = Zeros(k, k);
  for (int i = 0; i < k; ++i) b.A[i][i] = 1.0;
  b.B.assign(k, 0.0);
  b.x = cols;
  return b;
}

void CheckQuadratic(const QuadraticParams& q, bool rotated) {
  if (q.c.empty()) Fail(ErrorCode::kStructural, "c must have n >= 1 entries");
  const int min_m = rotated ? 2 : 1;
  if (q.m < min_m) {
    Fail(ErrorCode::kDomain, std::string(rotated ? "R" : "H") + " needs m >= " +
                                 std::to_string(min_m));
  }
  const int expected_d = q.m - (rotated ? 2 : 1);
  if (static_cast<int>(q.d.size()) != expected_d) {
    Fail(ErrorCode::kStructural, "d has " + std::to_string(q.d.size()) +
                                     " entries, expected " + std::to_string(expected_d));
  }
  if (!(q.sigma >= 0.0)) Fail(ErrorCode::kDomain, "sigma must be nonnegative");
  RequireNonnegative(q.c, "c");
  RequireNonnegative(q.d, "d");
}

// Adds x^l, the function and the blocks of one H- or R-type constraint;
// returns the x columns.
std::vector<int> AddQuadratic(MixedBinaryConicModel& model, const QuadraticParams& q,
                              bool rotated, double bound, const std::string& prefix) {
  CheckQuadratic(q, rotated);
  const int fn = model.num_y();
  model.functions.push_back(SetFunctionSpec::SqrtAffine(q.sigma, q.c));
  std::vector<int> cols;
  for (int i = 0; i < q.m; ++i) {
    cols.push_back(model.AddVar({prefix + std::to_string(i + 1), 0.0, bound, true, false}));
  }
  ConicBlock block;
  block.cone = rotated ? Cone::RotatedSoc(q.m + 1) : Cone::Soc(q.m + 1);
  block.A = Zeros(q.m + 1, q.m);
  for (int r = 1; r <= q.m; ++r) {
    const std::size_t j = r - 1;
    block.A[r][j] = j < q.d.size() ? std::sqrt(q.d[j]) : 1.0;
  }
  block.B.assign(q.m + 1, 0.0);
  block.B[0] = 1.0;
  block.x = cols;
  block.function = fn;
  model.blocks.push_back(std::move(block));
  model.blocks.push_back(OrthantBlock(cols));
  return cols;
}

void FinishZObjective(MixedBinaryConicModel& model) {
  model.ShapeObjective();
  for (double& c : model.objective.cz) c = -1.0;
}

std::vector<Subset> FeasibleSubsets(const std::vector<ZRow>& rows, int n) {
  if (n > kEnumerationLimit) Fail(ErrorCode::kCapacity, "enumeration needs n <= 16");
  std::vector<Subset> out;
  for (Subset s = 0; s < (Subset{1} << n); ++s) {
    bool ok = true;
    for (const ZRow& r : rows) {
      double lhs = 0.0;
      for (int i = 0; i < n; ++i) {
        if (Contains(s, i)) lhs += r.coeffs[i];
      }
      const double gap = lhs - r.rhs;
      if ((r.sense != Sense::kGe && gap > 1e-9) || (r.sense != Sense::kLe && gap < -1e-9)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

double Affine(double c0, const std::vector<double>& c, Subset s) {
  double v = c0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (Contains(s, static_cast<int>(i))) v += c[i];
  }
  return v;
}

}  // namespace

MixedBinaryConicModel BuildH(double sigma, const std::vector<double>& c,
                             const std::vector<double>& d, int m, double bound) {
  MixedBinaryConicModel model;
  model.n = static_cast<int>(c.size());
  const std::vector<int> cols = AddQuadratic(model, {sigma, c, d, m}, false, bound, "x");
  FinishZObjective(model);
  model.objective.cx[cols.back()] = 1.0;
  model.meta.family = "H";
  model.Validate();
  return model;
}

MixedBinaryConicModel BuildR(double sigma, const std::vector<double>& c,
                             const std::vector<double>& d, int m, double bound) {
  MixedBinaryConicModel model;
  model.n = static_cast<int>(c.size());
  const std::vector<int> cols = AddQuadratic(model, {sigma, c, d, m}, true, bound, "x");
  FinishZObjective(model);
  model.objective.cx[cols[m - 2]] = 1.0;
  model.objective.cx[cols[m - 1]] = 1.0;
  model.meta.family = "R";
  model.Validate();
  return model;
}

MixedBinaryConicModel BuildM(const std::vector<QuadraticParams>& h_params,
                             const std::vector<QuadraticParams>& r_params, double bound) {
  if (h_params.empty() && r_params.empty()) {
    Fail(ErrorCode::kStructural, "M needs at least one block");
  }
  MixedBinaryConicModel model;
  model.n = static_cast<int>(h_params.empty() ? r_params[0].c.size() : h_params[0].c.size());
  std::vector<int> last;
  int index = 0;
  auto add = [&](const QuadraticParams& q, bool rotated) {
    if (static_cast<int>(q.c.size()) != model.n) {
      Fail(ErrorCode::kStructural, "inconsistent n across blocks");
    }
    const std::vector<int> cols =
        AddQuadratic(model, q, rotated, bound, "x" + std::to_string(++index) + "_");
    last.push_back(cols.back());
    if (rotated) last.push_back(cols[q.m - 2]);
  };
  for (const QuadraticParams& q : h_params) add(q, false);
  for (const QuadraticParams& q : r_params) add(q, true);
  FinishZObjective(model);
  for (int col : last) model.objective.cx[col] = 1.0;
  model.meta.family = "M";
  model.Validate();
  return model;
}

double FractionalObjective(const FractionalData& data, Subset z) {
  const int n = data.a.empty() ? 0 : static_cast<int>(data.a[0].size());
  const std::vector<Subset> ok = FeasibleSubsets(data.X, n);
  if (!std::binary_search(ok.begin(), ok.end(), z)) {
    return std::numeric_limits<double>::infinity();
  }
  double total = 0.0;
  for (std::size_t l = 0; l < data.a0.size(); ++l) {
    total += Affine(data.a0[l], data.a[l], z) / Affine(data.b0[l], data.b[l], z);
  }
  return total;
}

MixedBinaryConicModel BuildFractional(const FractionalData& data) {
  const std::size_t ratios = data.a0.size();
  if (ratios == 0) Fail(ErrorCode::kStructural, "need at least one ratio");
  if (data.a.size() != ratios || data.b0.size() != ratios || data.b.size() != ratios) {
    Fail(ErrorCode::kStructural, "a0, a, b0 and b must list the same ratios");
  }
  const int n = static_cast<int>(data.a[0].size());
  if (n < 1) Fail(ErrorCode::kStructural, "need n >= 1");
  RequireNonnegative(data.a0, "a0");
  RequireNonnegative(data.b0, "b0");
  for (std::size_t l = 0; l < ratios; ++l) {
    if (static_cast<int>(data.a[l].size()) != n || static_cast<int>(data.b[l].size()) != n) {
      Fail(ErrorCode::kStructural, "inconsistent n across ratios");
    }
    RequireNonnegative(data.a[l], "a");
    RequireNonnegative(data.b[l], "b");
  }
  for (const ZRow& r : data.X) {
    if (static_cast<int>(r.coeffs.size()) != n) {
      Fail(ErrorCode::kStructural, "X row has the wrong length");
    }
  }

  const std::vector<Subset> feasible = FeasibleSubsets(data.X, n);
  double ratio_max = 0.0;
  for (Subset s : feasible) {
    for (std::size_t l = 0; l < ratios; ++l) {
      const double den = Affine(data.b0[l], data.b[l], s);
      if (!(den > 0.0)) {
        Fail(ErrorCode::kDomain, "denominator of ratio " + std::to_string(l) +
                                     " vanishes on X");
      }
      ratio_max = std::max(ratio_max, Affine(data.a0[l], data.a[l], s) / den);
    }
  }

  MixedBinaryConicModel model;
  model.n = n;
  std::vector<int> u_cols, v_cols;
  for (std::size_t l = 0; l < ratios; ++l) {
    std::vector<double> c4(n);
    for (int i = 0; i < n; ++i) c4[i] = 4.0 * data.a[l][i];
    model.functions.push_back(SetFunctionSpec::SqrtAffine(4.0 * data.a0[l], c4));
    const std::string tag = std::to_string(l + 1);
    double b_sum = data.b0[l];
    for (double b : data.b[l]) b_sum += b;
    const int u = model.AddVar(
        {"u" + tag, 0.0, std::max(kDefaultBound, 10.0 * ratio_max), true, false});
    const int v = model.AddVar({"v" + tag, data.b0[l], b_sum, true, true});
    u_cols.push_back(u);
    v_cols.push_back(v);
    ConicBlock block;
    block.cone = Cone::RotatedSoc(3);
    block.A = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    block.B = {1.0, 0.0, 0.0};
    block.x = {u, v};
    block.function = static_cast<int>(l);
    model.blocks.push_back(std::move(block));
  }
  for (std::size_t l = 0; l < ratios; ++l) {
    LinearRow row = model.EmptyRow();
    row.cx[v_cols[l]] = 1.0;
    for (int i = 0; i < n; ++i) row.cz[i] = -data.b[l][i];
    row.sense = Sense::kEq;
    row.rhs = data.b0[l];
    model.linear.push_back(std::move(row));
  }
  for (const ZRow& r : data.X) {
    LinearRow row = model.EmptyRow();
    row.cz = r.coeffs;
    row.sense = r.sense;
    row.rhs = r.rhs;
    model.linear.push_back(std::move(row));
  }
  model.ShapeObjective();
  for (int u : u_cols) model.objective.cx[u] = 1.0;
  model.meta.family = "fractional";
  model.Validate();
  return model;
}

const char* CriterionName(Criterion c) {
  switch (c) {
    case Criterion::kAic: return "aic";
    case Criterion::kBic: return "bic";
    case Criterion::kAicc: return "aicc";
  }
  return "aic";
}

Criterion ParseCriterion(const std::string& name) {
  if (name == "aic") return Criterion::kAic;
  if (name == "bic") return Criterion::kBic;
  if (name == "aicc") return Criterion::kAicc;
  Fail(ErrorCode::kArgument, "unknown criterion \"" + name + "\" (aic, bic, aicc)");
}

BssData ParseBssCsv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::size_t columns = 0;
  BssData data;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (columns == 0) {
      columns = cells.size();
      if (columns < 2) {
        Fail(ErrorCode::kSchema, source + ":" + std::to_string(line_no) +
                                     ": header needs at least one feature and a response");
      }
      continue;
    }
    if (cells.size() != columns) {
      Fail(ErrorCode::kSchema, source + ":" + std::to_string(line_no) + ": expected " +
                                   std::to_string(columns) + " fields, found " +
                                   std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (const std::string& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || c.find_first_not_of(" \t", used) != std::string::npos ||
          !std::isfinite(v)) {
        Fail(ErrorCode::kSchema, source + ":" + std::to_string(line_no) +
                                     ": not a number: \"" + c + "\"");
      }
      row.push_back(v);
    }
    data.a.push_back(row.back());
    row.pop_back();
    data.U.push_back(std::move(row));
  }
  if (columns == 0) Fail(ErrorCode::kSchema, source + ": empty file");
  if (data.a.empty()) Fail(ErrorCode::kSchema, source + ": no data rows");
  return data;
}

BssData ReadBssCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kArgument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseBssCsv(buf.str(), path);
}

SetFunctionSpec BssWeight(Criterion criterion, double alpha, int n) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    Fail(ErrorCode::kDomain, "alpha must be finite and nonnegative");
  }
  if (criterion != Criterion::kAicc) return SetFunctionSpec::ExpDecay(n, alpha);
  if (!(alpha > n)) {
    Fail(ErrorCode::kDomain, "AICc weight is undefined for alpha <= n (alpha = " +
                                 std::to_string(alpha) + ", n = " + std::to_string(n) + ")");
  }
  if (n > kEnumerationLimit) Fail(ErrorCode::kCapacity, "AICc table needs n <= 16");
  std::vector<double> values(std::size_t{1} << n);
  for (Subset s = 0; s < values.size(); ++s) {
    values[s] = std::exp(-2.0 * alpha / (alpha - PopCount(s)));
  }
  return SetFunctionSpec::Table(std::move(values));
}

MixedBinaryConicModel BuildBss(const BssData& data, double big_m, Criterion criterion,
                               double alpha) {
  const int k = data.k();
  const int n = data.n();
  if (k < 1 || n < 1) Fail(ErrorCode::kStructural, "BSS needs k >= 1 samples and n >= 1");
  if (static_cast<int>(data.U.size()) != k) {
    Fail(ErrorCode::kStructural, "U and a disagree on the number of samples");
  }
  for (const auto& row : data.U) {
    if (static_cast<int>(row.size()) != n) Fail(ErrorCode::kStructural, "ragged U");
  }
  if (!(big_m > 0.0) || !std::isfinite(big_m)) {
    Fail(ErrorCode::kDomain, "big-M must be positive and finite");
  }
  const SetFunctionSpec h = BssWeight(criterion, alpha, n);
  const double h_max = ExtremalValue(h, Extremum::kMax);
  const double h_min = ExtremalValue(h, Extremum::kMin);
  double a_norm2 = 0.0;
  for (double v : data.a) a_norm2 += v * v;

  MixedBinaryConicModel model;
  model.n = n;
  model.functions.push_back(SetFunctionSpec::Complement(h, h_max));
  const int t = model.AddVar(
      {"t", 0.0, std::max(kDefaultBound, 10.0 * a_norm2 / h_min), true, false});
  std::vector<int> beta;
  for (int i = 0; i < n; ++i) {
    beta.push_back(model.AddVar({"beta" + std::to_string(i + 1), -big_m, big_m, true, true}));
  }

  ConicBlock block;
  block.cone = Cone::Soc(k + 2);
  block.A = Zeros(k + 2, n + 1);
  block.C.assign(k + 2, 0.0);
  for (int r = 0; r < k; ++r) {
    for (int i = 0; i < n; ++i) block.A[r][1 + i] = -2.0 * data.U[r][i];
    block.C[r] = 2.0 * data.a[r];
  }
  block.A[k][0] = 1.0;
  block.A[k + 1][0] = 1.0;
  block.C[k] = -h_max;
  block.C[k + 1] = h_max;
  block.B.assign(k + 2, 0.0);
  block.B[k] = 1.0;
  block.B[k + 1] = -1.0;
  block.x.push_back(t);
  block.x.insert(block.x.end(), beta.begin(), beta.end());
  block.function = 0;
  model.blocks.push_back(std::move(block));
  model.ShapeObjective();
  HomogenizeBlock(model, 0, 1);

  for (int i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      LinearRow row = model.EmptyRow();
      row.cx[beta[i]] = sign;
      row.cz[i] = -big_m;
      row.sense = Sense::kLe;
      row.rhs = 0.0;
      model.linear.push_back(std::move(row));
    }
  }
  model.objective.cx[t] = 1.0;
  model.meta.family = std::string("bss-") + CriterionName(criterion);
  model.Validate();
  return model;
}

MixedBinaryConicModel BuildDrccpNorm(double p, int eta1, int eta2, int m, int n,
                                     double bound) {
  if (eta1 != 1) {
    Fail(ErrorCode::kDomain, "eta1 must be 1; without z inside the norm there is nothing "
                             "to strengthen");
  }
  if (m < 0) Fail(ErrorCode::kDomain, "m must be nonnegative");
  MixedBinaryConicModel model;
  model.n = n;
  model.functions.push_back(SetFunctionSpec::PNormAugmented(n, p, eta2));
  std::vector<int> cols;
  for (int i = 0; i < m; ++i) {
    cols.push_back(model.AddVar({"x" + std::to_string(i + 1), 0.0, bound, true, false}));
  }
  const int t = model.AddVar({"t", 0.0, bound, true, false});
  cols.push_back(t);
  ConicBlock block;
  block.cone = Cone::POrder(p, m + 2);
  block.A = Zeros(m + 2, m + 1);
  for (int r = 1; r <= m + 1; ++r) block.A[r][r - 1] = 1.0;
  block.B.assign(m + 2, 0.0);
  block.B[0] = 1.0;
  block.x = cols;
  block.function = 0;
  model.blocks.push_back(std::move(block));
  model.blocks.push_back(OrthantBlock(cols));
  FinishZObjective(model);
  model.objective.cx[t] = 1.0;
  model.meta.family = "drccp";
  model.Validate();
  return model;
}

MixedBinaryConicModel BuildExample1() {
  MixedBinaryConicModel model;
  model.n = 2;
  const SetFunctionSpec f = SetFunctionSpec::SqrtAffine(0.0, {1.0, 1.0});
  model.functions.push_back(f);
  const int x1 = model.AddVar({"x1", -kDefaultBound, kDefaultBound, false, false});
  const int x2 = model.AddVar({"x2", -kDefaultBound, kDefaultBound, false, false});
  ConicBlock block;
  block.cone = Cone::Soc(3);
  block.A = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  block.B = {1.0, 0.0, 0.0};
  block.C = {0.0, 0.0, -1.0};
  block.x = {x1, x2};
  block.function = 0;
  model.blocks.push_back(std::move(block));
  model.ShapeObjective();
  HomogenizeBlock(model, 0, -1);
  for (const std::vector<int>& order : {std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
    model.cuts.push_back({0, VertexFromPermutation(f, order)});
  }
  model.objective.cx[x2] = 1.0;
  model.meta.family = "example1";
  model.Validate();
  return model;
}

MixedBinaryConicModel RandomH(int m, int n, uint64_t seed) {
  Rng rng(seed);
  QuadraticParams q;
  q.m = m;
  q.sigma = rng.Uniform();
  for (int i = 0; i < n; ++i) q.c.push_back(rng.Uniform(0.1, 2.0));
  for (int j = 0; j + 1 < m; ++j) q.d.push_back(rng.Uniform(0.1, 2.0));
  MixedBinaryConicModel model = BuildH(q.sigma, q.c, q.d, m);
  model.meta.seed = seed;
  return model;
}

MixedBinaryConicModel RandomR(int m, int n, uint64_t seed) {
  Rng rng(seed);
  QuadraticParams q;
  q.m = m;
  q.sigma = rng.Uniform();
  for (int i = 0; i < n; ++i) q.c.push_back(rng.Uniform(0.1, 2.0));
  for (int j = 0; j + 2 < m; ++j) q.d.push_back(rng.Uniform(0.1, 2.0));
  MixedBinaryConicModel model = BuildR(q.sigma, q.c, q.d, m);
  model.meta.seed = seed;
  return model;
}

MixedBinaryConicModel RandomM(int n, int m_h, int m_r, uint64_t seed) {
  Rng rng(seed);
  auto draw = [&](int m, int d_count) {
    QuadraticParams q;
    q.m = m;
    q.sigma = rng.Uniform();
    for (int i = 0; i < n; ++i) q.c.push_back(rng.Uniform(0.1, 2.0));
    for (int j = 0; j < d_count; ++j) q.d.push_back(rng.Uniform(0.1, 2.0));
    return q;
  };
  const QuadraticParams h = draw(m_h, m_h - 1);
  const QuadraticParams r = draw(m_r, m_r - 2);
  MixedBinaryConicModel model = BuildM({h}, {r});
  model.meta.seed = seed;
  return model;
}

FractionalData RandomFractionalData(int ratios, int n, uint64_t seed) {
  Rng rng(seed);
  FractionalData data;
  for (int l = 0; l < ratios; ++l) {
    data.a0.push_back(rng.Uniform(0.0, 2.0));
    data.b0.push_back(rng.Uniform(0.5, 2.0));
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) a[i] = rng.Uniform(0.0, 2.0);
    for (int i = 0; i < n; ++i) b[i] = rng.Uniform(0.0, 2.0);
    data.a.push_back(std::move(a));
    data.b.push_back(std::move(b));
  }
  data.X.push_back({std::vector<double>(n, 1.0), Sense::kGe, 1.0});
  return data;
}

BssData RandomBssData(int k, int n, uint64_t seed) {
  Rng rng(seed);
  BssData data;
  std::vector<double> beta(n);
  for (int i = 0; i < n; ++i) beta[i] = rng.Uniform(-1.0, 1.0);
  for (int r = 0; r < k; ++r) {
    std::vector<double> row(n);
    double response = rng.Uniform(-0.3, 0.3);
    for (int i = 0; i < n; ++i) {
      row[i] = rng.Uniform(-1.0, 1.0);
      response += row[i] * beta[i];
    }
    data.U.push_back(std::move(row));
    data.a.push_back(response);
  }
  return data;
}

MixedBinaryConicModel RandomDrccp(double p, int eta2, int m, int n, uint64_t seed) {
  MixedBinaryConicModel model = BuildDrccpNorm(p, 1, eta2, m, n);
  model.meta.seed = seed;
  return model;
}

MixedBinaryConicModel Generate(const GenParams& g) {
  MixedBinaryConicModel model;
  if (g.family == "H") {
    model = RandomH(g.m, g.n, g.seed);
  } else if (g.family == "R") {
    model = RandomR(g.m, g.n, g.seed);
  } else if (g.family == "M") {
    model = RandomM(g.n, g.m, std::max(2, g.m), g.seed);
  } else if (g.family == "fractional") {
    model = BuildFractional(RandomFractionalData(g.ratios, g.n, g.seed));
  } else if (g.family == "bss") {
    model = BuildBss(RandomBssData(g.k, g.n, g.seed), g.big_m, g.criterion, g.alpha);
  } else if (g.family == "drccp") {
    model = RandomDrccp(g.p, g.eta2, g.m, g.n, g.seed);
  } else if (g.family == "example1") {
    return BuildExample1();
  } else {
    Fail(ErrorCode::kArgument, "unknown family \"" + g.family +
                                   "\" (H, R, M, fractional, bss, drccp, example1)");
  }
  model.meta.seed = g.seed;
  return model;
}

}  // namespace cmbx
