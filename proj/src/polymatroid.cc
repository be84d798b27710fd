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

#include "cmbx/polymatroid.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "cmbx/errors.h"

namespace cmbx {
namespace {

constexpr int kValidateLimit = 12;
constexpr int kVertexEnumerationLimit = 5;

void RequireDimension(const SetFunctionSpec& f, std::size_t size, const char* what) {
  if (size != static_cast<std::size_t>(f.n())) {
    Fail(ErrorCode::kArgument, std::string(what) + " has length " +
                                   std::to_string(size) + ", expected n = " +
                                   std::to_string(f.n()));
  }
}

// Solves the square system in place (row-major, n x n) with partial pivoting.
// Returns false when a pivot falls below `singular`.
bool SolveDense(std::vector<double>& a, std::vector<double>& b, int n,
                double singular) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
    }
    if (std::fabs(a[pivot * n + col]) < singular) return false;
    if (pivot != col) {
      for (int k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(b[col], b[pivot]);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a[r * n + col] / a[col * n + col];
      if (factor == 0.0) continue;
      for (int k = col; k < n; ++k) a[r * n + k] -= factor * a[col * n + k];
      b[r] -= factor * b[col];
    }
  }
  for (int r = 0; r < n; ++r) b[r] /= a[r * n + r];
  return true;
}

}  // namespace

double GreedyCut::Dot(std::span<const double> z) const {
  double s = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) s += pi[i] * z[i];
  return s;
}

double GreedyCut::Evaluate(std::span<const double> z) const {
  return offset + Dot(z);
}

GreedyCut VertexFromPermutation(const SetFunctionSpec& f, std::span<const int> sigma) {
  const int n = f.n();
  RequireDimension(f, sigma.size(), "permutation");
  std::vector<bool> seen(n, false);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) {
      Fail(ErrorCode::kArgument, "sequence is not a permutation of [n]");
    }
    seen[v] = true;
  }
  GreedyCut cut;
  cut.pi.assign(n, 0.0);
  cut.offset = f.Evaluate(0);
  Subset prefix = 0;
  double previous = cut.offset;
  for (int v : sigma) {
    prefix |= 1u << v;
    const double current = f.Evaluate(prefix);
    cut.pi[v] = current - previous;
    previous = current;
  }
  cut.permutation = std::vector<int>(sigma.begin(), sigma.end());
  return cut;
}

Separation SeparateGreedy(const SetFunctionSpec& f, std::span<const double> z_bar,
                          double y_bar, double tol_feas) {
  RequireDimension(f, z_bar.size(), "z_bar");
  std::vector<int> order(f.n());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return z_bar[a] > z_bar[b]; });
  Separation sep;
  sep.cut = VertexFromPermutation(f, order);
  sep.value = sep.cut.Dot(z_bar);
  sep.violated = y_bar - sep.cut.offset < sep.value - tol_feas;
  return sep;
}

double LovaszExtension(const SetFunctionSpec& f, std::span<const double> z_bar) {
  const Separation sep = SeparateGreedy(f, z_bar, 0.0);
  return sep.cut.offset + sep.value;
}

CutValidity ValidateCut(const SetFunctionSpec& f, const GreedyCut& cut, double tol) {
  if (f.n() > kValidateLimit) {
    Fail(ErrorCode::kCapacity, "cut validation needs n <= 12");
  }
  RequireDimension(f, cut.pi.size(), "pi");
  const std::vector<double> v = f.Values();
  const double empty = v[0];
  CutValidity out;
  for (Subset s = 1; s < v.size(); ++s) {
    double lhs = 0.0;
    for (int i = 0; i < f.n(); ++i) {
      if (Contains(s, i)) lhs += cut.pi[i];
    }
    const double slack = lhs - (v[s] - empty);
    if (slack > tol && (out.valid || slack > out.slack)) {
      out.valid = false;
      out.subset = s;
      out.slack = slack;
    }
  }
  return out;
}

std::vector<GreedyCut> EnumeratePolarVertices(const SetFunctionSpec& f, double tol) {
  const int n = f.n();
  if (n > kVertexEnumerationLimit) {
    Fail(ErrorCode::kCapacity, "vertex enumeration needs n <= 5");
  }
  const std::vector<double> v = f.Values();
  const double empty = v[0];
  const int rows = static_cast<int>(v.size()) - 1;  // subsets 1 .. 2^n - 1

  std::map<std::string, GreedyCut> found;
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<double> a(n * n), b(n);
  while (true) {
    for (int r = 0; r < n; ++r) {
      const Subset s = static_cast<Subset>(pick[r] + 1);
      for (int i = 0; i < n; ++i) a[r * n + i] = Contains(s, i) ? 1.0 : 0.0;
      b[r] = v[s] - empty;
    }
    if (SolveDense(a, b, n, 1e-12)) {
      bool feasible = true;
      for (Subset s = 1; s < v.size() && feasible; ++s) {
        double lhs = 0.0;
        for (int i = 0; i < n; ++i) {
          if (Contains(s, i)) lhs += b[i];
        }
        feasible = lhs <= v[s] - empty + tol;
      }
      if (feasible) {
        GreedyCut cut;
        cut.pi = b;
        cut.offset = empty;
        found.emplace(CutKey(cut.pi, cut.offset), std::move(cut));
      }
    }
    // Next n-combination of {0, ..., rows-1} in lexicographic order.
    int k = n - 1;
    while (k >= 0 && pick[k] == rows - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::vector<GreedyCut> out;
  out.reserve(found.size());
  for (auto& [key, cut] : found) out.push_back(std::move(cut));
  std::sort(out.begin(), out.end(),
            [](const GreedyCut& x, const GreedyCut& y) { return x.pi < y.pi; });
  return out;
}

std::string CutKey(std::span<const double> coefficients, double rhs) {
  std::string key;
  char buf[64];
  auto append = [&](double value) {
    double rounded = std::round(value * 1e12) / 1e12;
    if (rounded == 0.0) rounded = 0.0;  // fold -0
    std::snprintf(buf, sizeof(buf), "%.12f|", rounded);
    key += buf;
  };
  for (double c : coefficients) append(c);
  append(rhs);
  return key;
}

}  // namespace cmbx
