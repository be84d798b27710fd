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

// Extended polymatroid machinery for the epigraph of a set function f.
//
// With f~ = f - f(0), the associated polyhedron is
//   P = { pi : pi(V) <= f~(V) for all V }
// and every pi in P yields the valid inequality  y - f(0) >= pi^T z.  For
// submodular f the vertices of P are the greedy vectors
//   pi_{sigma(t)} = f(V_t) - f(V_{t-1}),  V_t = {sigma(1), ..., sigma(t)},
// and these inequalities together with 0 <= z <= 1 describe conv(epi f).

#ifndef CMBX_POLYMATROID_H_
#define CMBX_POLYMATROID_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmbx/set_function.h"

namespace cmbx {

// The inequality  y - offset >= pi^T z.
struct GreedyCut {
  std::vector<double> pi;
  double offset = 0.0;
  // 0-based variable order that generated pi, when it came from the greedy.
  std::optional<std::vector<int>> permutation;

  double Dot(std::span<const double> z) const;       // pi^T z, index order
  double Evaluate(std::span<const double> z) const;  // offset + pi^T z
};

// Throws kArgument unless sigma is a permutation of {0, ..., n-1}.
GreedyCut VertexFromPermutation(const SetFunctionSpec& f, std::span<const int> sigma);

struct Separation {
  GreedyCut cut;
  double value = 0.0;  // pi^T z_bar
  bool violated = false;
};

// Greedy separation at (y_bar, z_bar): orders z_bar non-increasing (ties by
// ascending index) and returns the vertex for that order. For submodular f
// the value is max { pi^T z_bar : pi in P }.
Separation SeparateGreedy(const SetFunctionSpec& f, std::span<const double> z_bar,
                          double y_bar, double tol_feas = 1e-7);

// f(0) + max over P of pi^T z. Coincides with f on binary points.
double LovaszExtension(const SetFunctionSpec& f, std::span<const double> z_bar);

struct CutValidity {
  bool valid = true;
  Subset subset = 0;   // most violated V
  double slack = 0.0;  // pi(V) - f~(V) at that V (> 0 when invalid)
};

// Exhaustive check of pi(V) <= f~(V) over all V; n <= 12.
CutValidity ValidateCut(const SetFunctionSpec& f, const GreedyCut& cut,
                        double tol = 1e-7);

// All vertices of P by basis enumeration over the 2^n - 1 defining rows;
// n <= 5. Works for arbitrary (non-submodular) f. Output is sorted
// lexicographically and deduplicated on 12-digit rounding.
std::vector<GreedyCut> EnumeratePolarVertices(const SetFunctionSpec& f,
                                              double tol = 1e-7);

// Rounded key used to deduplicate cuts (12 decimal digits per coefficient).
std::string CutKey(std::span<const double> coefficients, double rhs);

}  // namespace cmbx

#endif  // CMBX_POLYMATROID_H_
