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

// Closed convex cones, conic blocks  A x + B y + C in K  and the structural
// scaling test used to certify that a block is closed under x -> alpha x.
//
// Coordinate conventions (0-based, d = dimension):
//   Soc(d)         v[d-1] >= ||v[0..d-2]||_2
//   POrder(p, d)   v[d-1] >= ||v[0..d-2]||_p
//   RotatedSoc(d)  ||v[0..d-3]||^2 <= 4 v[d-2] v[d-1],  v[d-2], v[d-1] >= 0
//   NonnegOrthant  v >= 0
// A rotated cone is handled through the map (xi, u, v) -> (xi, u - v, u + v)
// into Soc(d).

#ifndef CMBX_CONE_H_
#define CMBX_CONE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cmbx {

enum class ConeTag { kNonnegOrthant, kSoc, kRotatedSoc, kPOrder };

struct Cone {
  ConeTag tag = ConeTag::kSoc;
  int dim = 1;
  double p = 2.0;  // POrder only

  static Cone NonnegOrthant(int d) { return {ConeTag::kNonnegOrthant, d, 2.0}; }
  static Cone Soc(int d) { return {ConeTag::kSoc, d, 2.0}; }
  static Cone RotatedSoc(int d) { return {ConeTag::kRotatedSoc, d, 2.0}; }
  static Cone POrder(double p, int d) { return {ConeTag::kPOrder, d, p}; }

  // Throws kDomain for a bad p and kStructural for a bad dimension.
  void Validate() const;
  // "nonneg", "soc", "rsoc", "porder"
  std::string TagName() const;
  // Human-readable, e.g. "Soc(3)" or "POrder(1.5, 4)".
  std::string ToString() const;

  bool operator==(const Cone&) const = default;
};

std::optional<ConeTag> ParseConeTag(const std::string& name);

// Positive outside K, nonpositive inside.
double Residual(const Cone& cone, std::span<const double> v);

// (xi, u, v) -> (xi, u - v, u + v)
std::vector<double> RotatedToSoc(std::span<const double> v);

// A separating functional: lambda^T w >= 0 on K and lambda^T v = -violation.
struct SupportingCut {
  std::vector<double> lambda;
  double violation = 0.0;
};

// Requires Residual(cone, v) > tol; throws kLogic at member points.
SupportingCut SupportingHyperplane(const Cone& cone, std::span<const double> v,
                                   double tol = 1e-7);

// A x + B y + C in K over the model columns listed in `x`. B multiplies the
// epigraph variable of `function` (B is ignored when function is empty).
struct ConicBlock {
  std::vector<std::vector<double>> A;  // cone.dim rows, x.size() columns
  std::vector<double> B;               // cone.dim entries
  std::vector<double> C;               // empty or cone.dim entries
  Cone cone;
  std::vector<int> x;
  std::optional<int> function;

  // Throws kStructural on inconsistent shapes.
  void Validate() const;
  bool HasConstant() const;
  // A x + B y + C for block-local x.
  std::vector<double> Image(std::span<const double> x_local, double y) const;
};

// Moves C into a new column of A multiplying model variable `v_column`,
// inserted at column position `position` (-1 appends). The caller adds the
// row v = 1. Returns the block unchanged when C is absent or zero.
ConicBlock Homogenize(const ConicBlock& block, int v_column, int position = -1);

enum class ScalingPattern {
  kUnknown,
  kP1,  // B = beta e_1, beta >= 0, first row of A zero, norm-type cone
  kP2,  // B = (0, ..., 0, beta, -beta), beta >= 0, Soc
  kB0,  // B = 0 (no epigraph variable)
};

const char* ScalingPatternName(ScalingPattern p);

// Sufficient structural test for: (x, y) feasible with y >= 0 implies
// (alpha x, y) feasible for every alpha >= 1. Never reports a pattern for a
// block that carries a nonzero constant.
ScalingPattern ConditionStarStructural(const ConicBlock& block);

}  // namespace cmbx

#endif  // CMBX_CONE_H_
