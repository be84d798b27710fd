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

#include "cmbx/cone.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmbx/errors.h"
#include "cmbx/kernels.h"

namespace cmbx {
namespace {

void RequireDimension(const Cone& cone, std::size_t size) {
  if (size != static_cast<std::size_t>(cone.dim)) {
    Fail(ErrorCode::kArgument, "vector of length " + std::to_string(size) +
                                   " for cone " + cone.ToString());
  }
}

double PNorm(std::span<const double> xi, double p) {
  if (xi.empty()) return 0.0;
  if (p == 2.0) return std::sqrt(kernels::SumSquares(xi));
  if (p == 1.0) {
    double s = 0.0;
    for (double v : xi) s += std::fabs(v);
    return s;
  }
  const double m = kernels::MaxAbs(xi);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : xi) s += std::pow(std::fabs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

// Gradient of ||.||_p at xi; zero coordinates (and xi = 0) map to 0.
std::vector<double> PNormGradient(std::span<const double> xi, double p) {
  std::vector<double> s(xi.size(), 0.0);
  if (xi.empty()) return s;
  if (p == 1.0) {
    for (std::size_t i = 0; i < xi.size(); ++i) {
      s[i] = xi[i] > 0.0 ? 1.0 : (xi[i] < 0.0 ? -1.0 : 0.0);
    }
    return s;
  }
  const double norm = PNorm(xi, p);
  if (norm == 0.0) return s;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] == 0.0) continue;
    const double ratio = std::fabs(xi[i]) / norm;
    const double mag = p == 2.0 ? ratio : std::pow(ratio, p - 1.0);
    s[i] = xi[i] > 0.0 ? mag : -mag;
  }
  return s;
}

// lambda = (-grad, 1) for a norm cone in the last-coordinate convention.
std::vector<double> NormConeCut(std::span<const double> v, double p) {
  const std::size_t d = v.size();
  std::vector<double> lambda = PNormGradient(v.first(d - 1), p);
  for (double& g : lambda) g = -g;
  lambda.push_back(1.0);
  return lambda;
}

bool AllZero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

void Cone::Validate() const {
  const int min_dim = tag == ConeTag::kRotatedSoc ? 2 : 1;
  if (dim < min_dim) {
    Fail(ErrorCode::kStructural, "cone " + TagName() + " needs dimension >= " +
                                     std::to_string(min_dim));
  }
  if (tag == ConeTag::kPOrder && !(p >= 1.0 && std::isfinite(p))) {
    Fail(ErrorCode::kDomain, "p-order cone needs a finite p >= 1");
  }
}

std::string Cone::TagName() const {
  switch (tag) {
    case ConeTag::kNonnegOrthant: return "nonneg";
    case ConeTag::kSoc: return "soc";
    case ConeTag::kRotatedSoc: return "rsoc";
    case ConeTag::kPOrder: return "porder";
  }
  return "unknown";
}

std::string Cone::ToString() const {
  std::ostringstream os;
  switch (tag) {
    case ConeTag::kNonnegOrthant: os << "NonnegOrthant(" << dim << ")"; break;
    case ConeTag::kSoc: os << "Soc(" << dim << ")"; break;
    case ConeTag::kRotatedSoc: os << "RotatedSoc(" << dim << ")"; break;
    case ConeTag::kPOrder: os << "POrder(" << p << ", " << dim << ")"; break;
  }
  return os.str();
}

std::optional<ConeTag> ParseConeTag(const std::string& name) {
  if (name == "nonneg") return ConeTag::kNonnegOrthant;
  if (name == "soc") return ConeTag::kSoc;
  if (name == "rsoc") return ConeTag::kRotatedSoc;
  if (name == "porder") return ConeTag::kPOrder;
  return std::nullopt;
}

std::vector<double> RotatedToSoc(std::span<const double> v) {
  if (v.size() < 2) Fail(ErrorCode::kArgument, "rotated cone vector needs length >= 2");
  std::vector<double> w(v.begin(), v.end());
  const double u = v[v.size() - 2];
  const double t = v[v.size() - 1];
  w[w.size() - 2] = u - t;
  w[w.size() - 1] = u + t;
  return w;
}

double Residual(const Cone& cone, std::span<const double> v) {
  RequireDimension(cone, v.size());
  const std::size_t d = v.size();
  switch (cone.tag) {
    case ConeTag::kNonnegOrthant:
      return -*std::min_element(v.begin(), v.end());
    case ConeTag::kSoc:
      return PNorm(v.first(d - 1), 2.0) - v[d - 1];
    case ConeTag::kPOrder:
      return PNorm(v.first(d - 1), cone.p) - v[d - 1];
    case ConeTag::kRotatedSoc: {
      const std::vector<double> w = RotatedToSoc(v);
      return PNorm(std::span<const double>(w).first(d - 1), 2.0) - w[d - 1];
    }
  }
  return 0.0;
}

SupportingCut SupportingHyperplane(const Cone& cone, std::span<const double> v,
                                   double tol) {
  const double residual = Residual(cone, v);
  if (!(residual > tol)) {
    Fail(ErrorCode::kLogic, "supporting cut requested at a member point of " +
                                cone.ToString());
  }
  const std::size_t d = v.size();
  SupportingCut cut;
  switch (cone.tag) {
    case ConeTag::kNonnegOrthant: {
      const auto it = std::min_element(v.begin(), v.end());
      cut.lambda.assign(d, 0.0);
      cut.lambda[it - v.begin()] = 1.0;
      break;
    }
    case ConeTag::kSoc:
      cut.lambda = NormConeCut(v, 2.0);
      break;
    case ConeTag::kPOrder:
      cut.lambda = NormConeCut(v, cone.p);
      break;
    case ConeTag::kRotatedSoc: {
      const std::vector<double> w = RotatedToSoc(v);
      const std::vector<double> ls = NormConeCut(w, 2.0);
      cut.lambda = ls;
      cut.lambda[d - 2] = ls[d - 2] + ls[d - 1];
      cut.lambda[d - 1] = ls[d - 1] - ls[d - 2];
      break;
    }
  }
  double value = 0.0;
  for (std::size_t i = 0; i < d; ++i) value += cut.lambda[i] * v[i];
  cut.violation = -value;
  return cut;
}

void ConicBlock::Validate() const {
  cone.Validate();
  const std::size_t d = cone.dim;
  if (A.size() != d) {
    Fail(ErrorCode::kStructural, "block A has " + std::to_string(A.size()) +
                                     " rows, cone dimension is " + std::to_string(d));
  }
  for (const auto& row : A) {
    if (row.size() != x.size()) {
      Fail(ErrorCode::kStructural, "block A row has " + std::to_string(row.size()) +
                                       " columns, expected " + std::to_string(x.size()));
    }
  }
  if (B.size() != d) Fail(ErrorCode::kStructural, "block B length differs from cone dimension");
  if (!C.empty() && C.size() != d) {
    Fail(ErrorCode::kStructural, "block C length differs from cone dimension");
  }
  if (!function && !AllZero(B)) {
    Fail(ErrorCode::kStructural, "block has nonzero B but no epigraph function");
  }
}

bool ConicBlock::HasConstant() const { return !C.empty() && !AllZero(C); }

std::vector<double> ConicBlock::Image(std::span<const double> x_local, double y) const {
  if (x_local.size() != x.size()) {
    Fail(ErrorCode::kArgument, "block image needs " + std::to_string(x.size()) +
                                   " x values");
  }
  std::vector<double> out(A.size());
  for (std::size_t r = 0; r < A.size(); ++r) {
    double s = function ? B[r] * y : 0.0;
    for (std::size_t k = 0; k < x_local.size(); ++k) s += A[r][k] * x_local[k];
    if (!C.empty()) s += C[r];
    out[r] = s;
  }
  return out;
}

ConicBlock Homogenize(const ConicBlock& block, int v_column, int position) {
  ConicBlock out = block;
  if (!block.HasConstant()) {
    out.C.clear();
    return out;
  }
  const int cols = static_cast<int>(block.x.size());
  if (position < 0) position = cols;
  if (position > cols) Fail(ErrorCode::kArgument, "homogenization column out of range");
  out.x.insert(out.x.begin() + position, v_column);
  for (std::size_t r = 0; r < out.A.size(); ++r) {
    out.A[r].insert(out.A[r].begin() + position, block.C[r]);
  }
  out.C.clear();
  return out;
}

const char* ScalingPatternName(ScalingPattern p) {
  switch (p) {
    case ScalingPattern::kUnknown: return "Unknown";
    case ScalingPattern::kP1: return "P1";
    case ScalingPattern::kP2: return "P2";
    case ScalingPattern::kB0: return "B0";
  }
  return "Unknown";
}

ScalingPattern ConditionStarStructural(const ConicBlock& block) {
  if (block.HasConstant()) return ScalingPattern::kUnknown;
  const std::vector<double>& b = block.B;
  const int d = block.cone.dim;
  if (!block.function || AllZero(b)) return ScalingPattern::kB0;

  // P1: y enters a coordinate that only ever grows the norm (or an orthant
  // coordinate that stays nonnegative).
  const bool first_only =
      b[0] >= 0.0 && AllZero(std::span<const double>(b).subspan(1)) &&
      AllZero(block.A[0]);
  if (first_only) {
    switch (block.cone.tag) {
      case ConeTag::kNonnegOrthant: return ScalingPattern::kP1;
      case ConeTag::kSoc:
      case ConeTag::kPOrder:
        if (d >= 2) return ScalingPattern::kP1;
        break;
      case ConeTag::kRotatedSoc:
        if (d >= 3) return ScalingPattern::kP1;
        break;
    }
  }

  // P2: with p = (r1 + r2) / 2 and q = (r2 - r1) / 2 for the last two rows,
  // membership reads 4 p (q - beta y) >= ||xi||^2, and scaling x only relaxes
  // q - beta y when beta y >= 0.
  if (block.cone.tag == ConeTag::kSoc && d >= 2) {
    const double beta = b[d - 2];
    if (beta > 0.0 && b[d - 1] == -beta &&
        AllZero(std::span<const double>(b).first(d - 2))) {
      return ScalingPattern::kP2;
    }
  }
  return ScalingPattern::kUnknown;
}

}  // namespace cmbx
