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

#include <cmath>

#include "cmbx/errors.h"
#include "cmbx/json_io.h"
#include "cmbx/rng.h"
#include "gtest/gtest.h"

namespace cmbx {
namespace {

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// A point inside the cone, built from its definition.
std::vector<double> Member(const Cone& c, Rng& rng) {
  std::vector<double> v(c.dim);
  switch (c.tag) {
    case ConeTag::kNonnegOrthant:
      for (double& e : v) e = rng.Uniform(0.0, 3.0);
      break;
    case ConeTag::kSoc:
    case ConeTag::kPOrder: {
      double s = 0.0;
      for (int i = 0; i + 1 < c.dim; ++i) {
        v[i] = rng.Uniform(-2.0, 2.0);
        s += std::pow(std::abs(v[i]), c.p);
      }
      v.back() = std::pow(s, 1.0 / c.p) * (1.0 + rng.Uniform());
      break;
    }
    case ConeTag::kRotatedSoc: {
      double s = 0.0;
      for (int i = 0; i + 2 < c.dim; ++i) {
        v[i] = rng.Uniform(-2.0, 2.0);
        s += v[i] * v[i];
      }
      const double u = rng.Uniform(0.05, 3.0);
      v[c.dim - 2] = u;
      v[c.dim - 1] = s / (4.0 * u) * (1.0 + rng.Uniform());
      break;
    }
  }
  return v;
}

std::vector<Cone> SomeCones() {
  return {Cone::NonnegOrthant(3), Cone::Soc(2),          Cone::Soc(4),
          Cone::POrder(1.5, 3),   Cone::POrder(3.0, 2), Cone::RotatedSoc(3),
          Cone::RotatedSoc(5)};
}

TEST(ConeTest, ResidualExamples) {
  const std::vector<double> a = {3, 4, 5}, b = {3, 4, 6}, c = {1, -2};
  EXPECT_EQ(Residual(Cone::Soc(3), a), 0.0);
  EXPECT_EQ(Residual(Cone::Soc(3), b), -1.0);
  EXPECT_EQ(Residual(Cone::NonnegOrthant(2), c), 2.0);
  EXPECT_THROW(Residual(Cone::Soc(2), a), Error);
}

TEST(ConeTest, SupportingCutExamples) {
  const std::vector<double> v = {1, 0, 0};
  const SupportingCut s = SupportingHyperplane(Cone::Soc(3), v);
  EXPECT_EQ(s.lambda, (std::vector<double>{-1, 0, 1}));
  EXPECT_EQ(s.violation, 1.0);

  const std::vector<double> w = {1, -2};
  EXPECT_EQ(SupportingHyperplane(Cone::NonnegOrthant(2), w).lambda, (std::vector<double>{0, 1}));

  const std::vector<double> p = {2, 1};
  const SupportingCut sp = SupportingHyperplane(Cone::POrder(3.0, 2), p);
  EXPECT_EQ(sp.lambda, (std::vector<double>{-1, 1}));
  EXPECT_EQ(sp.violation, 1.0);

  const std::vector<double> member = {0, 0, 1};
  try {
    SupportingHyperplane(Cone::Soc(3), member);
    FAIL() << "expected a logic error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLogic);
  }
}

TEST(ConeTest, ValidationAndNames) {
  EXPECT_THROW(Cone::POrder(0.5, 3).Validate(), Error);
  EXPECT_THROW(Cone::Soc(0).Validate(), Error);
  EXPECT_THROW(Cone::RotatedSoc(1).Validate(), Error);
  EXPECT_EQ(Cone::Soc(3).ToString(), "Soc(3)");
  EXPECT_EQ(Cone::POrder(1.5, 4).ToString(), "POrder(1.5, 4)");
  EXPECT_EQ(ParseConeTag("rsoc"), ConeTag::kRotatedSoc);
  EXPECT_FALSE(ParseConeTag("psd").has_value());
}

TEST(ConeTest, RotatedMapMatchesDefinition) {
  const std::vector<double> v = {1.0, 2.0, 3.0};
  EXPECT_EQ(RotatedToSoc(v), (std::vector<double>{1.0, -1.0, 5.0}));
}

TEST(ConeTest, HomogenizeExampleBlock) {
  // [f(z); x1; x2 - 1] in Soc(3)
  ConicBlock b;
  b.A = {{0, 0}, {1, 0}, {0, 1}};
  b.B = {1, 0, 0};
  b.C = {0, 0, -1};
  b.cone = Cone::Soc(3);
  b.x = {0, 1};
  b.function = 0;
  EXPECT_EQ(ConditionStarStructural(b), ScalingPattern::kUnknown);
  const ConicBlock h = Homogenize(b, 2);
  EXPECT_TRUE(h.C.empty());
  EXPECT_EQ(h.x, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(h.A[2], (std::vector<double>{0, 1, -1}));
  EXPECT_EQ(ConditionStarStructural(h), ScalingPattern::kP1);

  ConicBlock plain = b;
  plain.C.clear();
  const ConicBlock same = Homogenize(plain, 2);
  EXPECT_EQ(same.x, plain.x);
  EXPECT_EQ(same.A, plain.A);
}

TEST(ConeTest, BlockValidation) {
  ConicBlock b;
  b.A = {{1}, {0}};
  b.B = {0, 1};
  b.cone = Cone::Soc(3);
  b.x = {0};
  EXPECT_THROW(b.Validate(), Error);
  b.cone = Cone::Soc(2);
  EXPECT_THROW(b.Validate(), Error);
  b.function = 0;
  EXPECT_NO_THROW(b.Validate());
  b.C = {1};
  EXPECT_THROW(b.Validate(), Error);
}

TEST(ConeTest, StructuralPatterns) {
  ConicBlock p2;
  p2.A = {{2, 0, 0}, {0, 1, -1}, {0, 1, 1}};
  p2.B = {0, 1, -1};
  p2.cone = Cone::Soc(3);
  p2.x = {0, 1, 2};
  p2.function = 0;
  EXPECT_NE(ConditionStarStructural(p2), ScalingPattern::kP1);

  ConicBlock generic;
  generic.A = {{1, 0}, {0, 1}};
  generic.B = {0.3, -0.7};
  generic.cone = Cone::Soc(2);
  generic.x = {0, 1};
  generic.function = 0;
  EXPECT_EQ(ConditionStarStructural(generic), ScalingPattern::kUnknown);
  generic.function.reset();
  EXPECT_EQ(ConditionStarStructural(generic), ScalingPattern::kB0);
}

TEST(ConeJsonTest, RoundTrip) {
  for (const Cone& c : SomeCones()) {
    EXPECT_EQ(ConeFromJson(Json::parse(ToJson(c).dump())), c);
  }
  ConicBlock b;
  b.A = {{0.5, 1}, {1, 0}};
  b.B = {1, 0};
  b.C = {0, 2};
  b.cone = Cone::POrder(1.5, 2);
  b.x = {3, 4};
  b.function = 1;
  const ConicBlock r = BlockFromJson(Json::parse(ToJson(b).dump()));
  EXPECT_EQ(r.A, b.A);
  EXPECT_EQ(r.B, b.B);
  EXPECT_EQ(r.C, b.C);
  EXPECT_EQ(r.cone, b.cone);
  EXPECT_EQ(r.x, b.x);
  EXPECT_EQ(r.function, b.function);
  EXPECT_THROW(ConeFromJson(Json::parse(R"({"tag":"psd","dim":3})")), Error);
}

// Property: every supporting cut is valid on 10^4 constructed members and
// strictly separates the violating point.
TEST(ConeProperty, SupportingCutsAreValid) {
  Rng rng(17);
  for (const Cone& c : SomeCones()) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> v(c.dim);
      for (double& e : v) e = rng.Uniform(-3.0, 3.0);
      if (Residual(c, v) <= 1e-7) continue;
      const SupportingCut s = SupportingHyperplane(c, v);
      ASSERT_LT(Dot(s.lambda, v), 0.0) << c.ToString();
      for (int k = 0; k < 500; ++k) {
        const std::vector<double> w = Member(c, rng);
        ASSERT_GE(Dot(s.lambda, w), -1e-9) << c.ToString();
      }
    }
  }
}

TEST(ConeProperty, ResidualMatchesDefinitions) {
  Rng rng(18);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 2 + static_cast<int>(rng.Below(5));
    std::vector<double> v(d);
    for (double& e : v) e = rng.Uniform(-3.0, 3.0);
    double s = 0.0;
    for (int i = 0; i + 1 < d; ++i) s += v[i] * v[i];
    ASSERT_NEAR(Residual(Cone::Soc(d), v), std::sqrt(s) - v.back(), 1e-12);

    double xi = 0.0;
    for (int i = 0; i + 2 < d; ++i) xi += v[i] * v[i];
    const double u = v[d - 2], w = v[d - 1];
    const bool member = u >= 0 && w >= 0 && xi <= 4 * u * w;
    const double r = Residual(Cone::RotatedSoc(d), v);
    if (std::abs(r) > 1e-9) ASSERT_EQ(r <= 0, member);
    ASSERT_NEAR(r, std::sqrt(xi + (u - w) * (u - w)) - (u + w), 1e-12);
  }
}

TEST(ConeProperty, HomogenizePreservesResidualOnSlice) {
  Rng rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + static_cast<int>(rng.Below(4));
    const int k = 1 + static_cast<int>(rng.Below(3));
    ConicBlock b;
    b.cone = Cone::Soc(d);
    b.A.assign(d, std::vector<double>(k));
    b.B.resize(d);
    b.C.resize(d);
    for (auto& row : b.A) {
      for (double& e : row) e = rng.Uniform(-1.0, 1.0);
    }
    for (int r = 0; r < d; ++r) {
      b.B[r] = rng.Uniform(-1.0, 1.0);
      b.C[r] = rng.Uniform(-1.0, 1.0);
    }
    for (int i = 0; i < k; ++i) b.x.push_back(i);
    b.function = 0;
    const ConicBlock h = Homogenize(b, k);
    std::vector<double> x(k);
    for (double& e : x) e = rng.Uniform(-2.0, 2.0);
    const double y = rng.Uniform(0.0, 2.0);
    std::vector<double> xv = x;
    xv.push_back(1.0);
    ASSERT_NEAR(Residual(b.cone, b.Image(x, y)), Residual(h.cone, h.Image(xv, y)), 1e-12);
  }
}

}  // namespace
}  // namespace cmbx
