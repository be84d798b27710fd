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

#include "cmbx/solver.h"

#include <cmath>

#include "cmbx/builders.h"
#include "cmbx/errors.h"
#include "cmbx/rng.h"
#include "cmbx/verify.h"
#include "gtest/gtest.h"

namespace cmbx {
namespace {

const double kR2 = std::sqrt(2.0);

MixedBinaryConicModel SmallH() { return BuildH(0.0, {1.0, 1.0}, {}, 1); }

void ExpectClose(double a, double b, double rel = 1e-6) {
  EXPECT_NEAR(a, b, rel * (1.0 + std::abs(b)));
}

// Closed form for the m = 1 H instance: x1 >= f(z), min x1 - z1 - z2.
TEST(SolverTest, SmallHClosedForm) {
  const MixedBinaryConicModel m = SmallH();
  double best = 1e300;
  for (Subset s = 0; s < 4; ++s) {
    best = std::min(best, std::sqrt(static_cast<double>(PopCount(s))) - PopCount(s));
  }
  const SolveResult relax = SolveRelaxation(m);
  ASSERT_TRUE(relax.ok()) << relax.diagnostic;
  ExpectClose(relax.value, best);
  ExpectClose(relax.value, kR2 - 2.0);
  EXPECT_NEAR(relax.point.z[0], 1.0, 1e-6);
  EXPECT_NEAR(relax.point.z[1], 1.0, 1e-6);
  EXPECT_LE(relax.bound, relax.value + 1e-6 * (1.0 + std::abs(relax.value)));

  const SolveResult exact = SolveExactEnumeration(m);
  ASSERT_TRUE(exact.ok());
  ExpectClose(exact.value, best);
  const SolveResult bnb = SolveBranchAndBound(m);
  ASSERT_TRUE(bnb.ok());
  ExpectClose(bnb.value, best);
  EXPECT_EQ(bnb.nodes, 1);
  EXPECT_TRUE(relax.touched.empty());
}

TEST(SolverTest, TwoBinaryExampleWithHalfBinaries) {
  MixedBinaryConicModel m = BuildExample1();
  for (int i = 0; i < 2; ++i) {
    LinearRow row = m.EmptyRow();
    row.cz[i] = 1.0;
    row.sense = Sense::kEq;
    row.rhs = 0.5;
    m.linear.push_back(row);
  }
  const SolveResult r = SolveRelaxation(m);
  ASSERT_TRUE(r.ok()) << r.diagnostic;
  ExpectClose(r.value, 1.0 + std::sqrt(0.5), 1e-7);
  EXPECT_NEAR(r.point.x[2], 1.0, 1e-9);
}

TEST(SolverTest, ZeroObjective) {
  MixedBinaryConicModel m = RandomH(3, 4, 2);
  m.objective.cx.assign(m.num_x(), 0.0);
  m.objective.cz.assign(m.n, 0.0);
  const SolveResult r = SolveRelaxation(m);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.value, 0.0);
  const SolveResult b = SolveBranchAndBound(m);
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(b.value, 0.0);
  EXPECT_EQ(b.nodes, 1);
}

TEST(SolverTest, SingleRatio) {
  FractionalData d;
  d.a0 = {1.0};
  d.a = {{1.0, 0.0}};
  d.b0 = {1.0};
  d.b = {{0.0, 1.0}};
  const MixedBinaryConicModel m = BuildFractional(d);
  const SolveResult exact = SolveExactEnumeration(m);
  ASSERT_TRUE(exact.ok()) << exact.diagnostic;
  ExpectClose(exact.value, 0.5);
  EXPECT_EQ(exact.point.z, (std::vector<double>{0.0, 1.0}));
  const SolveResult bnb = SolveBranchAndBound(m);
  ASSERT_TRUE(bnb.ok());
  ExpectClose(bnb.value, 0.5);
}

TEST(SolverTest, InfeasibleBinaryRows) {
  MixedBinaryConicModel m = SmallH();
  LinearRow row = m.EmptyRow();
  row.cz = {1.0, 1.0};
  row.sense = Sense::kGe;
  row.rhs = 3.0;
  m.linear.push_back(row);
  EXPECT_EQ(SolveExactEnumeration(m).status, SolveStatus::kInfeasible);
  EXPECT_EQ(SolveBranchAndBound(m).status, SolveStatus::kInfeasible);
  EXPECT_EQ(SolveRelaxation(m).status, SolveStatus::kInfeasible);
}

TEST(SolverTest, EnumerationCapacity) {
  const MixedBinaryConicModel m = BuildH(0.0, std::vector<double>(21, 1.0), {}, 1);
  try {
    SolveExactEnumeration(m);
    FAIL() << "expected a capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
}

TEST(SolverTest, PolymatroidOffIsWeaker) {
  SolverOptions o;
  o.polymatroid = false;
  const SolveResult r = SolveRelaxation(SmallH(), o);
  ASSERT_TRUE(r.ok());
  ExpectClose(r.value, -2.0);
  EXPECT_EQ(r.polymatroid_cuts, 0);
}

TEST(SolverTest, ResultJson) {
  const SolveResult r = SolveRelaxation(SmallH());
  const Json j = ToJson(r);
  EXPECT_EQ(j["status"], "Optimal");
  EXPECT_DOUBLE_EQ(j["value"].get<double>(), r.value);
  EXPECT_EQ(j["point"]["z"].size(), 2u);
}

TEST(SolverTest, UnboundedDirectionTouchesArtificialBound) {
  MixedBinaryConicModel m = SmallH();
  m.objective.cx = {-1.0};
  const SolveResult r = SolveRelaxation(m);
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r.touched.empty());
}

// Property: relaxation <= B&B = enumeration on random instances.
TEST(SolverProperty, BranchAndBoundMatchesEnumeration) {
  std::vector<MixedBinaryConicModel> models;
  for (uint64_t s = 1; s <= 4; ++s) {
    models.push_back(RandomH(3, 4, s));
    models.push_back(RandomR(3, 3, s));
    models.push_back(RandomM(3, 2, 2, s));
    models.push_back(BuildFractional(RandomFractionalData(2, 4, s)));
    models.push_back(BuildBss(RandomBssData(6, 3, s), 100.0, Criterion::kBic, 0.5));
  }
  for (MixedBinaryConicModel& m : models) {
    m.objective = SampleObjective(m, Rng::Derive(31, m.meta.seed * 8 + m.n));
    const SolveResult relax = SolveRelaxation(m);
    const SolveResult exact = SolveExactEnumeration(m);
    const SolveResult bnb = SolveBranchAndBound(m);
    ASSERT_TRUE(relax.ok() && exact.ok() && bnb.ok()) << m.meta.family;
    EXPECT_LE(relax.value, exact.value + 1e-6 * (1.0 + std::abs(exact.value))) << m.meta.family;
    ExpectClose(bnb.value, exact.value);
  }
}

// Property: injecting valid greedy cuts one by one never lowers the bound.
TEST(SolverProperty, MonotoneCuts) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const MixedBinaryConicModel m = RandomH(2, 4, seed);
    OuterApproximation oa = BuildModelOa(m, {}, true);
    OaOptions o = oa.options();
    o.polymatroid = false;
    oa.set_options(o);
    std::vector<double> c(LayoutOf(m).size(), 0.0);
    const Layout L = LayoutOf(m);
    for (int i = 0; i < m.num_x(); ++i) c[i] = m.objective.cx[i];
    for (int i = 0; i < m.n; ++i) c[L.z(i)] = m.objective.cz[i];
    oa.SetObjective(c);
    double prev = oa.Solve().value;
    const std::vector<GreedyCut> cuts = EnumeratePolarVertices(m.functions[0]);
    for (const GreedyCut& cut : cuts) {
      oa.AddGreedyCut(0, cut, CutOrigin::kPreloaded);
      const OaResult r = oa.Solve();
      ASSERT_EQ(r.status, OaStatus::kOptimal);
      EXPECT_GE(r.value, prev - 1e-9 * (1.0 + std::abs(prev)));
      prev = r.value;
    }
  }
}

// Property: each new cut is violated at the LP point that produced it.
TEST(SolverProperty, CutsSeparateTheirPoint) {
  SolverOptions so;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    MixedBinaryConicModel m = RandomR(3, 4, seed);
    m.objective = SampleObjective(m, seed);
    OuterApproximation oa = BuildModelOa(m, so, true);
    OaOptions o = oa.options();
    o.max_iterations = 1;
    oa.set_options(o);
    std::vector<double> c(LayoutOf(m).size(), 0.0);
    for (int i = 0; i < m.num_x(); ++i) c[i] = m.objective.cx[i];
    for (int i = 0; i < m.n; ++i) c[LayoutOf(m).z(i)] = m.objective.cz[i];
    oa.SetObjective(c);
    for (int round = 0; round < 500; ++round) {
      const int before = oa.lp().num_rows();
      const OaResult r = oa.Solve();
      if (r.status == OaStatus::kOptimal) break;
      ASSERT_EQ(r.status, OaStatus::kCapHit);
      for (int k = before; k < oa.lp().num_rows(); ++k) {
        double act = -oa.lp().rhs(k);
        for (int i = 0; i < oa.num_w(); ++i) act += oa.lp().row(k)[i] * r.w[i];
        EXPECT_GE(act, so.tol_feas / 2.0);
      }
    }
  }
}

}  // namespace
}  // namespace cmbx
