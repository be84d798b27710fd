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
#include <numeric>
#include <set>

#include "cmbx/errors.h"
#include "cmbx/rng.h"
#include "gtest/gtest.h"

namespace cmbx {
namespace {

const double kR2 = std::sqrt(2.0);

SetFunctionSpec Sqrt2() { return SetFunctionSpec::SqrtAffine(0.0, {1.0, 1.0}); }

SetFunctionSpec RandomSqrt(Rng& rng, int n) {
  std::vector<double> c(n);
  for (double& v : c) v = rng.Uniform(0.0, 2.0);
  return SetFunctionSpec::SqrtAffine(rng.Uniform(0.0, 1.0), c);
}

// max over pi in the extended polymatroid of pi^T z, by LP duality equal to
// the max over all permutations of the greedy vertex value.
double BruteForceSupport(const SetFunctionSpec& f, const std::vector<double>& z) {
  const int n = f.n();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -1e300;
  do {
    double v = 0.0;
    Subset s = 0;
    double prev = f.Evaluate(0);
    for (int i : perm) {
      s |= Subset{1} << i;
      const double cur = f.Evaluate(s);
      v += (cur - prev) * z[i];
      prev = cur;
    }
    best = std::max(best, v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(PolymatroidTest, VertexFromPermutation) {
  const int a[] = {0, 1}, b[] = {1, 0};
  const GreedyCut v1 = VertexFromPermutation(Sqrt2(), a);
  EXPECT_DOUBLE_EQ(v1.pi[0], 1.0);
  EXPECT_NEAR(v1.pi[1], kR2 - 1.0, 1e-15);
  const GreedyCut v2 = VertexFromPermutation(Sqrt2(), b);
  EXPECT_NEAR(v2.pi[0], kR2 - 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(v2.pi[1], 1.0);
  ASSERT_TRUE(v2.permutation.has_value());
  EXPECT_EQ(*v2.permutation, (std::vector<int>{1, 0}));
  const GreedyCut m = VertexFromPermutation(SetFunctionSpec::Table({0, 2, 3, 5}), a);
  EXPECT_EQ(m.pi, (std::vector<double>{2.0, 3.0}));
}

TEST(PolymatroidTest, BadPermutationThrows) {
  const int dup[] = {0, 0}, shortp[] = {0};
  EXPECT_THROW(VertexFromPermutation(Sqrt2(), dup), Error);
  EXPECT_THROW(VertexFromPermutation(Sqrt2(), shortp), Error);
}

TEST(PolymatroidTest, SeparationExamples) {
  const std::vector<double> z1 = {0.9, 0.4};
  const Separation s1 = SeparateGreedy(Sqrt2(), z1, 0.0);
  EXPECT_NEAR(s1.value, 0.9 + 0.4 * (kR2 - 1.0), 1e-15);
  EXPECT_NEAR(s1.value, 1.06569, 1e-5);
  EXPECT_TRUE(s1.violated);

  const std::vector<double> z2 = {1.0, 0.0};
  const Separation s2 = SeparateGreedy(Sqrt2(), z2, 1.0);
  EXPECT_NEAR(s2.value, 1.0, 1e-15);
  EXPECT_FALSE(s2.violated);

  const std::vector<double> z3 = {0.5, 0.5};
  const Separation s3 = SeparateGreedy(Sqrt2(), z3, kR2 / 2.0);
  EXPECT_NEAR(s3.value, kR2 / 2.0, 1e-15);
  EXPECT_FALSE(s3.violated);
}

TEST(PolymatroidTest, SeparationRejectsWrongLength) {
  const std::vector<double> z = {0.5};
  EXPECT_THROW(SeparateGreedy(Sqrt2(), z, 0.0), Error);
}

TEST(PolymatroidTest, LovaszExtensionExamples) {
  const std::vector<double> a = {1, 1}, b = {0.5, 0.5}, c = {0, 0};
  EXPECT_NEAR(LovaszExtension(Sqrt2(), a), kR2, 1e-15);
  EXPECT_NEAR(LovaszExtension(Sqrt2(), b), kR2 / 2.0, 1e-15);
  EXPECT_EQ(LovaszExtension(Sqrt2(), c), 0.0);
}

TEST(PolymatroidTest, ValidateCut) {
  GreedyCut bad;
  bad.pi = {1.0, 1.0};
  const CutValidity r = ValidateCut(Sqrt2(), bad);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.subset, 0b11u);
  EXPECT_NEAR(r.slack, 2.0 - kR2, 1e-15);
  const int perm[] = {0, 1};
  EXPECT_TRUE(ValidateCut(Sqrt2(), VertexFromPermutation(Sqrt2(), perm)).valid);
}

TEST(PolymatroidTest, PolarVertexExamples) {
  const std::vector<GreedyCut> v = EnumeratePolarVertices(Sqrt2());
  ASSERT_EQ(v.size(), 2u);
  std::set<std::pair<long, long>> got;
  for (const GreedyCut& c : v) {
    got.insert({std::lround(c.pi[0] * 1e9), std::lround(c.pi[1] * 1e9)});
  }
  const long r = std::lround((kR2 - 1.0) * 1e9);
  EXPECT_TRUE(got.count({1000000000L, r}));
  EXPECT_TRUE(got.count({r, 1000000000L}));

  EXPECT_EQ(EnumeratePolarVertices(SetFunctionSpec::Table({0, 2, 3, 5})).size(), 1u);

  bool has_origin = false;
  for (const GreedyCut& c : EnumeratePolarVertices(SetFunctionSpec::Table({0, 0, 0, 1}))) {
    if (c.pi[0] == 0.0 && c.pi[1] == 0.0) has_origin = true;
  }
  EXPECT_TRUE(has_origin);
}

TEST(PolymatroidTest, CutKeyIsStable) {
  const std::vector<double> a = {1.0, 0.5}, b = {1.0, 0.5 + 1e-15};
  EXPECT_EQ(CutKey(a, 2.0), CutKey(a, 2.0));
  EXPECT_EQ(CutKey(a, 2.0), CutKey(b, 2.0));
  EXPECT_NE(CutKey(a, 2.0), CutKey(a, 2.5));
}

// Property: the greedy cut attains the support function over all permutations.
TEST(PolymatroidProperty, GreedyMatchesBruteForce) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(7));
    const SetFunctionSpec f = RandomSqrt(rng, n);
    std::vector<double> z(n);
    for (double& v : z) v = rng.Uniform();
    const Separation s = SeparateGreedy(f, z, 0.0);
    const double want = BruteForceSupport(f, z);
    ASSERT_NEAR(s.value, want, 1e-12 * (1.0 + std::abs(want)));
    ASSERT_NEAR(s.cut.offset + s.value, LovaszExtension(f, z), 1e-12 * (1.0 + std::abs(want)));
    ASSERT_TRUE(ValidateCut(f, s.cut).valid);
  }
}

TEST(PolymatroidProperty, LovaszIsConvexForSubmodular) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(6));
    const SetFunctionSpec f = RandomSqrt(rng, n);
    std::vector<double> a(n), b(n), mid(n);
    const double t = rng.Uniform();
    for (int i = 0; i < n; ++i) {
      a[i] = rng.Uniform();
      b[i] = rng.Uniform();
      mid[i] = t * a[i] + (1 - t) * b[i];
    }
    ASSERT_LE(LovaszExtension(f, mid),
              t * LovaszExtension(f, a) + (1 - t) * LovaszExtension(f, b) + 1e-12);
  }
}

TEST(PolymatroidProperty, EnumerationCoversEveryPermutation) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(5));
    const SetFunctionSpec f = RandomSqrt(rng, n);
    std::set<std::string> keys;
    for (const GreedyCut& c : EnumeratePolarVertices(f)) keys.insert(CutKey(c.pi, c.offset));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const GreedyCut c = VertexFromPermutation(f, perm);
      ASSERT_TRUE(keys.count(CutKey(c.pi, c.offset))) << "n=" << n;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

}  // namespace
}  // namespace cmbx
