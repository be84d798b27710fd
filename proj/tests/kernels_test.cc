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

#include "cmbx/kernels.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "cmbx/rng.h"
#include "gtest/gtest.h"

namespace cmbx::kernels {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<const KernelTable*> VectorTables() {
  std::vector<const KernelTable*> out;
  if (Available(Isa::kAvx2)) out.push_back(Avx2Table());
  if (Available(Isa::kNeon)) out.push_back(NeonTable());
  return out;
}

std::vector<double> Draw(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (double& e : v) e = scale * rng.Uniform(-1.0, 1.0);
  return v;
}

TEST(KernelsTest, ScalarReferenceValues) {
  const KernelTable& s = ScalarTable();
  const std::vector<double> a = {1.0, -2.0, 3.0, 0.5};
  const std::vector<double> b = {4.0, 0.25, -1.0, 2.0};
  EXPECT_DOUBLE_EQ(s.dot(a.data(), b.data(), 4), 4.0 - 0.5 - 3.0 + 1.0);
  EXPECT_DOUBLE_EQ(s.sum_squares(a.data(), 4), 1.0 + 4.0 + 9.0 + 0.25);
  EXPECT_DOUBLE_EQ(s.max_abs(a.data(), 4), 3.0);
  std::vector<double> y = b;
  s.axpy(2.0, a.data(), y.data(), 4);
  EXPECT_EQ(y, (std::vector<double>{6.0, -3.75, 5.0, 3.0}));
  EXPECT_EQ(s.dot(a.data(), b.data(), 0), 0.0);
  EXPECT_EQ(s.max_abs(a.data(), 0), 0.0);
}

// Vector variants reassociate, so sums agree to n * eps * sum |terms|.
TEST(KernelsTest, VectorVariantsMatchScalar) {
  const KernelTable& s = ScalarTable();
  Rng rng(11);
  for (const KernelTable* v : VectorTables()) {
    for (int trial = 0; trial < 2000; ++trial) {
      const std::size_t n = rng.Below(70);
      const double scale = std::pow(10.0, rng.Uniform(-6.0, 6.0));
      const std::vector<double> a = Draw(rng, n, scale);
      const std::vector<double> b = Draw(rng, n, 1.0);
      double mag = 0.0, sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        mag += std::abs(a[i] * b[i]);
        sq += a[i] * a[i];
      }
      const double bound = 2.0 * (n + 1) * kEps;
      EXPECT_NEAR(v->dot(a.data(), b.data(), n), s.dot(a.data(), b.data(), n), bound * mag);
      EXPECT_NEAR(v->sum_squares(a.data(), n), s.sum_squares(a.data(), n), bound * sq);
      EXPECT_EQ(v->max_abs(a.data(), n), s.max_abs(a.data(), n));
      const double alpha = rng.Uniform(-3.0, 3.0);
      std::vector<double> y1 = b, y2 = b;
      s.axpy(alpha, a.data(), y1.data(), n);
      v->axpy(alpha, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(y1[i], y2[i], 2.0 * kEps * (std::abs(alpha * a[i]) + std::abs(b[i])));
      }
    }
  }
}

TEST(KernelsTest, SelectAndDetect) {
  EXPECT_TRUE(Available(Isa::kScalar));
  ASSERT_TRUE(Select(Isa::kScalar));
  EXPECT_EQ(Active().isa, Isa::kScalar);
  setenv("CMBX_KERNELS", "scalar", 1);
  EXPECT_EQ(Detect(), Isa::kScalar);
  unsetenv("CMBX_KERNELS");
  const Isa best = Detect();
  EXPECT_TRUE(Select(best));
  EXPECT_EQ(Active().isa, best);
  if (!Available(Isa::kNeon)) EXPECT_FALSE(Select(Isa::kNeon));
  EXPECT_EQ(Active().isa, best);
  EXPECT_STREQ(IsaName(Isa::kAvx2), "avx2");
}

}  // namespace
}  // namespace cmbx::kernels
