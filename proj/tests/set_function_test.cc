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

#include "cmbx/set_function.h"

#include <cmath>

#include "cmbx/errors.h"
#include "cmbx/json_io.h"
#include "cmbx/rng.h"
#include "gtest/gtest.h"

namespace cmbx {
namespace {

SetFunctionSpec RandomSqrt(Rng& rng, int n) {
  std::vector<double> c(n);
  for (double& v : c) v = rng.Uniform(0.0, 2.0);
  return SetFunctionSpec::SqrtAffine(rng.Uniform(0.0, 1.0), c);
}

SetFunctionSpec RandomTable(Rng& rng, int n) {
  std::vector<double> v(Subset{1} << n);
  for (double& e : v) e = rng.Uniform(0.0, 3.0);
  return SetFunctionSpec::Table(v);
}

// Closed forms written out independently of the library.
double DirectValue(const SetFunctionSpec& f, Subset s) {
  const int k = PopCount(s);
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::SqrtAffine>) {
          long double a = fam.sigma;
          for (std::size_t i = 0; i < fam.c.size(); ++i) {
            if (Contains(s, i)) a += fam.c[i];
          }
          return static_cast<double>(std::sqrt(a));
        } else if constexpr (std::is_same_v<T, family::ExpDecay>) {
          return static_cast<double>(std::exp(-static_cast<long double>(fam.alpha) * k));
        } else if constexpr (std::is_same_v<T, family::PNormAugmented>) {
          return std::pow(static_cast<double>(k + fam.eta2), 1.0 / fam.p);
        } else {
          return f.Evaluate(s);
        }
      },
      f.family());
}

TEST(SetFunctionTest, SqrtAffineValues) {
  const SetFunctionSpec f = SetFunctionSpec::SqrtAffine(0.0, {1.0, 1.0});
  EXPECT_EQ(f.n(), 2);
  EXPECT_DOUBLE_EQ(f.Evaluate(0b11), std::sqrt(2.0));
  EXPECT_EQ(f.Evaluate(0), 0.0);
  EXPECT_DOUBLE_EQ(f.Evaluate(0b01), 1.0);
  EXPECT_EQ(f.FamilyName(), "sqrt_affine");
}

TEST(SetFunctionTest, ExpDecayMatchesHighPrecision) {
  const SetFunctionSpec f = SetFunctionSpec::ExpDecay(3, 0.5);
  EXPECT_NEAR(f.Evaluate(0b011), static_cast<double>(std::exp(-1.0L)), 1e-15);
  EXPECT_NEAR(f.Evaluate(0b011), 0.367879, 1e-6);
  for (Subset s = 0; s < 8; ++s) EXPECT_NEAR(f.Evaluate(s), DirectValue(f, s), 1e-15);
}

TEST(SetFunctionTest, OutOfRangeSubsetThrows) {
  const SetFunctionSpec f = SetFunctionSpec::ExpDecay(2, 1.0);
  EXPECT_THROW(f.Evaluate(4), Error);
}

TEST(SetFunctionTest, TableLengthMustBePowerOfTwo) {
  try {
    SetFunctionSpec::Table({0.0, 1.0, 2.0});
    FAIL() << "expected a structural error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStructural);
  }
}

TEST(SetFunctionTest, DomainErrors) {
  EXPECT_THROW(SetFunctionSpec::SqrtAffine(-1.0, {1.0}), Error);
  EXPECT_THROW(SetFunctionSpec::SqrtAffine(0.0, {-1.0}), Error);
  EXPECT_THROW(SetFunctionSpec::PNormAugmented(2, 0.5, 1), Error);
  EXPECT_THROW(SetFunctionSpec::ExpDecay(2, -1.0), Error);
}

TEST(SetFunctionTest, SubmodularExamples) {
  EXPECT_TRUE(CheckSubmodular(SetFunctionSpec::SqrtAffine(1.0, {2.0, 3.0})).submodular);
  EXPECT_TRUE(CheckSubmodular(SetFunctionSpec::PNormAugmented(3, 2.0, 1)).submodular);
  const SubmodularityResult r = CheckSubmodular(SetFunctionSpec::Table({0, 0, 0, 1}));
  EXPECT_FALSE(r.submodular);
  EXPECT_EQ(r.s, 0b01u);
  EXPECT_EQ(r.t, 0b10u);
  EXPECT_DOUBLE_EQ(r.gap, 1.0);
}

TEST(SetFunctionTest, CapacityLimit) {
  const SetFunctionSpec big = SetFunctionSpec::ExpDecay(kEnumerationLimit + 1, 0.1);
  try {
    CheckSubmodular(big);
    FAIL() << "expected a capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
  EXPECT_THROW(CheckNonnegative(big), Error);
  EXPECT_THROW(ExtremalValue(big, Extremum::kMax), Error);
}

TEST(SetFunctionTest, NonnegativeExamples) {
  EXPECT_TRUE(CheckNonnegative(SetFunctionSpec::SqrtAffine(0.5, {1.0, 1.0})).nonnegative);
  const NonnegativityResult r = CheckNonnegative(
      SetFunctionSpec::Shifted(SetFunctionSpec::SqrtAffine(0.0, {1.0, 1.0}), 1.0));
  EXPECT_FALSE(r.nonnegative);
  EXPECT_EQ(r.subset, 0u);
  EXPECT_DOUBLE_EQ(r.value, -1.0);
  EXPECT_TRUE(CheckNonnegative(
                  SetFunctionSpec::Complement(SetFunctionSpec::ExpDecay(3, 1.0), 1.0))
                  .nonnegative);
}

TEST(SetFunctionTest, ExtremalValues) {
  const SetFunctionSpec h = SetFunctionSpec::ExpDecay(3, 0.5);
  EXPECT_EQ(ExtremalValue(h, Extremum::kMax), 1.0);
  EXPECT_NEAR(ExtremalValue(h, Extremum::kMin), std::exp(-1.5), 1e-15);
  EXPECT_EQ(ExtremalValue(SetFunctionSpec::SqrtAffine(0.0, {1.0, 1.0}), Extremum::kMin), 0.0);
}

TEST(SetFunctionTest, ComplementExamples) {
  const SetFunctionSpec f = ToSubmodularComplement(SetFunctionSpec::ExpDecay(2, 1.0));
  const double a = 1.0 - std::exp(-1.0), b = 1.0 - std::exp(-2.0);
  const std::vector<double> want = {0.0, a, a, b};
  const std::vector<double> got = f.Values();
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], 1e-15);
  EXPECT_TRUE(CheckSubmodular(f).submodular);

  const SetFunctionSpec g = ToSubmodularComplement(SetFunctionSpec::Table({0, 0, 0, 1}));
  EXPECT_EQ(g.Values(), (std::vector<double>{1, 1, 1, 0}));

  const SetFunctionSpec modular = SetFunctionSpec::Table({0, 2, 3, 5});
  const SetFunctionSpec m = ToSubmodularComplement(modular);
  EXPECT_TRUE(CheckSubmodular(m).submodular);
  EXPECT_TRUE(CheckNonnegative(m).nonnegative);
}

TEST(SetFunctionTest, ConcaveOfAffineFamilies) {
  for (auto g : {family::ConcaveMap::kSqrt, family::ConcaveMap::kLog1p,
                 family::ConcaveMap::kPower}) {
    const SetFunctionSpec f(family::ConcaveOfAffine{g, 0.3, 0.5, {1.0, 2.0, 0.5}});
    EXPECT_TRUE(CheckSubmodular(f).submodular);
    EXPECT_TRUE(CheckNonnegative(f).nonnegative);
  }
  const SetFunctionSpec p(family::ConcaveOfAffine{family::ConcaveMap::kPower, 0.3, 0.0, {2.0}});
  EXPECT_NEAR(p.Evaluate(1), std::pow(2.0, 0.3), 1e-15);
  const SetFunctionSpec l(family::ConcaveOfAffine{family::ConcaveMap::kLog1p, 0.5, 1.0, {2.0}});
  EXPECT_NEAR(l.Evaluate(1), std::log1p(3.0), 1e-15);
}

// Property: every family agrees with its own table materialization.
TEST(SetFunctionProperty, MaterializeIsExact) {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(12));
    std::vector<SetFunctionSpec> fs = {
        RandomSqrt(rng, n), SetFunctionSpec::ExpDecay(n, rng.Uniform(0.0, 2.0)),
        SetFunctionSpec::PNormAugmented(n, rng.Uniform(1.0, 4.0), static_cast<int>(rng.Below(2)))};
    fs.push_back(SetFunctionSpec::Complement(fs[1], 1.0));
    fs.push_back(SetFunctionSpec::Shifted(fs[0], fs[0].EmptyValue()));
    for (const SetFunctionSpec& f : fs) {
      const SetFunctionSpec t = Materialize(f);
      for (Subset s = 0; s < (Subset{1} << n); ++s) {
        ASSERT_EQ(t.Evaluate(s), f.Evaluate(s));
        ASSERT_NEAR(f.Evaluate(s), DirectValue(f, s), 1e-12 * (1.0 + std::abs(f.Evaluate(s))));
      }
    }
  }
}

TEST(SetFunctionProperty, SqrtAffineIsSubmodular) {
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(8));
    EXPECT_TRUE(CheckSubmodular(RandomSqrt(rng, n)).submodular);
  }
}

TEST(SetFunctionProperty, MarginalFormMatchesPairwise) {
  Rng rng(303);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(6));
    SetFunctionSpec f = trial % 3 == 0 ? RandomSqrt(rng, n) : RandomTable(rng, n);
    if (trial % 3 == 1) f = Materialize(RandomSqrt(rng, n));
    EXPECT_EQ(CheckSubmodular(f).submodular, CheckSubmodularPairwise(f).submodular);
  }
}

TEST(SetFunctionProperty, ComplementSumsToMax) {
  Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(12));
    const SetFunctionSpec h = SetFunctionSpec::ExpDecay(n, rng.Uniform(0.0, 1.5));
    const SetFunctionSpec f = ToSubmodularComplement(h);
    const double h_max = ExtremalValue(h, Extremum::kMax);
    for (Subset s = 0; s < (Subset{1} << n); ++s) {
      ASSERT_NEAR(f.Evaluate(s) + h.Evaluate(s), h_max, 1e-15);
    }
  }
}

TEST(SetFunctionProperty, ShiftPreservesSubmodularity) {
  Rng rng(505);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(6));
    const SetFunctionSpec f = RandomTable(rng, n);
    const SetFunctionSpec g = SetFunctionSpec::Shifted(f, f.EmptyValue());
    EXPECT_EQ(g.Evaluate(0), 0.0);
    EXPECT_EQ(CheckSubmodularPairwise(f).submodular, CheckSubmodularPairwise(g).submodular);
  }
}

TEST(SetFunctionJsonTest, RoundTripAllFamilies) {
  const SetFunctionSpec inner = SetFunctionSpec::ExpDecay(3, 0.7);
  const std::vector<SetFunctionSpec> fs = {
      SetFunctionSpec::SqrtAffine(0.2, {1.0, 2.0, 3.0}),
      SetFunctionSpec::Table({0.0, 1.5, 2.0, 2.5}),
      inner,
      SetFunctionSpec::PNormAugmented(3, 1.5, 1),
      SetFunctionSpec::Complement(inner, 1.0),
      SetFunctionSpec::Shifted(inner, 0.25),
      SetFunctionSpec(family::ConcaveOfAffine{family::ConcaveMap::kPower, 0.4, 0.1, {1.0, 1.0}})};
  for (const SetFunctionSpec& f : fs) {
    const Json j = ToJson(f);
    const SetFunctionSpec g = SetFunctionFromJson(Json::parse(j.dump()));
    EXPECT_EQ(g.FamilyName(), f.FamilyName());
    EXPECT_EQ(g.Values(), f.Values());
  }
  EXPECT_EQ(ToJson(fs[0])["family"], "sqrt_affine");
}

TEST(SetFunctionJsonTest, SchemaErrorsNameThePath) {
  try {
    SetFunctionFromJson(Json::parse(R"({"family":"sqrt_affine","sigma":"x","c":[1]})"));
    FAIL() << "expected a schema error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    EXPECT_NE(std::string(e.what()).find("$.sigma"), std::string::npos);
  }
  EXPECT_THROW(SetFunctionFromJson(Json::parse(R"({"family":"nope"})")), Error);
}

}  // namespace
}  // namespace cmbx
