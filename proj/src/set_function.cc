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

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "cmbx/errors.h"

namespace cmbx {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireFinite(double v, const char* what) {
  if (!std::isfinite(v)) Fail(ErrorCode::kDomain, std::string(what) + " must be finite");
}

void RequireNonnegative(const std::vector<double>& c, const char* what) {
  for (double v : c) {
    RequireFinite(v, what);
    if (v < 0.0) Fail(ErrorCode::kDomain, std::string(what) + " must be nonnegative");
  }
}

void RequireVariableCount(int n) {
  if (n < 1) Fail(ErrorCode::kStructural, "set function needs n >= 1");
  if (n > kMaxVariables) {
    Fail(ErrorCode::kCapacity, "n = " + std::to_string(n) + " exceeds " +
                                   std::to_string(kMaxVariables));
  }
}

void RequireEnumerable(const SetFunctionSpec& f) {
  if (f.n() > kEnumerationLimit) {
    Fail(ErrorCode::kCapacity, "exhaustive check needs n <= " +
                                   std::to_string(kEnumerationLimit) +
                                   ", got n = " + std::to_string(f.n()));
  }
}

double AffineArgument(double sigma, const std::vector<double>& c, Subset s) {
  double arg = sigma;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (Contains(s, static_cast<int>(i))) arg += c[i];
  }
  return arg;
}

}  // namespace

SetFunctionSpec::SetFunctionSpec(Family f) : family_(std::move(f)) {
  n_ = std::visit(
      Overloaded{
          [](const family::SqrtAffine& g) {
            RequireFinite(g.sigma, "sigma");
            if (g.sigma < 0.0) Fail(ErrorCode::kDomain, "sigma must be nonnegative");
            RequireNonnegative(g.c, "c");
            return static_cast<int>(g.c.size());
          },
          [](const family::ConcaveOfAffine& g) {
            RequireFinite(g.sigma, "sigma");
            if (g.sigma < 0.0) Fail(ErrorCode::kDomain, "sigma must be nonnegative");
            RequireNonnegative(g.c, "c");
            if (g.g == family::ConcaveMap::kPower && !(g.rho > 0.0 && g.rho < 1.0)) {
              Fail(ErrorCode::kDomain, "power exponent rho must lie in (0, 1)");
            }
            return static_cast<int>(g.c.size());
          },
          [](const family::PNormAugmented& g) {
            if (!(g.p >= 1.0) || !std::isfinite(g.p)) {
              Fail(ErrorCode::kDomain, "p must be a finite real >= 1");
            }
            if (g.eta2 != 0 && g.eta2 != 1) Fail(ErrorCode::kDomain, "eta2 must be 0 or 1");
            return g.n;
          },
          [](const family::ExpDecay& g) {
            RequireFinite(g.alpha, "alpha");
            if (g.alpha < 0.0) Fail(ErrorCode::kDomain, "alpha must be nonnegative");
            return g.n;
          },
          [](const family::Table& g) {
            const std::size_t size = g.values.size();
            if (size < 2 || (size & (size - 1)) != 0) {
              Fail(ErrorCode::kStructural,
                   "table length " + std::to_string(size) +
                       " is not 2^n for a positive n");
            }
            for (double v : g.values) RequireFinite(v, "table value");
            return std::countr_zero(size);
          },
          [](const family::Complement& g) {
            if (!g.inner) Fail(ErrorCode::kStructural, "complement without inner function");
            RequireFinite(g.h_max, "h_max");
            return g.inner->n();
          },
          [](const family::Shifted& g) {
            if (!g.inner) Fail(ErrorCode::kStructural, "shift without inner function");
            RequireFinite(g.delta, "delta");
            return g.inner->n();
          },
      },
      family_);
  RequireVariableCount(n_);
}

SetFunctionSpec SetFunctionSpec::SqrtAffine(double sigma, std::vector<double> c) {
  return SetFunctionSpec(family::SqrtAffine{sigma, std::move(c)});
}

SetFunctionSpec SetFunctionSpec::Table(std::vector<double> values) {
  return SetFunctionSpec(family::Table{std::move(values)});
}

SetFunctionSpec SetFunctionSpec::ExpDecay(int n, double alpha) {
  return SetFunctionSpec(family::ExpDecay{n, alpha});
}

SetFunctionSpec SetFunctionSpec::PNormAugmented(int n, double p, int eta2) {
  return SetFunctionSpec(family::PNormAugmented{n, p, eta2});
}

SetFunctionSpec SetFunctionSpec::Complement(const SetFunctionSpec& inner,
                                            double h_max) {
  return SetFunctionSpec(
      family::Complement{std::make_shared<const SetFunctionSpec>(inner), h_max});
}

SetFunctionSpec SetFunctionSpec::Shifted(const SetFunctionSpec& inner, double delta) {
  return SetFunctionSpec(
      family::Shifted{std::make_shared<const SetFunctionSpec>(inner), delta});
}

std::string SetFunctionSpec::FamilyName() const {
  static constexpr const char* kNames[] = {
      "sqrt_affine", "concave_of_affine", "pnorm_augmented", "exp_decay",
      "table",       "complement",        "shifted"};
  return kNames[family_.index()];
}

double SetFunctionSpec::Evaluate(Subset s) const {
  if (n_ < 32 && (s >> n_) != 0) {
    Fail(ErrorCode::kArgument, "subset mask " + std::to_string(s) +
                                   " out of range for n = " + std::to_string(n_));
  }
  return EvaluateUnchecked(s);
}

double SetFunctionSpec::EvaluateUnchecked(Subset s) const {
  return std::visit(
      Overloaded{
          [s](const family::SqrtAffine& g) {
            return std::sqrt(std::max(0.0, AffineArgument(g.sigma, g.c, s)));
          },
          [s](const family::ConcaveOfAffine& g) {
            const double arg = AffineArgument(g.sigma, g.c, s);
            switch (g.g) {
              case family::ConcaveMap::kSqrt: return std::sqrt(arg);
              case family::ConcaveMap::kLog1p: return std::log1p(arg);
              case family::ConcaveMap::kPower: return std::pow(arg, g.rho);
            }
            return 0.0;
          },
          [s](const family::PNormAugmented& g) {
            const double base = PopCount(s) + g.eta2;
            return g.p == 1.0 ? base : std::pow(base, 1.0 / g.p);
          },
          [s](const family::ExpDecay& g) { return std::exp(-g.alpha * PopCount(s)); },
          [s](const family::Table& g) { return g.values[s]; },
          [s](const family::Complement& g) {
            return g.h_max - g.inner->EvaluateUnchecked(s);
          },
          [s](const family::Shifted& g) {
            return g.inner->EvaluateUnchecked(s) - g.delta;
          },
      },
      family_);
}

std::vector<double> SetFunctionSpec::Values() const {
  if (n_ > 24) Fail(ErrorCode::kCapacity, "refusing to tabulate 2^" + std::to_string(n_));
  std::vector<double> out(std::size_t{1} << n_);
  for (Subset s = 0; s < out.size(); ++s) out[s] = EvaluateUnchecked(s);
  return out;
}

SubmodularityResult CheckSubmodular(const SetFunctionSpec& f, double tol) {
  RequireEnumerable(f);
  const int n = f.n();
  const std::vector<double> v = f.Values();
  for (Subset s = 0; s < v.size(); ++s) {
    for (int i = 0; i < n; ++i) {
      if (Contains(s, i)) continue;
      const Subset si = s | (1u << i);
      const double gain_i = v[si] - v[s];
      for (int j = i + 1; j < n; ++j) {
        if (Contains(s, j)) continue;
        const Subset sj = s | (1u << j);
        const double gain_i_after_j = v[sj | (1u << i)] - v[sj];
        const double gap = gain_i_after_j - gain_i;
        if (gap > tol) return {false, si, sj, gap};
      }
    }
  }
  return {};
}

SubmodularityResult CheckSubmodularPairwise(const SetFunctionSpec& f, double tol) {
  RequireEnumerable(f);
  const std::vector<double> v = f.Values();
  for (Subset a = 0; a < v.size(); ++a) {
    for (Subset b = a + 1; b < v.size(); ++b) {
      const double gap = v[a | b] + v[a & b] - v[a] - v[b];
      if (gap > tol) return {false, a, b, gap};
    }
  }
  return {};
}

NonnegativityResult CheckNonnegative(const SetFunctionSpec& f, double tol) {
  RequireEnumerable(f);
  const std::vector<double> v = f.Values();
  for (Subset s = 0; s < v.size(); ++s) {
    if (v[s] < -tol) return {false, s, v[s]};
  }
  return {};
}

double ExtremalValue(const SetFunctionSpec& f, Extremum mode) {
  RequireEnumerable(f);
  const std::vector<double> v = f.Values();
  return mode == Extremum::kMax ? *std::max_element(v.begin(), v.end())
                                : *std::min_element(v.begin(), v.end());
}

SetFunctionSpec ToSubmodularComplement(const SetFunctionSpec& h) {
  return SetFunctionSpec::Complement(h, ExtremalValue(h, Extremum::kMax));
}

SetFunctionSpec Materialize(const SetFunctionSpec& f) {
  return SetFunctionSpec::Table(f.Values());
}

std::vector<double> Indicator(Subset s, int n) {
  std::vector<double> z(n, 0.0);
  for (int i = 0; i < n; ++i) z[i] = Contains(s, i) ? 1.0 : 0.0;
  return z;
}

}  // namespace cmbx
