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

// Set functions f : {0,1}^n -> R given either in closed form or by an explicit
// value table. A subset is a bitmask: bit i set <=> z_{i+1} = 1.

#ifndef CMBX_SET_FUNCTION_H_
#define CMBX_SET_FUNCTION_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace cmbx {

using Subset = uint32_t;

// Closed-form families are evaluated for n up to this many variables.
inline constexpr int kMaxVariables = 30;
// Exhaustive checks (submodularity, nonnegativity, extrema) enumerate all 2^n
// subsets and refuse anything larger.
inline constexpr int kEnumerationLimit = 16;

inline int PopCount(Subset s) { return __builtin_popcount(s); }
inline bool Contains(Subset s, int i) { return (s >> i) & 1u; }

class SetFunctionSpec;

namespace family {

// sqrt(sigma + c^T z)
struct SqrtAffine {
  double sigma = 0.0;
  std::vector<double> c;
};

enum class ConcaveMap { kSqrt, kLog1p, kPower };

// g(sigma + c^T z) for a concave nondecreasing g.
struct ConcaveOfAffine {
  ConcaveMap g = ConcaveMap::kSqrt;
  double rho = 0.5;  // exponent, used by kPower only
  double sigma = 0.0;
  std::vector<double> c;
};

// || [z; eta2] ||_p = (|S| + eta2)^(1/p) on binary z.
struct PNormAugmented {
  int n = 0;
  double p = 2.0;
  int eta2 = 0;
};

// exp(-alpha * |S|)
struct ExpDecay {
  int n = 0;
  double alpha = 0.0;
};

// values[S] for every bitmask S < 2^n.
struct Table {
  std::vector<double> values;
};

// h_max - inner
struct Complement {
  std::shared_ptr<const SetFunctionSpec> inner;
  double h_max = 0.0;
};

// inner - delta
struct Shifted {
  std::shared_ptr<const SetFunctionSpec> inner;
  double delta = 0.0;
};

}  // namespace family

// Immutable value type. Construction validates the parameters; nested
// families share their inner spec.
class SetFunctionSpec {
 public:
  using Family =
      std::variant<family::SqrtAffine, family::ConcaveOfAffine,
                   family::PNormAugmented, family::ExpDecay, family::Table,
                   family::Complement, family::Shifted>;

  explicit SetFunctionSpec(Family f);

  static SetFunctionSpec SqrtAffine(double sigma, std::vector<double> c);
  static SetFunctionSpec Table(std::vector<double> values);
  static SetFunctionSpec ExpDecay(int n, double alpha);
  static SetFunctionSpec PNormAugmented(int n, double p, int eta2);
  static SetFunctionSpec Complement(const SetFunctionSpec& inner, double h_max);
  static SetFunctionSpec Shifted(const SetFunctionSpec& inner, double delta);

  int n() const { return n_; }
  const Family& family() const { return family_; }
  // "sqrt_affine", "table", ... (the JSON tag)
  std::string FamilyName() const;

  // f(S). Throws kArgument when S >= 2^n.
  double Evaluate(Subset s) const;
  double operator()(Subset s) const { return Evaluate(s); }
  double EmptyValue() const { return Evaluate(0); }

  // All 2^n values in bitmask order. Throws kCapacity above kMaxVariables
  // or when the table would exceed 2^24 entries.
  std::vector<double> Values() const;

 private:
  double EvaluateUnchecked(Subset s) const;

  Family family_;
  int n_ = 0;
};

// Outcome of the exhaustive submodularity test. On violation, s and t are
// the witness pair with f(s) + f(t) < f(s | t) + f(s & t) and gap is the
// positive shortfall f(s | t) + f(s & t) - f(s) - f(t).
struct SubmodularityResult {
  bool submodular = true;
  Subset s = 0;
  Subset t = 0;
  double gap = 0.0;
};

// Diminishing-returns form: for every S and i, j not in S (i < j),
// f(S+i) - f(S) >= f(S+i+j) - f(S+j) - tol. Requires n <= kEnumerationLimit.
SubmodularityResult CheckSubmodular(const SetFunctionSpec& f, double tol = 1e-7);

// O(4^n) pairwise definition; used to cross-check CheckSubmodular on small n.
SubmodularityResult CheckSubmodularPairwise(const SetFunctionSpec& f,
                                            double tol = 1e-7);

struct NonnegativityResult {
  bool nonnegative = true;
  Subset subset = 0;
  double value = 0.0;
};

// f(S) >= -tol for every S; reports the first offending subset.
NonnegativityResult CheckNonnegative(const SetFunctionSpec& f, double tol = 1e-7);

enum class Extremum { kMax, kMin };

// Exact extremum by enumeration.
double ExtremalValue(const SetFunctionSpec& f, Extremum mode);

// For a supermodular h returns f = h_max - h, which is submodular and
// nonnegative.
SetFunctionSpec ToSubmodularComplement(const SetFunctionSpec& h);

// Same values as f, stored as a Table.
SetFunctionSpec Materialize(const SetFunctionSpec& f);

// Characteristic vector of S in {0,1}^n.
std::vector<double> Indicator(Subset s, int n);

}  // namespace cmbx

#endif  // CMBX_SET_FUNCTION_H_
