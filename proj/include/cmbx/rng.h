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

#ifndef CMBX_RNG_H_
#define CMBX_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

namespace cmbx {

// Seeded generator with platform-independent draws. std::mt19937_64 output is
// fixed by the standard, but the <random> distributions are not, so uniforms
// and normals are derived here explicitly (53-bit uniforms, Box-Muller).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n).
  uint64_t Below(uint64_t n);
  double Normal();
  std::vector<double> UnitSphere(int dim);

  // Mixes a base seed with a stream index (splitmix64 finalizer).
  static uint64_t Derive(uint64_t seed, uint64_t stream);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cmbx

#endif  // CMBX_RNG_H_
