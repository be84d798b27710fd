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

// Dense double-precision inner-loop kernels used by the LP core and the cone
// residuals. A scalar reference implementation is always compiled; vector
// variants (AVX2+FMA on x86-64, NEON on aarch64) are selected at runtime when
// the CPU supports them. Setting CMBX_KERNELS=scalar in the environment forces
// the reference path.
//
// Vector variants reassociate sums, so results agree with the scalar path to
// rounding only (see tests/kernels_test.cc for the bound that is enforced).

#ifndef CMBX_KERNELS_H_
#define CMBX_KERNELS_H_

#include <cstddef>
#include <span>

namespace cmbx::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

const char* IsaName(Isa isa);

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
};

// Per-ISA tables; the vector ones are null when not compiled in.
const KernelTable& ScalarTable();
const KernelTable* Avx2Table();
const KernelTable* NeonTable();

// True when the ISA is compiled in and supported by the running CPU.
bool Available(Isa isa);
// Best available ISA, honoring CMBX_KERNELS.
Isa Detect();
// Currently active table (initialized lazily from Detect()).
const KernelTable& Active();
// Overrides the active ISA; returns false (and changes nothing) when the ISA
// is unavailable. Intended for tests and benchmarks, not for concurrent use.
bool Select(Isa isa);

inline double Dot(std::span<const double> a, std::span<const double> b) {
  return Active().dot(a.data(), b.data(), a.size());
}
inline void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  Active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double SumSquares(std::span<const double> a) {
  return Active().sum_squares(a.data(), a.size());
}
inline double MaxAbs(std::span<const double> a) {
  return Active().max_abs(a.data(), a.size());
}

}  // namespace cmbx::kernels

#endif  // CMBX_KERNELS_H_
