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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "cmbx/kernels.h"

namespace cmbx::kernels {

#if !defined(CMBX_HAVE_AVX2)
const KernelTable* Avx2Table() { return nullptr; }
#endif
#if !defined(CMBX_HAVE_NEON)
const KernelTable* NeonTable() { return nullptr; }
#endif

namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* TableFor(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return &ScalarTable();
    case Isa::kAvx2: return Avx2Table();
    case Isa::kNeon: return NeonTable();
  }
  return nullptr;
}

}  // namespace

const char* IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool Available(Isa isa) {
  if (TableFor(isa) == nullptr) return false;
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if defined(CMBX_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon: return true;
  }
  return false;
}

Isa Detect() {
  if (const char* env = std::getenv("CMBX_KERNELS")) {
    if (std::string_view(env) == "scalar") return Isa::kScalar;
  }
  if (Available(Isa::kAvx2)) return Isa::kAvx2;
  if (Available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

const KernelTable& Active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = TableFor(Detect());
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

bool Select(Isa isa) {
  if (!Available(isa)) return false;
  g_active.store(TableFor(isa), std::memory_order_release);
  return true;
}

}  // namespace cmbx::kernels
