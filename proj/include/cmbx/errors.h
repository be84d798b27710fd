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

#ifndef CMBX_ERRORS_H_
#define CMBX_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cmbx {

enum class ErrorCode {
  kArgument,    // malformed call: bad permutation, dimension mismatch
  kStructural,  // inconsistent object: table length, block row counts
  kCapacity,    // enumeration bound exceeded
  kDomain,      // parameters outside the family's domain
  kSchema,      // JSON/CSV input violates the file format
  kLogic,       // caller broke a precondition (e.g. cut at a member point)
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(ErrorCodeName(code)) + " error: " + what);
}

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kArgument: return "argument";
    case ErrorCode::kStructural: return "structural";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kLogic: return "logic";
  }
  return "unknown";
}

// Shared numeric tolerances. Everything that compares floats goes through
// one of these so tests and CLI defaults agree.
struct Tolerances {
  double feas = 1e-7;   // membership / cut violation
  double opt = 1e-6;    // relative objective agreement
  double pivot = 1e-9;  // LP pivot magnitude
};

}  // namespace cmbx

#endif  // CMBX_ERRORS_H_
