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

// JSON persistence. Parsers report schema violations as kSchema errors that
// name the offending field path, e.g. "$.blocks[1].cone.tag".

#ifndef CMBX_JSON_IO_H_
#define CMBX_JSON_IO_H_

#include <string>

#include "cmbx/cone.h"
#include "cmbx/model.h"
#include "cmbx/polymatroid.h"
#include "cmbx/set_function.h"
#include "json.hpp"

namespace cmbx {

using Json = nlohmann::json;

inline constexpr int kModelFormatVersion = 1;

Json ToJson(const SetFunctionSpec& f);
SetFunctionSpec SetFunctionFromJson(const Json& j, const std::string& path = "$");

Json ToJson(const Cone& c);
Cone ConeFromJson(const Json& j, const std::string& path = "$");

Json ToJson(const ConicBlock& b);
ConicBlock BlockFromJson(const Json& j, const std::string& path = "$");

Json ToJson(const GreedyCut& c);
GreedyCut CutFromJson(const Json& j, const std::string& path = "$");

Json ToJson(const MixedBinaryConicModel& m);
// Validates the model after parsing.
MixedBinaryConicModel ModelFromJson(const Json& j);

// File helpers; IO failures throw kArgument, parse failures kSchema.
Json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const Json& j);
void SaveModel(const MixedBinaryConicModel& m, const std::string& path);
MixedBinaryConicModel LoadModel(const std::string& path);

// Shared field accessors.
namespace json_detail {
const Json& Field(const Json& j, const char* key, const std::string& path);
double Number(const Json& j, const std::string& path);
int Integer(const Json& j, const std::string& path);
std::vector<double> Vector(const Json& j, const std::string& path);
std::vector<std::vector<double>> Matrix(const Json& j, const std::string& path);
}  // namespace json_detail

}  // namespace cmbx

#endif  // CMBX_JSON_IO_H_
