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

#include "cmbx/errors.h"
#include "cmbx/json_io.h"

namespace cmbx {
namespace {

using json_detail::Field;
using json_detail::Integer;
using json_detail::Matrix;
using json_detail::Number;
using json_detail::Vector;

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& Array(const Json& j, const char* key, const std::string& path) {
  const Json& a = Field(j, key, path);
  if (!a.is_array()) Fail(ErrorCode::kSchema, path + "." + key + ": expected an array");
  return a;
}

bool Flag(const Json& j, const char* key, bool fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) {
    Fail(ErrorCode::kSchema, path + "." + key + ": expected a boolean");
  }
  return j[key].get<bool>();
}

Sense ParseSense(const Json& j, const std::string& path) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "<=") return Sense::kLe;
  if (s == "=") return Sense::kEq;
  if (s == ">=") return Sense::kGe;
  Fail(ErrorCode::kSchema, path + ": expected \"<=\", \"=\" or \">=\"");
}

}  // namespace

Json ToJson(const Cone& c) {
  Json j;
  j["tag"] = c.TagName();
  j["dim"] = c.dim;
  if (c.tag == ConeTag::kPOrder) j["p"] = c.p;
  return j;
}

Cone ConeFromJson(const Json& j, const std::string& path) {
  const Json& tag = Field(j, "tag", path);
  const auto parsed = ParseConeTag(tag.is_string() ? tag.get<std::string>() : "");
  if (!parsed) {
    Fail(ErrorCode::kSchema, path + ".tag: expected nonneg, soc, rsoc or porder");
  }
  Cone c;
  c.tag = *parsed;
  c.dim = Integer(Field(j, "dim", path), path + ".dim");
  if (c.tag == ConeTag::kPOrder) c.p = Number(Field(j, "p", path), path + ".p");
  return c;
}

Json ToJson(const ConicBlock& b) {
  Json j;
  j["A"] = b.A;
  j["B"] = b.B;
  if (!b.C.empty()) j["C"] = b.C;
  j["cone"] = ToJson(b.cone);
  j["x"] = b.x;
  j["function"] = b.function ? Json(*b.function) : Json(nullptr);
  return j;
}

ConicBlock BlockFromJson(const Json& j, const std::string& path) {
  ConicBlock b;
  b.A = Matrix(Field(j, "A", path), path + ".A");
  b.B = Vector(Field(j, "B", path), path + ".B");
  if (j.contains("C")) b.C = Vector(j["C"], path + ".C");
  b.cone = ConeFromJson(Field(j, "cone", path), path + ".cone");
  const Json& x = Array(j, "x", path);
  for (std::size_t i = 0; i < x.size(); ++i) {
    b.x.push_back(Integer(x[i], Index(path + ".x", i)));
  }
  if (j.contains("function") && !j["function"].is_null()) {
    b.function = Integer(j["function"], path + ".function");
  }
  return b;
}

Json ToJson(const MixedBinaryConicModel& m) {
  Json j;
  j["version"] = kModelFormatVersion;
  j["n"] = m.n;
  Json vars = Json::array();
  for (const ContinuousVar& v : m.vars) {
    vars.push_back({{"name", v.name},
                    {"lb", v.lb},
                    {"ub", v.ub},
                    {"lb_natural", v.lb_natural},
                    {"ub_natural", v.ub_natural}});
  }
  j["vars"] = vars;
  Json functions = Json::array();
  for (const SetFunctionSpec& f : m.functions) functions.push_back(ToJson(f));
  j["functions"] = functions;
  Json blocks = Json::array();
  for (const ConicBlock& b : m.blocks) blocks.push_back(ToJson(b));
  j["blocks"] = blocks;
  Json linear = Json::array();
  for (const LinearRow& r : m.linear) {
    linear.push_back({{"cx", r.cx},
                      {"cy", r.cy},
                      {"cz", r.cz},
                      {"sense", SenseName(r.sense)},
                      {"rhs", r.rhs},
                      {"kind", RowKindName(r.kind)}});
  }
  j["linear"] = linear;
  j["objective"] = {{"cx", m.objective.cx},
                    {"cy", m.objective.cy},
                    {"cz", m.objective.cz},
                    {"constant", m.objective.constant}};
  Json cuts = Json::array();
  for (const PreloadedCut& c : m.cuts) {
    Json cj = ToJson(c.cut);
    cj["function"] = c.function;
    cuts.push_back(cj);
  }
  j["cuts"] = cuts;
  j["meta"] = {{"family", m.meta.family}, {"seed", m.meta.seed}};
  return j;
}

MixedBinaryConicModel ModelFromJson(const Json& j) {
  const std::string root = "$";
  const int version = Integer(Field(j, "version", root), "$.version");
  if (version != kModelFormatVersion) {
    Fail(ErrorCode::kSchema, "$.version: unsupported version " + std::to_string(version) +
                                 " (expected " + std::to_string(kModelFormatVersion) + ")");
  }
  MixedBinaryConicModel m;
  m.n = Integer(Field(j, "n", root), "$.n");

  const Json& vars = Array(j, "vars", root);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string p = Index("$.vars", i);
    ContinuousVar v;
    if (vars[i].contains("name")) {
      if (!vars[i]["name"].is_string()) Fail(ErrorCode::kSchema, p + ".name: expected a string");
      v.name = vars[i]["name"].get<std::string>();
    }
    v.lb = Number(Field(vars[i], "lb", p), p + ".lb");
    v.ub = Number(Field(vars[i], "ub", p), p + ".ub");
    v.lb_natural = Flag(vars[i], "lb_natural", true, p);
    v.ub_natural = Flag(vars[i], "ub_natural", true, p);
    m.vars.push_back(std::move(v));
  }

  const Json& functions = Array(j, "functions", root);
  for (std::size_t i = 0; i < functions.size(); ++i) {
    m.functions.push_back(SetFunctionFromJson(functions[i], Index("$.functions", i)));
  }

  const Json& blocks = Array(j, "blocks", root);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    m.blocks.push_back(BlockFromJson(blocks[i], Index("$.blocks", i)));
  }

  if (j.contains("linear")) {
    const Json& linear = Array(j, "linear", root);
    for (std::size_t i = 0; i < linear.size(); ++i) {
      const std::string p = Index("$.linear", i);
      LinearRow r;
      r.cx = Vector(Field(linear[i], "cx", p), p + ".cx");
      r.cy = Vector(Field(linear[i], "cy", p), p + ".cy");
      r.cz = Vector(Field(linear[i], "cz", p), p + ".cz");
      r.sense = ParseSense(Field(linear[i], "sense", p), p + ".sense");
      r.rhs = Number(Field(linear[i], "rhs", p), p + ".rhs");
      if (linear[i].contains("kind")) {
        const Json& k = linear[i]["kind"];
        const std::string kind = k.is_string() ? k.get<std::string>() : "";
        if (kind == "general") {
          r.kind = RowKind::kGeneral;
        } else if (kind == "homogenization") {
          r.kind = RowKind::kHomogenization;
        } else {
          Fail(ErrorCode::kSchema, p + ".kind: expected general or homogenization");
        }
      }
      m.linear.push_back(std::move(r));
    }
  }

  if (j.contains("objective")) {
    const Json& o = j["objective"];
    const std::string p = "$.objective";
    m.objective.cx = Vector(Field(o, "cx", p), p + ".cx");
    m.objective.cy = Vector(Field(o, "cy", p), p + ".cy");
    m.objective.cz = Vector(Field(o, "cz", p), p + ".cz");
    if (o.contains("constant")) m.objective.constant = Number(o["constant"], p + ".constant");
  } else {
    m.ShapeObjective();
  }

  if (j.contains("cuts")) {
    const Json& cuts = Array(j, "cuts", root);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const std::string p = Index("$.cuts", i);
      PreloadedCut c;
      c.function = Integer(Field(cuts[i], "function", p), p + ".function");
      c.cut = CutFromJson(cuts[i], p);
      m.cuts.push_back(std::move(c));
    }
  }

  if (j.contains("meta")) {
    const Json& meta = j["meta"];
    if (meta.contains("family") && meta["family"].is_string()) {
      m.meta.family = meta["family"].get<std::string>();
    }
    if (meta.contains("seed")) {
      if (!meta["seed"].is_number_unsigned() && !meta["seed"].is_number_integer()) {
        Fail(ErrorCode::kSchema, "$.meta.seed: expected an integer");
      }
      m.meta.seed = meta["seed"].get<uint64_t>();
    }
  }

  m.Validate();
  return m;
}

void SaveModel(const MixedBinaryConicModel& m, const std::string& path) {
  WriteJsonFile(path, ToJson(m));
}

MixedBinaryConicModel LoadModel(const std::string& path) {
  return ModelFromJson(ReadJsonFile(path));
}

}  // namespace cmbx
