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

#include <fstream>
#include <sstream>

#include "cmbx/errors.h"
#include "cmbx/json_io.h"

namespace cmbx {
namespace json_detail {

const Json& Field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) Fail(ErrorCode::kSchema, path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) Fail(ErrorCode::kSchema, path + "." + key + ": missing field");
  return *it;
}

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) Fail(ErrorCode::kSchema, path + ": expected a number");
  return j.get<double>();
}

int Integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(ErrorCode::kSchema, path + ": expected an integer");
  return j.get<int>();
}

std::vector<double> Vector(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(ErrorCode::kSchema, path + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(Number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::vector<double>> Matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(ErrorCode::kSchema, path + ": expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(Vector(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace json_detail

namespace {

using json_detail::Field;
using json_detail::Integer;
using json_detail::Number;
using json_detail::Vector;

const char* ConcaveMapName(family::ConcaveMap g) {
  switch (g) {
    case family::ConcaveMap::kSqrt: return "sqrt";
    case family::ConcaveMap::kLog1p: return "log1p";
    case family::ConcaveMap::kPower: return "power";
  }
  return "sqrt";
}

// Domain errors raised by the spec constructor are re-tagged with the path.
template <class F>
SetFunctionSpec Construct(F&& make, const std::string& path) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchema) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace

Json ToJson(const SetFunctionSpec& f) {
  Json j;
  j["family"] = f.FamilyName();
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, family::SqrtAffine>) {
          j["sigma"] = g.sigma;
          j["c"] = g.c;
        } else if constexpr (std::is_same_v<T, family::ConcaveOfAffine>) {
          j["g"] = ConcaveMapName(g.g);
          j["rho"] = g.rho;
          j["sigma"] = g.sigma;
          j["c"] = g.c;
        } else if constexpr (std::is_same_v<T, family::PNormAugmented>) {
          j["n"] = g.n;
          j["p"] = g.p;
          j["eta2"] = g.eta2;
        } else if constexpr (std::is_same_v<T, family::ExpDecay>) {
          j["n"] = g.n;
          j["alpha"] = g.alpha;
        } else if constexpr (std::is_same_v<T, family::Table>) {
          j["values"] = g.values;
        } else if constexpr (std::is_same_v<T, family::Complement>) {
          j["inner"] = ToJson(*g.inner);
          j["h_max"] = g.h_max;
        } else if constexpr (std::is_same_v<T, family::Shifted>) {
          j["inner"] = ToJson(*g.inner);
          j["delta"] = g.delta;
        }
      },
      f.family());
  return j;
}

SetFunctionSpec SetFunctionFromJson(const Json& j, const std::string& path) {
  const Json& tag = Field(j, "family", path);
  if (!tag.is_string()) Fail(ErrorCode::kSchema, path + ".family: expected a string");
  const std::string name = tag.get<std::string>();
  auto num = [&](const char* key) { return Number(Field(j, key, path), path + "." + key); };
  auto vec = [&](const char* key) { return Vector(Field(j, key, path), path + "." + key); };
  auto integer = [&](const char* key) {
    return Integer(Field(j, key, path), path + "." + key);
  };

  if (name == "sqrt_affine") {
    const double sigma = num("sigma");
    std::vector<double> c = vec("c");
    return Construct([&] { return SetFunctionSpec::SqrtAffine(sigma, c); }, path);
  }
  if (name == "concave_of_affine") {
    const Json& g = Field(j, "g", path);
    family::ConcaveOfAffine f;
    const std::string gname = g.is_string() ? g.get<std::string>() : "";
    if (gname == "sqrt") {
      f.g = family::ConcaveMap::kSqrt;
    } else if (gname == "log1p") {
      f.g = family::ConcaveMap::kLog1p;
    } else if (gname == "power") {
      f.g = family::ConcaveMap::kPower;
    } else {
      Fail(ErrorCode::kSchema, path + ".g: expected sqrt, log1p or power");
    }
    if (j.contains("rho")) f.rho = num("rho");
    f.sigma = num("sigma");
    f.c = vec("c");
    return Construct([&] { return SetFunctionSpec(f); }, path);
  }
  if (name == "pnorm_augmented") {
    const int n = integer("n");
    const double p = num("p");
    const int eta2 = integer("eta2");
    return Construct([&] { return SetFunctionSpec::PNormAugmented(n, p, eta2); }, path);
  }
  if (name == "exp_decay") {
    const int n = integer("n");
    const double alpha = num("alpha");
    return Construct([&] { return SetFunctionSpec::ExpDecay(n, alpha); }, path);
  }
  if (name == "table") {
    std::vector<double> values = vec("values");
    return Construct([&] { return SetFunctionSpec::Table(values); }, path);
  }
  if (name == "complement") {
    const SetFunctionSpec inner = SetFunctionFromJson(Field(j, "inner", path), path + ".inner");
    const double h_max = num("h_max");
    return Construct([&] { return SetFunctionSpec::Complement(inner, h_max); }, path);
  }
  if (name == "shifted") {
    const SetFunctionSpec inner = SetFunctionFromJson(Field(j, "inner", path), path + ".inner");
    const double delta = num("delta");
    return Construct([&] { return SetFunctionSpec::Shifted(inner, delta); }, path);
  }
  Fail(ErrorCode::kSchema, path + ".family: unknown family \"" + name + "\"");
}

Json ToJson(const GreedyCut& c) {
  Json j;
  j["pi"] = c.pi;
  j["offset"] = c.offset;
  if (c.permutation) j["perm"] = *c.permutation;
  return j;
}

GreedyCut CutFromJson(const Json& j, const std::string& path) {
  GreedyCut c;
  c.pi = Vector(Field(j, "pi", path), path + ".pi");
  c.offset = Number(Field(j, "offset", path), path + ".offset");
  if (j.contains("perm")) {
    const Json& p = j["perm"];
    if (!p.is_array()) Fail(ErrorCode::kSchema, path + ".perm: expected an array");
    std::vector<int> perm;
    for (std::size_t i = 0; i < p.size(); ++i) {
      perm.push_back(Integer(p[i], path + ".perm[" + std::to_string(i) + "]"));
    }
    c.permutation = std::move(perm);
  }
  return c;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kArgument, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kSchema, path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kArgument, "cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) Fail(ErrorCode::kArgument, "write failed for " + path);
}

}  // namespace cmbx
