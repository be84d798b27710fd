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

#include "cmbx/verify.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "cmbx/builders.h"
#include "cmbx/errors.h"
#include "cmbx/rng.h"

namespace cmbx {
namespace {

std::string Format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json PointJson(const Point& p) { return {{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

void RunRow(const MixedBinaryConicModel& model, const HullOptions& options, HullRow& row) {
  MixedBinaryConicModel m = model;
  m.objective = SampleObjective(model, row.objective_seed);
  SolverOptions so = options.solver;
  for (int attempt = 0; attempt < 2; ++attempt) {
    so.bound_scale = attempt == 0 ? 1.0 : options.inflation;
    row.inflations = attempt;
    const SolveResult relax = SolveRelaxation(m, so);
    const SolveResult exact = SolveExactEnumeration(m, so);
    if (!relax.ok() || !exact.ok()) {
      row.failed = true;
      row.note = std::string("relaxation ") + SolveStatusName(relax.status) + ", exact " +
                 SolveStatusName(exact.status);
      return;
    }
    row.relaxation = relax.value;
    row.exact = exact.value;
    row.gap = (exact.value - relax.value) / (1.0 + std::abs(exact.value));
    const bool touched = !relax.touched.empty() || !exact.touched.empty();
    if (attempt == 0) row.bound_touched = touched;
    if (!touched) {
      row.failed = std::abs(row.gap) > options.gap_tol;
      if (row.failed) row.note = "gap above tolerance";
      return;
    }
    std::string names;
    for (const auto& t : relax.touched) names += t + " ";
    for (const auto& t : exact.touched) names += t + " ";
    row.note = "artificial bound touched: " + names;
  }
  row.failed = true;
  row.note += "(after inflation)";
}

}  // namespace

LinearObjective SampleObjective(const MixedBinaryConicModel& model, uint64_t seed) {
  Rng rng(seed);
  const int nx = model.num_x();
  const std::vector<double> c = rng.UnitSphere(nx + model.n);
  LinearObjective o;
  o.cx.assign(c.begin(), c.begin() + nx);
  o.cy.assign(model.num_y(), 0.0);
  o.cz.assign(c.begin() + nx, c.end());
  for (int i = 0; i < nx; ++i) {
    const ContinuousVar& v = model.vars[i];
    if (v.lb_natural && !v.ub_natural) o.cx[i] = std::abs(o.cx[i]);
    if (!v.lb_natural && v.ub_natural) o.cx[i] = -std::abs(o.cx[i]);
  }
  return o;
}

Hypotheses CheckHypotheses(const MixedBinaryConicModel& model,
                           const FalsifierOptions& falsifier) {
  Hypotheses h;
  for (const ConicBlock& b : model.blocks) {
    h.patterns.push_back(ConditionStarStructural(b));
    if (h.patterns.back() == ScalingPattern::kUnknown) h.structural = false;
  }
  bool uncovered = false;
  for (const SetFunctionSpec& f : model.functions) {
    if (f.n() > kEnumerationLimit) continue;
    if (!CheckSubmodular(f).submodular) {
      h.submodular = false;
      if (f.n() > 5) uncovered = true;
    }
  }
  for (const LinearRow& row : model.linear) {
    if (row.kind == RowKind::kHomogenization) h.homogenized = true;
  }
  if (!h.structural) {
    h.falsifier_run = true;
    h.falsifier = ConditionStarFalsify(model, falsifier).outcome;
  }
  h.unmet = (!h.structural && h.falsifier == FalsifyOutcome::kWitness) || h.homogenized ||
            uncovered;
  return h;
}

HullReport HullEqualityTest(const MixedBinaryConicModel& model, int num_objectives,
                            uint64_t seed, const HullOptions& options,
                            const std::string& instance) {
  HullReport report;
  report.instance = instance.empty() ? model.meta.family : instance;
  report.seed = seed;
  report.hypotheses = CheckHypotheses(model, options.falsifier);
  report.rows.resize(std::max(0, num_objectives));
  for (int i = 0; i < num_objectives; ++i) {
    report.rows[i].index = i;
    report.rows[i].objective_seed = Rng::Derive(seed, static_cast<uint64_t>(i));
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < num_objectives; i = next++) RunRow(model, options, report.rows[i]);
  };
  const int threads = std::clamp(options.threads, 1, std::max(1, num_objectives));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const HullRow& row : report.rows) {
    ++report.trials;
    if (row.failed) ++report.failures;
    if (std::isfinite(row.gap)) report.max_gap = std::max(report.max_gap, std::abs(row.gap));
  }
  return report;
}

Json ToJson(const Hypotheses& h) {
  Json j;
  Json patterns = Json::array();
  for (ScalingPattern p : h.patterns) patterns.push_back(ScalingPatternName(p));
  j["patterns"] = patterns;
  j["structural"] = h.structural;
  j["submodular"] = h.submodular;
  j["homogenized"] = h.homogenized;
  j["falsifier"] = h.falsifier_run ? Json(FalsifyOutcomeName(h.falsifier)) : Json(nullptr);
  j["hypotheses_unmet"] = h.unmet;
  return j;
}

Json ToJson(const HullReport& r) {
  Json rows = Json::array();
  for (const HullRow& row : r.rows) {
    rows.push_back({{"index", row.index},
                    {"objective_seed", row.objective_seed},
                    {"relaxation", row.relaxation},
                    {"exact", row.exact},
                    {"gap", row.gap},
                    {"bound_touched", row.bound_touched},
                    {"inflations", row.inflations},
                    {"failed", row.failed},
                    {"note", row.note}});
  }
  Json j;
  j["instance"] = r.instance;
  j["seed"] = r.seed;
  j["hypotheses"] = ToJson(r.hypotheses);
  j["rows"] = rows;
  j["summary"] = {{"max_gap", r.max_gap},
                  {"trials", r.trials},
                  {"failures", r.failures},
                  {"passed", r.passed()}};
  return j;
}

std::string ToCsv(const HullReport& r) {
  std::string out =
      "index,objective_seed,relaxation,exact,gap,bound_touched,inflations,failed\n";
  for (const HullRow& row : r.rows) {
    out += std::to_string(row.index) + "," + std::to_string(row.objective_seed) + "," +
           Format(row.relaxation) + "," + Format(row.exact) + "," + Format(row.gap) + "," +
           (row.bound_touched ? "1" : "0") + "," + std::to_string(row.inflations) + "," +
           (row.failed ? "1" : "0") + "\n";
  }
  return out;
}

StrengtheningGap MeasureStrengthening(const MixedBinaryConicModel& model,
                                      const SolverOptions& options) {
  StrengtheningGap g;
  SolverOptions off = options;
  off.polymatroid = false;
  g.no_polymatroid = SolveRelaxation(model, off);
  SolverOptions on = options;
  on.polymatroid = true;
  g.with = SolveRelaxation(model, on);
  g.exact = SolveExactEnumeration(model, options);
  return g;
}

Json ToJson(const StrengtheningGap& g) {
  return {{"value_no_polymatroid", g.no_polymatroid.value},
          {"value_with", g.with.value},
          {"value_exact", g.exact.value},
          {"status", {SolveStatusName(g.no_polymatroid.status),
                      SolveStatusName(g.with.status), SolveStatusName(g.exact.status)}}};
}

SeparationReport SeparationVsBruteforce(const SetFunctionSpec& f, int trials, uint64_t seed) {
  const int n = f.n();
  if (n > 8) Fail(ErrorCode::kCapacity, "brute-force separation needs n <= 8");
  std::vector<GreedyCut> vertices;
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    vertices.push_back(VertexFromPermutation(f, sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  SeparationReport report;
  Rng rng(seed);
  std::vector<double> z(n);
  for (int t = 0; t < trials; ++t) {
    for (double& v : z) v = rng.Uniform();
    double best = -std::numeric_limits<double>::infinity();
    for (const GreedyCut& c : vertices) best = std::max(best, c.Dot(z));
    const double greedy = SeparateGreedy(f, z, 0.0).value;
    const double diff = std::abs(greedy - best);
    ++report.trials;
    report.max_difference = std::max(report.max_difference, diff);
    if (diff > 1e-12 * (1.0 + std::abs(best))) ++report.mismatches;
  }
  return report;
}

CutValidityReport CutValiditySuite(const std::vector<SetFunctionSpec>& functions,
                                   const std::vector<RecordedCut>& cuts, double tol) {
  CutValidityReport r;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const RecordedCut& c = cuts[k];
    if (c.function < 0 || c.function >= static_cast<int>(functions.size())) {
      Fail(ErrorCode::kArgument, "cut " + std::to_string(k) + " names function " +
                                     std::to_string(c.function));
    }
    const SetFunctionSpec& f = functions[c.function];
    ++r.checked;
    bool ok = static_cast<int>(c.cut.pi.size()) == f.n() &&
              std::abs(c.cut.offset - f.EmptyValue()) <= tol * (1.0 + std::abs(c.cut.offset));
    CutValidity v;
    if (ok) {
      v = ValidateCut(f, c.cut, tol);
      ok = v.valid;
    }
    if (!ok) {
      ++r.invalid;
      r.failures.push_back("cut " + std::to_string(k) + " (function " +
                           std::to_string(c.function) + "): subset " +
                           std::to_string(v.subset) + " slack " + Format(v.slack));
    }
  }
  return r;
}

Json ToJson(const CutValidityReport& r) {
  return {{"checked", r.checked}, {"invalid", r.invalid}, {"failures", r.failures},
          {"passed", r.passed()}};
}

std::vector<RecordedCut> CutsFromJson(const Json& j) {
  if (!j.is_array()) Fail(ErrorCode::kSchema, "$: expected an array of cuts");
  std::vector<RecordedCut> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string path = "$[" + std::to_string(k) + "]";
    RecordedCut c;
    c.function = json_detail::Integer(json_detail::Field(j[k], "function", path),
                                      path + ".function");
    c.origin = CutOrigin::kPolymatroid;
    c.cut = CutFromJson(j[k], path);
    out.push_back(std::move(c));
  }
  return out;
}

Json CutsToJson(const std::vector<RecordedCut>& cuts) {
  Json out = Json::array();
  for (const RecordedCut& c : cuts) {
    Json j = ToJson(c.cut);
    j["function"] = c.function;
    j["origin"] = CutOriginName(c.origin);
    out.push_back(std::move(j));
  }
  return out;
}

bool Example1Report::feasibility_ok(double tol) const {
  for (const Example1Row& row : rows) {
    if (row.feasibility > tol) return false;
  }
  return !rows.empty();
}

Example1Report RunExample1(const std::vector<double>& x1_values) {
  const MixedBinaryConicModel model = BuildExample1();
  Example1Report report;
  report.polar_vertices = EnumeratePolarVertices(model.functions[0]);
  report.hypotheses = CheckHypotheses(model);
  FalsifierOptions fo;
  report.cone_only = ConditionStarFalsify(model, fo);
  fo.include_slice_rows = true;
  report.with_slice = ConditionStarFalsify(model, fo);

  MixedBinaryConicModel fixed = model;
  for (int i = 0; i < 2; ++i) {
    LinearRow row = fixed.EmptyRow();
    row.cz[i] = 1.0;
    row.sense = Sense::kEq;
    row.rhs = 0.5;
    fixed.linear.push_back(row);
  }
  report.relaxation_min_x2 = SolveRelaxation(fixed).value;

  const double y = std::sqrt(2.0) / 2.0;
  for (double x1 : x1_values) {
    Example1Row row;
    row.x1 = x1;
    row.candidate.x = {x1, 1.0 + std::sqrt(x1 * x1 + 0.5), 1.0};
    row.candidate.y = {y};
    row.candidate.z = {0.5, 0.5};
    row.feasibility = CheckPoint(model, row.candidate, PointSet::kRelaxation).max_violation;
    row.conic_residual = BlockResidual(model.blocks[0], row.candidate);
    for (const PreloadedCut& c : model.cuts) {
      row.cut_slacks.push_back(row.candidate.y[c.function] - c.cut.Evaluate(row.candidate.z));
    }
    row.decomposition = DecompositionCheck(model, row.candidate);
    report.rows.push_back(std::move(row));
  }
  return report;
}

Json ToJson(const Example1Report& r) {
  Json vertices = Json::array();
  for (const GreedyCut& c : r.polar_vertices) vertices.push_back(c.pi);
  Json rows = Json::array();
  for (const Example1Row& row : r.rows) {
    rows.push_back({{"x1", row.x1},
                    {"candidate", PointJson(row.candidate)},
                    {"feasibility_violation", row.feasibility},
                    {"conic_residual", row.conic_residual},
                    {"cut_slacks", row.cut_slacks},
                    {"decomposition", ToJson(row.decomposition)}});
  }
  auto falsify = [](const FalsifyResult& f) {
    Json j = {{"outcome", FalsifyOutcomeName(f.outcome)},
              {"feasible_points", f.feasible_points}};
    if (f.witness) {
      j["witness"] = {{"block", f.witness->block}, {"x", f.witness->x},
                      {"z", f.witness->z},         {"alpha", f.witness->alpha},
                      {"violation", f.witness->violation}, {"where", f.witness->where}};
    }
    return j;
  };
  return {{"polar_vertices", vertices},
          {"hypotheses", ToJson(r.hypotheses)},
          {"falsifier_cone_only", falsify(r.cone_only)},
          {"falsifier_with_slice_rows", falsify(r.with_slice)},
          {"relaxation_min_x2_at_half", r.relaxation_min_x2},
          {"rows", rows},
          {"feasibility_ok", r.feasibility_ok()}};
}

}  // namespace cmbx
