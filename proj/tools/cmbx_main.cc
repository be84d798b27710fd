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

// cmbx: instance generation, checks, solves and verification reports.
// Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cmbx/builders.h"
#include "cmbx/condition_star.h"
#include "cmbx/errors.h"
#include "cmbx/json_io.h"
#include "cmbx/kernels.h"
#include "cmbx/solver.h"
#include "cmbx/verify.h"

namespace {

using cmbx::Json;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;

struct CliConfig {
  uint64_t seed = 0;
  double tol_feas = 1e-7;
  double tol_opt = 1e-6;
  double pivot_tol = 1e-9;
  std::string out_dir;
  std::string trace;
  int threads = 1;
  std::string kernels = "auto";

  cmbx::SolverOptions Solver() const {
    cmbx::SolverOptions o;
    o.tol_feas = tol_feas;
    o.tol_opt = tol_opt;
    o.pivot_tol = pivot_tol;
    return o;
  }
};

uint64_t DefaultSeed() {
  const char* env = std::getenv("CMBX_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw CLI::ValidationError("CMBX_SEED", std::string("not an integer: ") + env);
  }
}

// An explicit --out wins; otherwise <out-dir>/<name>.json; otherwise stdout.
void Emit(const CliConfig& cfg, const std::string& out, const std::string& name,
          const std::string& text) {
  std::string path = out;
  if (path.empty() && !cfg.out_dir.empty()) path = name;
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  if (!cfg.out_dir.empty() && std::filesystem::path(path).is_relative()) {
    std::filesystem::create_directories(cfg.out_dir);
    path = (std::filesystem::path(cfg.out_dir) / path).string();
  }
  std::ofstream f(path);
  if (!f) cmbx::Fail(cmbx::ErrorCode::kArgument, "cannot write " + path);
  f << text << "\n";
  if (!f) cmbx::Fail(cmbx::ErrorCode::kArgument, "write failed for " + path);
}

std::string SubsetString(const std::vector<double>& z) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] > 0.5) {
      s += (first ? "" : ",") + std::to_string(i + 1);
      first = false;
    }
  }
  return s + "}";
}

int RunCheck(const CliConfig& cfg, const std::string& instance, const std::string& what,
             int samples, bool slice_rows, const std::string& out) {
  const cmbx::MixedBinaryConicModel model = cmbx::LoadModel(instance);
  Json j;
  j["check"] = what;
  bool pass = true;
  if (what == "submodular") {
    Json fs = Json::array();
    for (std::size_t k = 0; k < model.functions.size(); ++k) {
      const auto r = cmbx::CheckSubmodular(model.functions[k], cfg.tol_feas);
      Json e = {{"function", k}, {"submodular", r.submodular}};
      if (!r.submodular) {
        e["witness"] = {{"S", r.s}, {"T", r.t}, {"gap", r.gap}};
        std::cerr << "function " << k << " is not submodular: f(S)+f(T) < f(S|T)+f(S&T) at S="
                  << r.s << " T=" << r.t << " by " << r.gap << "\n";
        pass = false;
      }
      fs.push_back(e);
    }
    j["functions"] = fs;
  } else if (what == "nonneg") {
    Json fs = Json::array();
    for (std::size_t k = 0; k < model.functions.size(); ++k) {
      const auto r = cmbx::CheckNonnegative(model.functions[k], cfg.tol_feas);
      Json e = {{"function", k}, {"nonnegative", r.nonnegative}};
      if (!r.nonnegative) {
        e["witness"] = {{"S", r.subset}, {"value", r.value}};
        std::cerr << "function " << k << " is negative at S=" << r.subset << ": " << r.value
                  << "\n";
        pass = false;
      }
      fs.push_back(e);
    }
    j["functions"] = fs;
  } else {
    Json blocks = Json::array();
    bool all = true;
    for (std::size_t b = 0; b < model.blocks.size(); ++b) {
      const cmbx::ScalingPattern p = cmbx::ConditionStarStructural(model.blocks[b]);
      const bool holds = p != cmbx::ScalingPattern::kUnknown;
      all = all && holds;
      blocks.push_back({{"block", b},
                        {"structural", holds ? "Holds" : "Unknown"},
                        {"pattern", cmbx::ScalingPatternName(p)}});
      std::cerr << "block " << b << ": " << (holds ? "Holds(" : "Unknown(")
                << cmbx::ScalingPatternName(p) << ")\n";
    }
    j["blocks"] = blocks;
    cmbx::FalsifierOptions fo;
    fo.seed = cfg.seed;
    fo.samples = samples;
    fo.include_slice_rows = slice_rows;
    fo.tol = cfg.tol_feas;
    const cmbx::FalsifyResult fr = cmbx::ConditionStarFalsify(model, fo);
    Json f = {{"outcome", cmbx::FalsifyOutcomeName(fr.outcome)},
              {"feasible_points", fr.feasible_points},
              {"scalings_tested", fr.scalings_tested}};
    if (fr.witness) {
      const auto& w = *fr.witness;
      f["witness"] = {{"block", w.block}, {"x", w.x},           {"z", w.z},
                      {"alpha", w.alpha}, {"violation", w.violation}, {"where", w.where}};
      std::cerr << "counterexample: block " << w.block << ", alpha " << w.alpha << ", "
                << w.where << " violated by " << w.violation << "\n";
    }
    if (!fr.diagnostic.empty()) f["diagnostic"] = fr.diagnostic;
    j["falsifier"] = f;
    pass = all && fr.outcome == cmbx::FalsifyOutcome::kNone;
  }
  j["passed"] = pass;
  Emit(cfg, out, "check.json", j.dump(2));
  return pass ? kOk : kVerificationFailure;
}

int RunSolve(const CliConfig& cfg, const std::string& instance, const std::string& mode,
             bool no_polymatroid, const std::string& cuts_out, const std::string& out) {
  const cmbx::MixedBinaryConicModel model = cmbx::LoadModel(instance);
  cmbx::SolverOptions o = cfg.Solver();
  o.polymatroid = !no_polymatroid;
  std::ofstream trace;
  if (!cfg.trace.empty()) {
    trace.open(cfg.trace);
    if (!trace) cmbx::Fail(cmbx::ErrorCode::kArgument, "cannot write " + cfg.trace);
    trace << "iteration,lp_value,max_violation,cuts_added\n";
    trace.precision(17);
    o.trace = [&trace](const cmbx::OaTraceRow& r) {
      trace << r.iteration << "," << r.lp_value << "," << r.max_violation << ","
            << r.cuts_added << "\n";
    };
  }
  cmbx::SolveResult r;
  if (mode == "relax") r = cmbx::SolveRelaxation(model, o);
  else if (mode == "exact") r = cmbx::SolveExactEnumeration(model, o);
  else r = cmbx::SolveBranchAndBound(model, o);
  Json j = cmbx::ToJson(r);
  j["mode"] = mode;
  Emit(cfg, out, "solve.json", j.dump(2));
  if (!cuts_out.empty()) cmbx::WriteJsonFile(cuts_out, cmbx::CutsToJson(r.greedy_cuts));
  std::fprintf(stderr, "%s: %s value %.12g, %d cuts, %ld nodes, %.3fs\n", mode.c_str(),
               cmbx::SolveStatusName(r.status), r.value, r.cuts_added(), r.nodes, r.wall_time);
  const bool fine = r.status == cmbx::SolveStatus::kOptimal ||
                    r.status == cmbx::SolveStatus::kInfeasible;
  return fine ? kOk : kVerificationFailure;
}

int RunHulltest(const CliConfig& cfg, const std::string& instance, int objectives,
                const std::string& csv, const std::string& out) {
  const cmbx::MixedBinaryConicModel model = cmbx::LoadModel(instance);
  cmbx::HullOptions ho;
  ho.solver = cfg.Solver();
  ho.threads = cfg.threads;
  ho.falsifier.seed = cfg.seed;
  const cmbx::HullReport r = cmbx::HullEqualityTest(
      model, objectives, cfg.seed, ho, std::filesystem::path(instance).stem().string());
  Emit(cfg, out, "hulltest.json", cmbx::ToJson(r).dump(2));
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) cmbx::Fail(cmbx::ErrorCode::kArgument, "cannot write " + csv);
    f << cmbx::ToCsv(r);
  }
  std::fprintf(stderr, "%d objectives, %d failures, max gap %.3g%s\n", r.trials, r.failures,
               r.max_gap, r.hypotheses.unmet ? " (hypotheses unmet)" : "");
  return r.passed() ? kOk : kVerificationFailure;
}

int RunStrengthen(const CliConfig& cfg, const std::string& instance, const std::string& out) {
  const cmbx::MixedBinaryConicModel model = cmbx::LoadModel(instance);
  const cmbx::StrengtheningGap g = cmbx::MeasureStrengthening(model, cfg.Solver());
  Emit(cfg, out, "strengthen.json", cmbx::ToJson(g).dump(2));
  std::fprintf(stderr, "no polymatroid %.12g, with %.12g, exact %.12g\n", g.no_polymatroid.value,
               g.with.value, g.exact.value);
  return g.ok() ? kOk : kVerificationFailure;
}

int RunBss(const CliConfig& cfg, const std::string& csv, const std::string& criterion,
           double alpha, double big_m, const std::string& out) {
  const cmbx::BssData data = cmbx::ReadBssCsv(csv);
  const cmbx::MixedBinaryConicModel model =
      cmbx::BuildBss(data, big_m, cmbx::ParseCriterion(criterion), alpha);
  const cmbx::SolveResult r = cmbx::SolveBranchAndBound(model, cfg.Solver());
  Json j = cmbx::ToJson(r);
  j["criterion"] = criterion;
  j["alpha"] = alpha;
  j["big_m"] = big_m;
  Json subset = Json::array();
  for (std::size_t i = 0; i < r.point.z.size(); ++i) {
    if (r.point.z[i] > 0.5) subset.push_back(i + 1);
  }
  j["subset"] = subset;
  Emit(cfg, out, "bss.json", j.dump(2));
  std::fprintf(stderr, "selected %s, objective %.12g (%s)\n", SubsetString(r.point.z).c_str(),
               r.value, cmbx::SolveStatusName(r.status));
  return r.ok() ? kOk : kVerificationFailure;
}

int RunExample1(const CliConfig& cfg, const std::string& out) {
  const cmbx::Example1Report r = cmbx::RunExample1();
  Emit(cfg, out, "example1.json", cmbx::ToJson(r).dump(2));
  for (const cmbx::Example1Row& row : r.rows) {
    std::fprintf(stderr, "x1 = %g: violation %.3g, %s\n", row.x1, row.feasibility,
                 row.decomposition.decomposed ? "Decomposed" : "NoneFound");
  }
  return r.feasibility_ok(cfg.tol_feas) ? kOk : kVerificationFailure;
}

int RunCutcheck(const CliConfig& cfg, const std::string& instance, const std::string& cuts,
                const std::string& out) {
  const cmbx::MixedBinaryConicModel model = cmbx::LoadModel(instance);
  const std::vector<cmbx::RecordedCut> pool = cmbx::CutsFromJson(cmbx::ReadJsonFile(cuts));
  const cmbx::CutValidityReport r = cmbx::CutValiditySuite(model.functions, pool, cfg.tol_feas);
  Emit(cfg, out, "cutcheck.json", cmbx::ToJson(r).dump(2));
  for (const std::string& f : r.failures) std::fprintf(stderr, "invalid %s\n", f.c_str());
  std::fprintf(stderr, "%d cuts checked, %d invalid\n", r.checked, r.invalid);
  return r.passed() ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conic mixed-binary sets: generation, solving and hull verification"};
  app.require_subcommand(1);
  app.fallthrough();
  CliConfig cfg;
  try {
    cfg.seed = DefaultSeed();
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  app.add_option("--seed", cfg.seed, "Random seed (default: $CMBX_SEED or 0)");
  app.add_option("--tol-feas", cfg.tol_feas, "Feasibility / cut violation tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-opt", cfg.tol_opt, "Relative objective tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--pivot-tol", cfg.pivot_tol, "LP pivot tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", cfg.out_dir, "Directory for JSON output");
  app.add_option("--trace", cfg.trace, "Per-iteration trace CSV (solve --mode relax)");
  app.add_option("--threads", cfg.threads, "Worker threads for hull-test rows")
      ->check(CLI::PositiveNumber);
  app.add_option("--kernels", cfg.kernels, "Numeric kernels")
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));

  std::string out;
  auto* gen = app.add_subcommand("gen", "Generate an instance JSON");
  cmbx::GenParams gp;
  std::string criterion = "aic";
  gen->add_option("--family", gp.family, "H, R, M, fractional, bss, drccp or example1")
      ->required()
      ->check(CLI::IsMember({"H", "R", "M", "fractional", "bss", "drccp", "example1"}));
  gen->add_option("--m", gp.m, "Cone size parameter")->check(CLI::PositiveNumber);
  gen->add_option("--n", gp.n, "Number of binaries")->check(CLI::Range(1, 20));
  gen->add_option("--k", gp.k, "BSS sample count")->check(CLI::PositiveNumber);
  gen->add_option("--ratios", gp.ratios, "Fractional ratio count")->check(CLI::PositiveNumber);
  gen->add_option("--p", gp.p, "p-order cone exponent")->check(CLI::Range(1.0, 1e6));
  gen->add_option("--eta2", gp.eta2, "DR-CCP eta2")->check(CLI::NonNegativeNumber);
  gen->add_option("--alpha", gp.alpha, "BSS penalty")->check(CLI::NonNegativeNumber);
  gen->add_option("--bigm", gp.big_m, "BSS big-M")->check(CLI::PositiveNumber);
  gen->add_option("--criterion", criterion, "aic, bic or aicc")
      ->check(CLI::IsMember({"aic", "bic", "aicc"}));
  gen->add_option("--out", out, "Output file (default stdout)");

  std::string instance, what = "condstar", mode = "relax", csv, cuts, cuts_out;
  int samples = 10'000, objectives = 20;
  bool slice_rows = false, no_polymatroid = false;
  double bss_alpha = 0.5, bss_bigm = 100.0;

  auto* check = app.add_subcommand("check", "Submodularity, nonnegativity or scaling checks");
  check->add_option("instance", instance, "Instance JSON")->required();
  check->add_option("--what", what, "submodular, nonneg or condstar")
      ->check(CLI::IsMember({"submodular", "nonneg", "condstar"}));
  check->add_option("--samples", samples, "Falsifier samples per block")
      ->check(CLI::PositiveNumber);
  check->add_flag("--slice-rows", slice_rows, "Falsifier also enforces x-only rows");
  check->add_option("--out", out, "Output file");

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", instance, "Instance JSON")->required();
  solve->add_option("--mode", mode, "relax, exact or bnb")
      ->check(CLI::IsMember({"relax", "exact", "bnb"}));
  solve->add_flag("--no-polymatroid", no_polymatroid, "Disable greedy separation");
  solve->add_option("--cuts-out", cuts_out, "Write the greedy cuts to this file");
  solve->add_option("--out", out, "Output file");

  auto* hull = app.add_subcommand("hulltest", "Relaxation versus exact over random objectives");
  hull->add_option("instance", instance, "Instance JSON")->required();
  hull->add_option("--objectives", objectives, "Number of objectives")
      ->check(CLI::NonNegativeNumber);
  hull->add_option("--csv", csv, "Also write the rows as CSV");
  hull->add_option("--out", out, "Output file");

  auto* strengthen = app.add_subcommand("strengthen", "Relaxation with and without cuts");
  strengthen->add_option("instance", instance, "Instance JSON")->required();
  strengthen->add_option("--out", out, "Output file");

  auto* bss = app.add_subcommand("bss", "Best subset selection from a CSV");
  bss->add_option("csv", csv, "CSV with columns u1..un,a")->required();
  bss->add_option("--criterion", criterion, "aic, bic or aicc")
      ->check(CLI::IsMember({"aic", "bic", "aicc"}));
  bss->add_option("--alpha", bss_alpha, "Penalty weight")->check(CLI::NonNegativeNumber);
  bss->add_option("--bigm", bss_bigm, "Coefficient bound")->check(CLI::PositiveNumber);
  bss->add_option("--out", out, "Output file");

  auto* ex1 = app.add_subcommand("example1", "Half-integral candidate report for the two-binary example");
  ex1->add_option("--out", out, "Output file");

  auto* cutcheck = app.add_subcommand("cutcheck", "Validate a cut file against an instance");
  cutcheck->add_option("instance", instance, "Instance JSON")->required();
  cutcheck->add_option("cuts", cuts, "Cut JSON")->required();
  cutcheck->add_option("--out", out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cfg.kernels != "auto") {
      const cmbx::kernels::Isa isa = cfg.kernels == "scalar" ? cmbx::kernels::Isa::kScalar
                                     : cfg.kernels == "avx2" ? cmbx::kernels::Isa::kAvx2
                                                             : cmbx::kernels::Isa::kNeon;
      if (!cmbx::kernels::Select(isa)) {
        std::cerr << "kernels " << cfg.kernels << " not available on this machine\n";
        return kUsage;
      }
    }
    if (*gen) {
      gp.seed = cfg.seed;
      gp.criterion = cmbx::ParseCriterion(criterion);
      Emit(cfg, out, "instance.json", cmbx::ToJson(cmbx::Generate(gp)).dump(2));
      return kOk;
    }
    if (*check) return RunCheck(cfg, instance, what, samples, slice_rows, out);
    if (*solve) return RunSolve(cfg, instance, mode, no_polymatroid, cuts_out, out);
    if (*hull) return RunHulltest(cfg, instance, objectives, csv, out);
    if (*strengthen) return RunStrengthen(cfg, instance, out);
    if (*bss) return RunBss(cfg, csv, criterion, bss_alpha, bss_bigm, out);
    if (*ex1) return RunExample1(cfg, out);
    if (*cutcheck) return RunCutcheck(cfg, instance, cuts, out);
  } catch (const cmbx::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
