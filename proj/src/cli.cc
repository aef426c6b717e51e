// Copyright 2026 The typmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "typmatch/cli.h"

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "typmatch/distribution.h"
#include "typmatch/errors.h"
#include "typmatch/graph.h"
#include "typmatch/harness.h"
#include "typmatch/matcher.h"
#include "typmatch/permutation.h"
#include "typmatch/typicality.h"

namespace typmatch {

namespace fs = std::filesystem;

namespace {

// File names inside a pair directory written by `gen`.
constexpr const char* kGraph1File = "graph1.txt";
constexpr const char* kGraph2File = "graph2_anon.txt";
constexpr const char* kTruthFile = "truth.txt";
constexpr const char* kDistFile = "dist.txt";

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

JointEdgeDistribution LoadDistributionFile(const fs::path& path,
                                           std::ostream& err) {
  JointEdgeDistribution p = [&] {
    try {
      return LoadDistribution(ReadFile(path));
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
    }
  }();
  if (const std::string warning = p.SmallCellWarning(); !warning.empty()) {
    fmt::print(err, "warning: {}: {}\n", path.string(), warning);
  }
  return p;
}

std::string Num(double v) { return fmt::format("{:.12g}", v); }

void ApplyThreads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

struct GenArgs {
  int n = 0;
  std::string dist;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
};

int RunGen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  ApplyThreads(a.threads);
  if (a.n < 2) throw std::invalid_argument("--n must be >= 2");
  const JointEdgeDistribution p = LoadDistributionFile(a.dist, err);
  const CmperInstance inst = MakeCmperInstance(p, a.n, a.seed);
  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
  WriteFile(dir / kGraph1File, FormatGraph(inst.g1));
  WriteFile(dir / kGraph2File, FormatGraph(inst.g2_anon));
  WriteFile(dir / kTruthFile, FormatLabeling(inst.secret));
  WriteFile(dir / kDistFile, FormatDistribution(p));
  fmt::print(out, "mi_bits={:.12f}\n", MutualInformation(p, LogBase::kTwo));
  return kExitOk;
}

struct MatchArgs {
  std::string pair;
  std::string epsilon = "auto";
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  int max_exhaustive_n = 10;
  int restarts = 32;
  int max_passes = 50;
  int threads = 0;
};

CmperInstance LoadPair(const fs::path& dir, std::ostream& err) {
  for (const char* name : {kGraph1File, kGraph2File, kTruthFile, kDistFile}) {
    if (!fs::is_regular_file(dir / name)) {
      throw IoError(fmt::format("pair directory '{}' is missing '{}'",
                                dir.string(), name));
    }
  }
  auto parse = [&](const char* name, auto&& parser) {
    try {
      return parser(ReadFile(dir / name));
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("{}: {}", (dir / name).string(), e.what()));
    }
  };
  CmperInstance inst{
      parse(kGraph1File, [](const std::string& t) { return ParseGraph(t); }),
      parse(kGraph2File, [](const std::string& t) { return ParseGraph(t); }),
      parse(kTruthFile, [](const std::string& t) { return ParseLabeling(t); }),
      LoadDistributionFile(dir / kDistFile, err)};
  try {
    inst.Validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(fmt::format("{}: {}", dir.string(), e.what()));
  }
  return inst;
}

int RunMatch(const MatchArgs& a, std::ostream& out, std::ostream& err) {
  ApplyThreads(a.threads);
  MatchConfig config;
  config.epsilon = EpsilonMode::Parse(a.epsilon);
  config.search = a.mode == "greedy" ? SearchMode::kGreedy : SearchMode::kExhaustive;
  config.seed = a.seed;
  config.max_exhaustive_n = a.max_exhaustive_n;
  config.restarts = a.restarts;
  config.max_passes = a.max_passes;

  const CmperInstance inst = LoadPair(a.pair, err);
  const MatchResult r = Match(inst, config);
  const double mi_nats = MutualInformation(inst.dist, LogBase::kE);
  const int cells = inst.dist.l() * inst.dist.l();
  const bool in_window = r.epsilon > 0.0 && r.epsilon < mi_nats / cells;
  if (!in_window) {
    fmt::print(err,
               "note: epsilon {} is outside the permutation-typicality bound "
               "window (0, I/|X||Y|) = (0, {})\n",
               Num(r.epsilon), Num(mi_nats / cells));
  }
  const bool matched = r.outcome == MatchOutcome::kMatched;
  fmt::print(out,
             "n,l,mode,epsilon,epsilon_in_bound_window,outcome,candidate_count,"
             "correct_fraction,mismatch_count,max_deviation_at_chosen,heuristic,"
             "chosen\n");
  fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{}\n", inst.g1.n(),
             inst.dist.l(), a.mode, Num(r.epsilon), in_window ? 1 : 0,
             matched ? "matched" : "no_typical_labeling", r.candidate_count,
             matched ? Num(r.correct_fraction) : "",
             matched ? std::to_string(r.mismatch_count) : "",
             matched ? Num(r.max_deviation_at_chosen) : "", r.heuristic ? 1 : 0,
             fmt::join(r.chosen.images(), " "));
  fmt::print(err, "elapsed_ms={:.3f}\n",
             std::chrono::duration<double, std::milli>(r.elapsed).count());
  return kExitOk;
}

struct PermtypArgs {
  std::string dist;
  int n = 0;
  std::string cycles;
  std::vector<double> epsilons;
  std::uint64_t trials = 10000;
  int t = 0;
  std::uint64_t seed = 0;
  std::string method = "auto";
  bool allow_fixed_points = false;
  int threads = 0;
};

int RunPermtyp(const PermtypArgs& a, std::ostream& out, std::ostream& err) {
  ApplyThreads(a.threads);
  const JointEdgeDistribution p = LoadDistributionFile(a.dist, err);
  const CycleType type = CycleType::Parse(a.cycles);
  if (type.n() != a.n) {
    throw FormatError(fmt::format("cycle spec {} covers {} points but --n is {}",
                                  a.cycles, type.n(), a.n));
  }
  const Permutation pi = StandardPermutation(type);
  const int t = a.t > 0 ? a.t : DefaultBreakLength(type);
  const bool within_guard = EnumerationSize(p.l(), a.n) <= kEnumerationGuard;
  bool exact = a.method == "exact" || (a.method == "auto" && within_guard);

  fmt::print(out, "n,cycle_type,epsilon,exact,estimate,ci_lo,ci_hi,t,bound,"
                  "bound_valid,bound_note\n");
  for (double eps : a.epsilons) {
    if (!(eps > 0.0)) throw std::invalid_argument("--epsilon values must be > 0");
    double estimate = 0.0;
    ProportionInterval ci;
    if (exact) {
      estimate = ExactPermTypicalityProb(p, a.n, pi, eps);
      ci = {estimate, estimate};
    } else {
      const McEstimate mc = McPermTypicalityProb(p, a.n, pi, eps, a.trials, a.seed);
      estimate = mc.estimate;
      ci = mc.ci;
    }
    const auto bound = ComputePermutationTypicalityBound(p, a.n, eps, type, t,
                                                         a.allow_fixed_points);
    fmt::print(out, "{},\"{}\",{},{},{},{},{},{},{},{},\"{}\"\n", a.n,
               type.ToString(), Num(eps), exact ? 1 : 0, Num(estimate),
               Num(ci.lo), Num(ci.hi), t, Num(bound.bound), bound.valid ? 1 : 0,
               bound.note);
  }
  return kExitOk;
}

struct SweepArgs {
  std::string config;
  std::string out;
  int threads = 0;
};

int RunSweepCommand(const SweepArgs& a, std::ostream& out, std::ostream&) {
  ApplyThreads(a.threads);
  const SweepConfig config = [&] {
    try {
      return ParseSweepConfig(ReadFile(a.config));
    } catch (const FormatError& e) {
      throw FormatError(fmt::format("{}: {}", a.config, e.what()));
    }
  }();
  const std::vector<SweepRow> rows = RunSweep(config);
  WriteFile(a.out, FormatSweepCsv(rows));
  fmt::print(out, "wrote {} rows to {}\n", rows.size(), a.out);
  return kExitOk;
}

struct MiArgs {
  std::string dist;
  std::string base = "2";
};

int RunMi(const MiArgs& a, std::ostream& out, std::ostream& err) {
  const JointEdgeDistribution p = LoadDistributionFile(a.dist, err);
  const LogBase base = a.base == "e" ? LogBase::kE : LogBase::kTwo;
  fmt::print(out, "{:.12f}\n", MutualInformation(p, base));
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Typicality matching for correlated marked random graphs",
               args.empty() ? "typmatch" : args[0]};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "gen", "Generate a correlated pair and anonymize the second graph");
  gen_cmd->add_option("--n", gen.n, "Number of vertices")->required();
  gen_cmd->add_option("--dist", gen.dist, "Distribution file")->required();
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--threads", gen.threads, "OpenMP threads (0 = default)");

  MatchArgs match;
  auto* match_cmd = app.add_subcommand("match", "De-anonymize a generated pair");
  match_cmd->add_option("--pair", match.pair, "Directory written by gen")->required();
  match_cmd->add_option("--epsilon", match.epsilon, "auto or a positive tolerance");
  match_cmd->add_option("--mode", match.mode, "exhaustive or greedy")
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  match_cmd->add_option("--seed", match.seed, "Seed for the candidate pick / restarts");
  match_cmd->add_option("--max-exhaustive-n", match.max_exhaustive_n,
                        "Largest n searched exhaustively");
  match_cmd->add_option("--restarts", match.restarts, "Greedy restarts");
  match_cmd->add_option("--max-passes", match.max_passes, "Greedy passes per restart");
  match_cmd->add_option("--threads", match.threads, "OpenMP threads (0 = default)");

  PermtypArgs permtyp;
  auto* permtyp_cmd = app.add_subcommand(
      "permtyp", "Probability that a permuted i.i.d. pair is jointly typical");
  permtyp_cmd->add_option("--dist", permtyp.dist, "Distribution file")->required();
  permtyp_cmd->add_option("--n", permtyp.n, "Sequence length")->required();
  permtyp_cmd->add_option("--cycles", permtyp.cycles,
                          "Cycle type, e.g. \"m=0;2,2,2,2\"")->required();
  permtyp_cmd->add_option("--epsilon", permtyp.epsilons, "Tolerance(s), comma-separated")
      ->required()
      ->delimiter(',');
  permtyp_cmd->add_option("--trials", permtyp.trials, "Monte Carlo trials");
  permtyp_cmd->add_option("--t", permtyp.t, "Cycle-breaking length (default: longest cycle, >= 2)");
  permtyp_cmd->add_option("--seed", permtyp.seed, "Monte Carlo seed");
  permtyp_cmd->add_option("--method", permtyp.method, "auto, exact or mc")
      ->check(CLI::IsMember({"auto", "exact", "mc"}));
  permtyp_cmd->add_flag("--allow-fixed-points", permtyp.allow_fixed_points,
                        "Report the bound as valid for m > 0");
  permtyp_cmd->add_option("--threads", permtyp.threads, "OpenMP threads (0 = default)");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an (n, rho) matching sweep");
  sweep_cmd->add_option("--config", sweep.config, "key=value config file")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output CSV")->required();
  sweep_cmd->add_option("--threads", sweep.threads, "OpenMP threads (0 = default)");

  MiArgs mi;
  auto* mi_cmd = app.add_subcommand("mi", "Mutual information of a distribution file");
  mi_cmd->add_option("--dist", mi.dist, "Distribution file")->required();
  mi_cmd->add_option("--base", mi.base, "2 or e")->check(CLI::IsMember({"2", "e"}));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("typmatch");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return RunGen(gen, out, err);
    if (*match_cmd) return RunMatch(match, out, err);
    if (*permtyp_cmd) return RunPermtyp(permtyp, out, err);
    if (*sweep_cmd) return RunSweepCommand(sweep, out, err);
    if (*mi_cmd) return RunMi(mi, out, err);
  } catch (const GuardExceeded& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitGuard;
  } catch (const FormatError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInput;
  } catch (const IoError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace typmatch
