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

#include "typmatch/harness.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <fmt/format.h>

#include "typmatch/errors.h"
#include "typmatch/rng.h"

namespace typmatch {

namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view token) {
  token = Trim(token);
  T v{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(fmt::format("{}: '{}' is not a valid number", key, token));
  }
  return v;
}

template <typename T>
std::vector<T> ParseList(std::string_view key, std::string_view value) {
  std::vector<T> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(ParseNumber<T>(key, value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value = value.substr(comma + 1);
  }
  return out;
}

}  // namespace

SweepConfig ParseSweepConfig(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError(fmt::format("line {}: expected key=value", line_no));
    }
    std::string key(Trim(line.substr(0, eq)));
    if (kv.count(key)) throw FormatError(fmt::format("duplicate key '{}'", key));
    kv.emplace(std::move(key), std::string(Trim(line.substr(eq + 1))));
  }
  for (const auto& [key, value] : kv) {
    if (key != "n_list" && key != "rho_list" && key != "trials" &&
        key != "epsilon" && key != "seed" && key != "mode" && key != "l") {
      throw FormatError(fmt::format("unknown key '{}'", key));
    }
  }
  for (const char* key : {"n_list", "rho_list", "trials"}) {
    if (!kv.count(key)) throw FormatError(fmt::format("missing key '{}'", key));
  }

  SweepConfig config;
  config.n_list = ParseList<int>("n_list", kv["n_list"]);
  config.rho_list = ParseList<double>("rho_list", kv["rho_list"]);
  config.trials = ParseNumber<int>("trials", kv["trials"]);
  if (kv.count("seed")) config.seed = ParseNumber<std::uint64_t>("seed", kv["seed"]);
  if (kv.count("l")) config.l = ParseNumber<int>("l", kv["l"]);
  if (kv.count("epsilon")) {
    try {
      config.epsilon = EpsilonMode::Parse(kv["epsilon"]);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  if (kv.count("mode")) {
    const std::string& mode = kv["mode"];
    if (mode == "exhaustive") {
      config.mode = SearchMode::kExhaustive;
    } else if (mode == "greedy") {
      config.mode = SearchMode::kGreedy;
    } else {
      throw FormatError(fmt::format("mode must be exhaustive or greedy, got '{}'", mode));
    }
  }

  for (int n : config.n_list) {
    if (n < 2) throw FormatError(fmt::format("n_list: n = {} is below 2", n));
  }
  for (double rho : config.rho_list) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
      throw FormatError(fmt::format("rho_list: {} is outside [0, 1]", rho));
    }
  }
  if (config.trials < 1) throw FormatError("trials must be >= 1");
  if (config.l < 2 || config.l > kMaxAlphabet) {
    throw FormatError(fmt::format("l must be in [2, {}]", kMaxAlphabet));
  }
  return config;
}

std::uint64_t TrialSeed(std::uint64_t master, int n, std::size_t rho_index,
                        int trial) {
  return DeriveSeed(master, {kStreamSweep, static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(rho_index),
                             static_cast<std::uint64_t>(trial)});
}

std::vector<TrialRecord> RunSweepCell(const SweepConfig& config, int n,
                                      std::size_t rho_index) {
  const JointEdgeDistribution p =
      JointEdgeDistribution::CorrelatedUniform(config.l, config.rho_list.at(rho_index));
  std::vector<TrialRecord> records(config.trials);
  // Exceptions must not escape an OpenMP region; the first one is rethrown.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < config.trials; ++k) {
    try {
      const std::uint64_t seed = TrialSeed(config.seed, n, rho_index, k);
      const CmperInstance inst = MakeCmperInstance(p, n, seed);
      MatchConfig mc;
      mc.epsilon = config.epsilon;
      mc.search = config.mode;
      mc.seed = seed;
      const MatchResult r = Match(inst, mc);
      records[k] = {seed, r.outcome == MatchOutcome::kNoTypicalLabeling,
                    r.correct_fraction, r.candidate_count};
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

SweepRow SummarizeCell(const SweepConfig& config, int n, std::size_t rho_index,
                       const std::vector<TrialRecord>& records) {
  SweepRow row;
  row.n = n;
  row.rho = config.rho_list.at(rho_index);
  row.mi_bits = MutualInformation(
      JointEdgeDistribution::CorrelatedUniform(config.l, row.rho), LogBase::kTwo);
  row.epsilon = config.epsilon.Resolve(n);
  row.trials = static_cast<int>(records.size());
  row.seed = config.seed;

  double sum = 0.0;
  double candidates = 0.0;
  int matched = 0;
  int empty = 0;
  for (const auto& r : records) {
    candidates += static_cast<double>(r.candidate_count);
    if (r.empty) {
      ++empty;
      continue;
    }
    sum += r.correct_fraction;
    ++matched;
  }
  row.mean_candidate_count = candidates / static_cast<double>(records.size());
  row.empty_sigma_rate = static_cast<double>(empty) / static_cast<double>(records.size());
  if (matched == 0) {
    row.mean_correct_fraction = std::numeric_limits<double>::quiet_NaN();
    row.std_correct_fraction = std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  row.mean_correct_fraction = sum / matched;
  double ss = 0.0;
  for (const auto& r : records) {
    if (r.empty) continue;
    const double d = r.correct_fraction - row.mean_correct_fraction;
    ss += d * d;
  }
  row.std_correct_fraction = matched > 1 ? std::sqrt(ss / (matched - 1)) : 0.0;
  return row;
}

std::vector<SweepRow> RunSweep(const SweepConfig& config) {
  std::vector<SweepRow> rows;
  for (int n : config.n_list) {
    for (std::size_t r = 0; r < config.rho_list.size(); ++r) {
      rows.push_back(SummarizeCell(config, n, r, RunSweepCell(config, n, r)));
    }
  }
  return rows;
}

std::string FormatSweepCsv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{},{:.12g},{:.12g},{:.12g},{},{:.12g},{:.12g},{:.12g},{:.12g},{}\n",
                       r.n, r.rho, r.mi_bits, r.epsilon, r.trials,
                       r.mean_correct_fraction, r.std_correct_fraction,
                       r.mean_candidate_count, r.empty_sigma_rate, r.seed);
  }
  return out;
}

}  // namespace typmatch
