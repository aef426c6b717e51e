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

#ifndef TYPMATCH_HARNESS_H_
#define TYPMATCH_HARNESS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "typmatch/distribution.h"
#include "typmatch/matcher.h"

namespace typmatch {

// A grid of (n, rho) cells. Each cell matches `trials` fresh instances drawn
// from JointEdgeDistribution::CorrelatedUniform(l, rho).
struct SweepConfig {
  std::vector<int> n_list;
  std::vector<double> rho_list;
  int trials = 0;
  EpsilonMode epsilon = EpsilonMode::Auto();
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::kExhaustive;
  int l = 2;
};

// Flat key=value text. Required keys: n_list, rho_list, trials. Optional:
// epsilon (auto | value, default auto), seed (default 0), mode (exhaustive |
// greedy, default exhaustive), l (default 2). Lists are comma-separated;
// blank lines and lines starting with '#' are ignored. Throws FormatError.
SweepConfig ParseSweepConfig(std::string_view text);

struct TrialRecord {
  std::uint64_t instance_seed = 0;
  bool empty = false;  // no typical labeling
  double correct_fraction = 0.0;
  std::uint64_t candidate_count = 0;
};

// Seed of trial k in cell (n, rho_index):
// DeriveSeed(config.seed, {kStreamSweep, n, rho_index, k}). It seeds both the
// instance and the matcher's pick.
std::uint64_t TrialSeed(std::uint64_t master, int n, std::size_t rho_index,
                        int trial);

// Runs one cell; trials run in parallel, records come back in trial order.
std::vector<TrialRecord> RunSweepCell(const SweepConfig& config, int n,
                                      std::size_t rho_index);

struct SweepRow {
  int n = 0;
  double rho = 0.0;
  double mi_bits = 0.0;
  double epsilon = 0.0;
  int trials = 0;
  // Over trials that returned a labeling; NaN when none did.
  double mean_correct_fraction = 0.0;
  double std_correct_fraction = 0.0;
  // Over all trials; an empty candidate set counts as 0.
  double mean_candidate_count = 0.0;
  double empty_sigma_rate = 0.0;
  std::uint64_t seed = 0;
};

SweepRow SummarizeCell(const SweepConfig& config, int n, std::size_t rho_index,
                       const std::vector<TrialRecord>& records);
// Rows in (n, rho) order as listed in the config.
std::vector<SweepRow> RunSweep(const SweepConfig& config);

inline constexpr std::string_view kSweepCsvHeader =
    "n,rho,mi_bits,epsilon,trials,mean_correct_fraction,std_correct_fraction,"
    "mean_candidate_count,empty_sigma_rate,seed";
std::string FormatSweepCsv(const std::vector<SweepRow>& rows);

}  // namespace typmatch

#endif  // TYPMATCH_HARNESS_H_
