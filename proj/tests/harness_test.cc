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

#include <omp.h>

#include <cmath>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "typmatch/errors.h"

namespace typmatch {
namespace {

TEST(SweepConfig, ParsesAllKeys) {
  const auto c = ParseSweepConfig(
      "# grid\n"
      "n_list=6,7, 8\n"
      "\n"
      "rho_list = 0,0.5,1\n"
      "trials=12\n"
      "epsilon=0.07\n"
      "seed=99\n"
      "mode=greedy\n"
      "l=3\n");
  EXPECT_EQ(c.n_list, (std::vector<int>{6, 7, 8}));
  EXPECT_EQ(c.rho_list, (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(c.trials, 12);
  EXPECT_FALSE(c.epsilon.is_auto());
  EXPECT_EQ(c.epsilon.Resolve(6), 0.07);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.mode, SearchMode::kGreedy);
  EXPECT_EQ(c.l, 3);
}

TEST(SweepConfig, Defaults) {
  const auto c = ParseSweepConfig("n_list=7\nrho_list=0.25\ntrials=3\n");
  EXPECT_TRUE(c.epsilon.is_auto());
  EXPECT_EQ(c.seed, 0u);
  EXPECT_EQ(c.mode, SearchMode::kExhaustive);
  EXPECT_EQ(c.l, 2);
  EXPECT_TRUE(ParseSweepConfig("n_list=7\nrho_list=0\ntrials=3\nepsilon=auto\n")
                  .epsilon.is_auto());
}

TEST(SweepConfig, Errors) {
  const char* bad[] = {
      "rho_list=0\ntrials=3\n",                        // missing n_list
      "n_list=7\nrho_list=0\ntrials=3\ncolour=red\n",  // unknown key
      "n_list=7\nn_list=8\nrho_list=0\ntrials=3\n",    // duplicate
      "n_list=7\nrho_list=0\ntrials\n",                // no '='
      "n_list=7,x\nrho_list=0\ntrials=3\n",
      "n_list=1\nrho_list=0\ntrials=3\n",
      "n_list=7\nrho_list=1.5\ntrials=3\n",
      "n_list=7\nrho_list=0\ntrials=0\n",
      "n_list=7\nrho_list=0\ntrials=3\nmode=fast\n",
      "n_list=7\nrho_list=0\ntrials=3\nepsilon=-1\n",
      "n_list=7\nrho_list=0\ntrials=3\nl=1\n",
      "n_list=\nrho_list=0\ntrials=3\n",
  };
  for (const char* text : bad) {
    EXPECT_THROW(ParseSweepConfig(text), FormatError) << text;
  }
}

TEST(TrialSeed, DistinctAcrossCoordinates) {
  std::set<std::uint64_t> seen;
  for (int n : {7, 8}) {
    for (std::size_t r = 0; r < 3; ++r) {
      for (int k = 0; k < 50; ++k) seen.insert(TrialSeed(1, n, r, k));
    }
  }
  EXPECT_EQ(seen.size(), 300u);
  EXPECT_NE(TrialSeed(1, 7, 0, 0), TrialSeed(2, 7, 0, 0));
}

TEST(SummarizeCell, HandComputedRecords) {
  SweepConfig config;
  config.n_list = {8};
  config.rho_list = {0.5};
  config.trials = 4;
  const std::vector<TrialRecord> records{
      {1, false, 1.0, 2}, {2, false, 0.5, 4}, {3, true, 0.0, 0}, {4, false, 0.0, 6}};
  const auto row = SummarizeCell(config, 8, 0, records);
  EXPECT_EQ(row.trials, 4);
  EXPECT_DOUBLE_EQ(row.mean_correct_fraction, 0.5);
  EXPECT_DOUBLE_EQ(row.std_correct_fraction, 0.5);
  EXPECT_DOUBLE_EQ(row.mean_candidate_count, 3.0);
  EXPECT_DOUBLE_EQ(row.empty_sigma_rate, 0.25);
  EXPECT_EQ(row.epsilon, AutoEpsilon(8));

  const auto all_empty = SummarizeCell(config, 8, 0, {{1, true, 0.0, 0}});
  EXPECT_TRUE(std::isnan(all_empty.mean_correct_fraction));
  EXPECT_EQ(all_empty.empty_sigma_rate, 1.0);
}

SweepConfig SmallGrid() {
  return ParseSweepConfig(
      "n_list=6,7\nrho_list=0,0.5,1\ntrials=20\nseed=5\n");
}

TEST(Sweep, CsvShapeAndMutualInformation) {
  const auto config = SmallGrid();
  const auto rows = RunSweep(config);
  ASSERT_EQ(rows.size(), 6u);
  const std::string csv = FormatSweepCsv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kSweepCsvHeader);
  std::size_t k = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 10u) << line;
    const auto& row = rows.at(k);
    EXPECT_EQ(std::stoi(cols[0]), config.n_list[k / 3]);
    EXPECT_EQ(std::stod(cols[1]), config.rho_list[k % 3]);
    const double mi = MutualInformation(
        JointEdgeDistribution::CorrelatedUniform(2, config.rho_list[k % 3]));
    EXPECT_NEAR(std::stod(cols[2]), mi, 1e-12);
    EXPECT_EQ(row.mi_bits, mi);
    EXPECT_EQ(cols[9], "5");
    ++k;
  }
  EXPECT_EQ(k, rows.size());
}

TEST(Sweep, ByteIdenticalAcrossRunsAndThreadCounts) {
  const auto config = SmallGrid();
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const std::string one = FormatSweepCsv(RunSweep(config));
  omp_set_num_threads(4);
  const std::string four = FormatSweepCsv(RunSweep(config));
  const std::string again = FormatSweepCsv(RunSweep(config));
  omp_set_num_threads(saved);
  EXPECT_EQ(one, four);
  EXPECT_EQ(four, again);
}

TEST(Sweep, ChanceLevelAndLowEmptyRateAtAutoEpsilon) {
  const auto config = ParseSweepConfig(
      "n_list=7,8\nrho_list=0,0.25,0.5,0.75,1\ntrials=40\nseed=11\n");
  for (const auto& row : RunSweep(config)) {
    EXPECT_LE(row.empty_sigma_rate, 0.05) << "n=" << row.n << " rho=" << row.rho;
    if (row.rho == 0.0) EXPECT_LE(row.mean_correct_fraction, 0.3);
  }
}

TEST(Sweep, GuardSurfaces) {
  const auto config = ParseSweepConfig("n_list=11\nrho_list=0\ntrials=2\n");
  EXPECT_THROW(RunSweep(config), GuardExceeded);
}

}  // namespace
}  // namespace typmatch
