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

#ifndef TYPMATCH_MATCHER_H_
#define TYPMATCH_MATCHER_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "typmatch/graph.h"
#include "typmatch/permutation.h"

namespace typmatch {

// Tolerance used when none is given: 4 ln(N) / N for the N = n(n-1)/2
// upper-triangle entries (N is floored at 2 so that n = 2 stays positive).
double AutoEpsilon(int n);

class EpsilonMode {
 public:
  static EpsilonMode Auto() { return EpsilonMode(); }
  // Throws std::invalid_argument unless value > 0.
  static EpsilonMode Fixed(double value);
  // Parses "auto" or a positive decimal.
  static EpsilonMode Parse(std::string_view text);

  bool is_auto() const { return !fixed_.has_value(); }
  double Resolve(int n) const { return fixed_ ? *fixed_ : AutoEpsilon(n); }

 private:
  std::optional<double> fixed_;
};

enum class SearchMode { kExhaustive, kGreedy };

struct MatchConfig {
  EpsilonMode epsilon = EpsilonMode::Auto();
  SearchMode search = SearchMode::kExhaustive;
  int max_exhaustive_n = 10;
  std::uint64_t seed = 0;
  // Greedy mode only.
  int restarts = 32;
  int max_passes = 50;
  // If set, the first greedy restart starts here instead of at random.
  std::optional<Permutation> greedy_start;
};

// Labelings sigma of the anonymized graph, kept as sorted lexicographic
// ranks so that the content and its order never depend on how the search
// was split across threads.
class CandidateSet {
 public:
  CandidateSet(int n, std::vector<std::uint64_t> sorted_ranks)
      : n_(n), ranks_(std::move(sorted_ranks)) {}

  int n() const { return n_; }
  std::size_t size() const { return ranks_.size(); }
  bool empty() const { return ranks_.empty(); }
  // The i-th labeling in lexicographic order.
  Permutation at(std::size_t i) const { return FromLexRank(n_, ranks_[i]); }
  bool contains(const Permutation& sigma) const;
  const std::vector<std::uint64_t>& ranks() const { return ranks_; }

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> ranks_;
};

// All sigma in S_n with (g1.ut, Relabel(g2_anon, sigma).ut) epsilon-typical
// for inst.dist. Searches lexicographic blocks of S_n in parallel. Throws
// GuardExceeded if n > max_n.
CandidateSet CandidateSetExhaustive(const CmperInstance& inst, double epsilon,
                                    int max_n = 10);

// Max-cell deviation of the joint type of (g1.ut, Relabel(g2, sigma).ut)
// from p. WithinEpsilon(score, epsilon) exactly when sigma is in the
// candidate set.
double TypicalityScore(const LabeledGraph& g1, const LabeledGraph& g2,
                       const Permutation& sigma, const JointEdgeDistribution& p);

enum class MatchOutcome {
  kMatched,
  // Exhaustive search found no labeling within epsilon. Not a failure of the
  // search; the caller decides how to score it.
  kNoTypicalLabeling,
};

struct MatchResult {
  MatchOutcome outcome = MatchOutcome::kMatched;
  Permutation chosen;
  // Exhaustive: |candidate set|. Greedy: number of distinct typical
  // labelings among the restart end points.
  std::uint64_t candidate_count = 0;
  // Fraction of vertices whose label agrees with the ground truth.
  double correct_fraction = 0.0;
  int mismatch_count = 0;
  double max_deviation_at_chosen = 0.0;
  double epsilon = 0.0;
  // Set for greedy results: local search, not the exhaustive typicality rule.
  bool heuristic = false;
  std::chrono::nanoseconds elapsed{0};
};

// Exhaustive mode returns a uniformly drawn member of the candidate set
// (draw taken from DeriveSeed(seed, {kStreamMatchPick})); greedy mode
// delegates to MatchGreedy. Throws GuardExceeded for exhaustive search past
// max_exhaustive_n.
MatchResult Match(const CmperInstance& inst, const MatchConfig& config);

// Multi-restart hill climbing over label transpositions, minimizing
// (TypicalityScore, sum of cell deviations). Restart r draws from
// DeriveSeed(seed, {kStreamGreedy, r}): odd restarts start at a uniform
// random labeling, even ones at a degree-signature alignment with random tie
// breaking. Restarts run in parallel and the best end point wins, ties
// broken by lexicographic order.
MatchResult MatchGreedy(const CmperInstance& inst, const MatchConfig& config);

// Fills correct_fraction and mismatch_count of `result` against `secret`.
void ScoreAgainstTruth(const Permutation& secret, MatchResult& result);

// Number of automorphisms of g (including the identity), by enumeration.
// Throws GuardExceeded if n > max_n.
std::uint64_t CountAutomorphisms(const LabeledGraph& g, int max_n = 10);

}  // namespace typmatch

#endif  // TYPMATCH_MATCHER_H_
