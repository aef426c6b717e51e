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

#include "typmatch/matcher.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "typmatch/errors.h"
#include "typmatch/rng.h"
#include "typmatch/typicality.h"

namespace typmatch {

double AutoEpsilon(int n) {
  const double pairs = std::max(2.0, static_cast<double>(PairCount(n)));
  return 4.0 * std::log(pairs) / pairs;
}

EpsilonMode EpsilonMode::Fixed(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(fmt::format("epsilon must be > 0, got {}", value));
  }
  EpsilonMode mode;
  mode.fixed_ = value;
  return mode;
}

EpsilonMode EpsilonMode::Parse(std::string_view text) {
  if (text == "auto") return Auto();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(
        fmt::format("epsilon must be 'auto' or a number, got '{}'", text));
  }
  return Fixed(v);
}

bool CandidateSet::contains(const Permutation& sigma) const {
  return sigma.size() == n_ &&
         std::binary_search(ranks_.begin(), ranks_.end(), LexRank(sigma));
}

namespace {

// Dense symmetric 0-based adjacency values; the diagonal is unused.
std::vector<Symbol> DenseValues(const LabeledGraph& g) {
  const int n = g.n();
  std::vector<Symbol> m(static_cast<std::size_t>(n) * n, 0);
  std::size_t k = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b, ++k) {
      m[a * n + b] = g.ut()[k];
      m[b * n + a] = g.ut()[k];
    }
  }
  return m;
}

// Splits S_n (lexicographic order) into fixed blocks and calls
// visit(block, tau) for every permutation, tau given 0-based. Blocks are
// distributed over threads; the block layout does not depend on the thread
// count.
template <typename Visit>
void ForEachPermutationBlocked(int n, std::size_t blocks, Visit&& visit) {
  const std::uint64_t total = Factorial(n);
  blocks = static_cast<std::size_t>(
      std::min<std::uint64_t>(blocks, total));
  const auto block_count = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < block_count; ++b) {
    const std::uint64_t begin = total / blocks * b + std::min<std::uint64_t>(b, total % blocks);
    const std::uint64_t end =
        begin + total / blocks + (static_cast<std::uint64_t>(b) < total % blocks ? 1 : 0);
    const Permutation first = FromLexRank(n, begin);
    std::vector<int> tau(n);
    for (int i = 0; i < n; ++i) tau[i] = first(i + 1) - 1;
    for (std::uint64_t r = begin; r < end; ++r) {
      visit(static_cast<std::size_t>(b), tau);
      std::next_permutation(tau.begin(), tau.end());
    }
  }
}

constexpr std::size_t kSearchBlocks = 720;

Permutation FromZeroBased(const std::vector<int>& v) {
  std::vector<int> images(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) images[i] = v[i] + 1;
  return Permutation::FromImages(std::move(images));
}

}  // namespace

CandidateSet CandidateSetExhaustive(const CmperInstance& inst, double epsilon,
                                    int max_n) {
  inst.Validate();
  const int n = inst.g1.n();
  if (n > max_n) {
    throw GuardExceeded(fmt::format(
        "exhaustive search over {}! labelings exceeds the guard n <= {}", n, max_n));
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument(fmt::format("epsilon must be > 0, got {}", epsilon));
  }
  const int l = inst.dist.l();
  const std::vector<Symbol> g1 = DenseValues(inst.g1);
  const std::vector<Symbol> g2 = DenseValues(inst.g2_anon);
  const TypicalCountTable table(inst.dist, PairCount(n), epsilon);

  std::vector<std::vector<std::uint64_t>> found(kSearchBlocks);
  std::vector<std::vector<std::uint64_t>> scratch_counts(kSearchBlocks);
  ForEachPermutationBlocked(n, kSearchBlocks, [&](std::size_t block,
                                                  const std::vector<int>& tau) {
    auto& counts = scratch_counts[block];
    counts.assign(static_cast<std::size_t>(l) * l, 0);
    // tau = sigma^{-1}: g1 position a is matched with anonymized vertex tau[a].
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        ++counts[g1[a * n + b] * l + g2[tau[a] * n + tau[b]]];
      }
    }
    if (!table.Typical(counts)) return;
    std::vector<int> sigma(n);
    for (int a = 0; a < n; ++a) sigma[tau[a]] = a;
    found[block].push_back(LexRank(FromZeroBased(sigma)));
  });

  std::vector<std::uint64_t> ranks;
  for (const auto& f : found) ranks.insert(ranks.end(), f.begin(), f.end());
  std::sort(ranks.begin(), ranks.end());
  return CandidateSet(n, std::move(ranks));
}

double TypicalityScore(const LabeledGraph& g1, const LabeledGraph& g2,
                       const Permutation& sigma, const JointEdgeDistribution& p) {
  const LabeledGraph aligned = Relabel(g2, sigma);
  return Typicality(ComputeJointType(g1.ut(), aligned.ut(), p.l()), p, 1.0)
      .max_deviation;
}

void ScoreAgainstTruth(const Permutation& secret, MatchResult& result) {
  const int n = secret.size();
  if (result.chosen.size() != n) {
    result.correct_fraction = 0.0;
    result.mismatch_count = n;
    return;
  }
  result.mismatch_count = LabelingMismatch(result.chosen, secret);
  result.correct_fraction =
      static_cast<double>(FixedPointCount(Compose(result.chosen, Invert(secret)))) / n;
}

MatchResult Match(const CmperInstance& inst, const MatchConfig& config) {
  if (config.search == SearchMode::kGreedy) return MatchGreedy(inst, config);
  if (config.max_exhaustive_n < 2) {
    throw std::invalid_argument("max_exhaustive_n must be >= 2");
  }
  const auto start = std::chrono::steady_clock::now();
  MatchResult result;
  result.epsilon = config.epsilon.Resolve(inst.g1.n());
  const CandidateSet candidates =
      CandidateSetExhaustive(inst, result.epsilon, config.max_exhaustive_n);
  result.candidate_count = candidates.size();
  if (candidates.empty()) {
    result.outcome = MatchOutcome::kNoTypicalLabeling;
  } else {
    Rng rng(DeriveSeed(config.seed, {kStreamMatchPick}));
    result.chosen = candidates.at(rng.Below(candidates.size()));
    result.max_deviation_at_chosen =
        TypicalityScore(inst.g1, inst.g2_anon, result.chosen, inst.dist);
  }
  ScoreAgainstTruth(inst.secret, result);
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

namespace {

struct GreedyObjective {
  double max_dev = 0.0;
  double sum_dev = 0.0;
  bool operator<(const GreedyObjective& o) const {
    return max_dev < o.max_dev || (max_dev == o.max_dev && sum_dev < o.sum_dev);
  }
};

GreedyObjective Evaluate(const std::vector<std::int64_t>& counts,
                         const std::vector<double>& cells, std::size_t pairs) {
  GreedyObjective obj;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    const double d = CellDeviation(static_cast<std::uint64_t>(counts[c]), pairs, cells[c]);
    obj.max_dev = std::max(obj.max_dev, d);
    obj.sum_dev += d;
  }
  return obj;
}

struct GreedyRun {
  std::vector<int> pos;  // anonymized vertex u sits at g1 position pos[u]
  GreedyObjective objective;
};

GreedyRun HillClimb(std::vector<int> pos, const std::vector<Symbol>& g1,
                    const std::vector<Symbol>& g2, int n, int l,
                    const std::vector<double>& cells, int max_passes) {
  const std::size_t pairs = PairCount(n);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(l) * l, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      ++counts[g1[pos[u] * n + pos[v]] * l + g2[u * n + v]];
    }
  }
  GreedyObjective current = Evaluate(counts, cells, pairs);
  std::vector<std::int64_t> trial(counts.size());
  for (int pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        trial = counts;
        const int pu = pos[u];
        const int pv = pos[v];
        for (int w = 0; w < n; ++w) {
          if (w == u || w == v) continue;
          const int pw = pos[w];
          const int eu = g2[u * n + w];
          const int ev = g2[v * n + w];
          --trial[g1[pu * n + pw] * l + eu];
          ++trial[g1[pv * n + pw] * l + eu];
          --trial[g1[pv * n + pw] * l + ev];
          ++trial[g1[pu * n + pw] * l + ev];
        }
        const GreedyObjective candidate = Evaluate(trial, cells, pairs);
        if (candidate < current) {
          std::swap(pos[u], pos[v]);
          counts.swap(trial);
          current = candidate;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  return {std::move(pos), current};
}

// Pairs vertices by rank of a degree-like signature: g1 vertices by the sum
// of their incident values, anonymized vertices by the sum of E[X1 | X2 = b]
// over their incident values b. Ties are broken at random.
std::vector<int> SignatureStart(const std::vector<Symbol>& g1,
                                const std::vector<Symbol>& g2, int n,
                                const JointEdgeDistribution& p,
                                std::uint64_t seed) {
  const int l = p.l();
  std::vector<double> expect(l, 0.0);
  for (int b = 0; b < l; ++b) {
    double mass = 0.0;
    for (int a = 0; a < l; ++a) {
      expect[b] += a * p(a, b);
      mass += p(a, b);
    }
    if (mass > 0.0) expect[b] /= mass;
  }
  Rng rng(seed);
  auto ranked = [&](auto signature) {
    std::vector<std::pair<double, std::uint64_t>> key(n);
    for (int u = 0; u < n; ++u) {
      double sum = 0.0;
      for (int w = 0; w < n; ++w) {
        if (w != u) sum += signature(u * n + w);
      }
      key[u] = {sum, rng.NextU64()};
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return key[a] < key[b]; });
    return order;
  };
  const auto by1 = ranked([&](int k) { return static_cast<double>(g1[k]); });
  const auto by2 = ranked([&](int k) { return expect[g2[k]]; });
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[by2[k]] = by1[k];
  return pos;
}

}  // namespace

MatchResult MatchGreedy(const CmperInstance& inst, const MatchConfig& config) {
  inst.Validate();
  if (config.restarts < 1 || config.max_passes < 1) {
    throw std::invalid_argument("greedy search needs restarts >= 1 and max_passes >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  const int n = inst.g1.n();
  const int l = inst.dist.l();
  const std::vector<Symbol> g1 = DenseValues(inst.g1);
  const std::vector<Symbol> g2 = DenseValues(inst.g2_anon);
  const std::vector<double>& cells = inst.dist.cells();
  if (config.greedy_start && config.greedy_start->size() != n) {
    throw std::invalid_argument("greedy start has the wrong size");
  }

  std::vector<GreedyRun> runs(config.restarts);
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < config.restarts; ++r) {
    const std::uint64_t run_seed =
        DeriveSeed(config.seed, {kStreamGreedy, static_cast<std::uint64_t>(r)});
    std::vector<int> pos(n);
    if (r == 0 && config.greedy_start) {
      for (int u = 0; u < n; ++u) pos[u] = (*config.greedy_start)(u + 1) - 1;
    } else if (r % 2 == 0) {
      pos = SignatureStart(g1, g2, n, inst.dist, run_seed);
    } else {
      const Permutation init = RandomPermutation(n, run_seed);
      for (int u = 0; u < n; ++u) pos[u] = init(u + 1) - 1;
    }
    runs[r] = HillClimb(std::move(pos), g1, g2, n, l, cells, config.max_passes);
  }
  MatchResult result;
  result.heuristic = true;
  result.epsilon = config.epsilon.Resolve(n);
  std::size_t best = 0;
  std::vector<Permutation> typical;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const Permutation sigma = FromZeroBased(runs[r].pos);
    if (r > 0) {
      const auto& a = runs[r].objective;
      const auto& b = runs[best].objective;
      if (a < b || (!(b < a) && sigma < FromZeroBased(runs[best].pos))) best = r;
    }
    if (WithinEpsilon(runs[r].objective.max_dev, result.epsilon)) typical.push_back(sigma);
  }
  std::sort(typical.begin(), typical.end());
  result.candidate_count = static_cast<std::uint64_t>(
      std::unique(typical.begin(), typical.end()) - typical.begin());
  result.chosen = FromZeroBased(runs[best].pos);
  result.max_deviation_at_chosen =
      TypicalityScore(inst.g1, inst.g2_anon, result.chosen, inst.dist);
  ScoreAgainstTruth(inst.secret, result);
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

std::uint64_t CountAutomorphisms(const LabeledGraph& g, int max_n) {
  const int n = g.n();
  if (n > max_n) {
    throw GuardExceeded(fmt::format(
        "automorphism enumeration over {}! permutations exceeds the guard n <= {}",
        n, max_n));
  }
  const std::vector<Symbol> m = DenseValues(g);
  std::vector<std::uint64_t> per_block(kSearchBlocks, 0);
  ForEachPermutationBlocked(n, kSearchBlocks, [&](std::size_t block,
                                                  const std::vector<int>& tau) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (m[a * n + b] != m[tau[a] * n + tau[b]]) return;
      }
    }
    ++per_block[block];
  });
  return std::accumulate(per_block.begin(), per_block.end(), std::uint64_t{0});
}

}  // namespace typmatch
