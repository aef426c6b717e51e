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

#include "typmatch/reference.h"

#include <algorithm>
#include <numeric>

#include "typmatch/rng.h"

namespace typmatch::reference {

double ExactPermTypicalityProb(const JointEdgeDistribution& p, int n,
                               const Permutation& pi, double epsilon) {
  const int l = p.l();
  std::uint64_t per_sequence = 1;
  for (int i = 0; i < n; ++i) per_sequence *= static_cast<std::uint64_t>(l);
  auto decode = [&](std::uint64_t s) {
    std::vector<Symbol> seq(n);
    for (int i = 0; i < n; ++i, s /= l) seq[i] = static_cast<Symbol>(s % l);
    return seq;
  };
  double total = 0.0;
  for (std::uint64_t xs = 0; xs < per_sequence; ++xs) {
    const std::vector<Symbol> x = decode(xs);
    for (std::uint64_t ys = 0; ys < per_sequence; ++ys) {
      const std::vector<Symbol> y = decode(ys);
      double weight = 1.0;
      for (int i = 0; i < n; ++i) weight *= p(x[i], y[i]);
      if (weight == 0.0) continue;
      const std::vector<Symbol> z = Apply<Symbol>(pi, y);
      if (CheckTypical(x, z, p, epsilon).typical) total += weight;
    }
  }
  return total;
}

McEstimate McPermTypicalityProb(const JointEdgeDistribution& p, int n,
                                const Permutation& pi, double epsilon,
                                std::uint64_t trials, std::uint64_t seed) {
  std::uint64_t successes = 0;
  for (std::uint64_t k = 0; k < trials; ++k) {
    const auto pairs = SamplePairs(p, static_cast<std::size_t>(n),
                                   DeriveSeed(seed, {kStreamMonteCarlo, k}));
    std::vector<Symbol> x(n);
    std::vector<Symbol> y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = pairs[i].x1;
      y[i] = pairs[i].x2;
    }
    const std::vector<Symbol> z = Apply<Symbol>(pi, y);
    successes += CheckTypical(x, z, p, epsilon).typical ? 1 : 0;
  }
  McEstimate out;
  out.successes = successes;
  out.trials = trials;
  out.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  out.ci = ClopperPearson(successes, trials);
  return out;
}

CandidateSet CandidateSetExhaustive(const CmperInstance& inst, double epsilon) {
  const int n = inst.g1.n();
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<std::uint64_t> ranks;
  do {
    const Permutation sigma = Permutation::FromImages(images);
    const LabeledGraph aligned = Relabel(inst.g2_anon, sigma);
    if (CheckTypical(inst.g1.ut(), aligned.ut(), inst.dist, epsilon).typical) {
      ranks.push_back(LexRank(sigma));
    }
  } while (std::next_permutation(images.begin(), images.end()));
  return CandidateSet(n, std::move(ranks));
}

}  // namespace typmatch::reference
