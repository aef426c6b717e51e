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

#ifndef TYPMATCH_GRAPH_H_
#define TYPMATCH_GRAPH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "typmatch/distribution.h"
#include "typmatch/permutation.h"

namespace typmatch {

// Number of unordered vertex pairs, n(n-1)/2.
constexpr std::size_t PairCount(int n) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

// Offset of the pair {i, j} (1-based, i != j) in the row-major upper
// triangle (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n).
constexpr std::size_t PairIndex(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  const auto a = static_cast<std::size_t>(i - 1);
  return a * (2 * static_cast<std::size_t>(n) - a - 1) / 2 +
         static_cast<std::size_t>(j - i - 1);
}

// Undirected marked graph without self-loops, stored as its upper triangle.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  // Throws FormatError if ut has the wrong length or a value >= l.
  LabeledGraph(int n, int l, std::vector<Symbol> ut);

  int n() const { return n_; }
  int l() const { return l_; }
  std::span<const Symbol> ut() const { return ut_; }
  // Value on the edge {a, b}, 1-based, a != b.
  Symbol value(int a, int b) const { return ut_[PairIndex(n_, a, b)]; }

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  int n_ = 0;
  int l_ = 2;
  std::vector<Symbol> ut_;
};

// h with h.value(rho(i), rho(j)) = g.value(i, j) for all i < j.
LabeledGraph Relabel(const LabeledGraph& g, const Permutation& rho);

// Correlated pair on a shared, identically labeled vertex set: each vertex
// pair independently receives (x1, x2) ~ p, drawn in row-major pair order.
std::pair<LabeledGraph, LabeledGraph> GenerateCmer(
    const JointEdgeDistribution& p, int n, std::uint64_t seed);

struct Anonymized {
  LabeledGraph graph;  // Relabel(input, rho)
  Permutation rho;
};

// Relabels g by a uniform random rho. Relabel(graph, Invert(rho)) recovers g.
Anonymized Anonymize(const LabeledGraph& g, std::uint64_t seed);
// Same, with a caller-chosen rho (lets tests force e.g. the identity).
Anonymized AnonymizeWith(const LabeledGraph& g, const Permutation& rho);

// A de-anonymization problem with its ground truth.
struct CmperInstance {
  LabeledGraph g1;
  LabeledGraph g2_anon;
  // Relabel(g2_anon, secret) is the partner of g1 in g1's vertex order.
  Permutation secret;
  JointEdgeDistribution dist;

  // Throws std::invalid_argument if sizes or alphabets disagree.
  void Validate() const;
};

// GenerateCmer followed by Anonymize, with sub-seeds derived from `seed`.
CmperInstance MakeCmperInstance(const JointEdgeDistribution& p, int n,
                                std::uint64_t seed);

// Graph file: line 1 "n l", line 2 the n(n-1)/2 upper-triangle values.
LabeledGraph ParseGraph(std::string_view text);
std::string FormatGraph(const LabeledGraph& g);

}  // namespace typmatch

#endif  // TYPMATCH_GRAPH_H_
