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

#include "typmatch/graph.h"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "typmatch/errors.h"
#include "typmatch/rng.h"

namespace typmatch {

LabeledGraph::LabeledGraph(int n, int l, std::vector<Symbol> ut)
    : n_(n), l_(l), ut_(std::move(ut)) {
  if (n < 2) throw FormatError(fmt::format("graph needs n >= 2, got {}", n));
  if (l < 2 || l > kMaxAlphabet) {
    throw FormatError(fmt::format("alphabet size must be in [2, {}], got {}",
                                  kMaxAlphabet, l));
  }
  if (ut_.size() != PairCount(n)) {
    throw FormatError(
        fmt::format("expected {} values, got {}", PairCount(n), ut_.size()));
  }
  for (Symbol v : ut_) {
    if (v >= l) {
      throw FormatError(
          fmt::format("edge value {} outside [0, {}]", int{v}, l - 1));
    }
  }
}

LabeledGraph Relabel(const LabeledGraph& g, const Permutation& rho) {
  if (rho.size() != g.n()) {
    throw std::invalid_argument(fmt::format(
        "relabeling of size {} applied to a graph on {} vertices", rho.size(),
        g.n()));
  }
  const int n = g.n();
  std::vector<Symbol> ut(g.ut().size());
  std::size_t k = 0;
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j, ++k) {
      ut[PairIndex(n, rho(i), rho(j))] = g.ut()[k];
    }
  }
  return LabeledGraph(n, g.l(), std::move(ut));
}

std::pair<LabeledGraph, LabeledGraph> GenerateCmer(
    const JointEdgeDistribution& p, int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("GenerateCmer needs n >= 2");
  const PairSampler sampler(p);
  Rng rng(seed);
  std::vector<Symbol> ut1(PairCount(n));
  std::vector<Symbol> ut2(PairCount(n));
  for (std::size_t k = 0; k < ut1.size(); ++k) {
    const int cell = sampler.CellFor(rng.Uniform01());
    ut1[k] = static_cast<Symbol>(cell / p.l());
    ut2[k] = static_cast<Symbol>(cell % p.l());
  }
  return {LabeledGraph(n, p.l(), std::move(ut1)),
          LabeledGraph(n, p.l(), std::move(ut2))};
}

Anonymized Anonymize(const LabeledGraph& g, std::uint64_t seed) {
  return AnonymizeWith(g, RandomPermutation(g.n(), seed));
}

Anonymized AnonymizeWith(const LabeledGraph& g, const Permutation& rho) {
  return {Relabel(g, rho), rho};
}

void CmperInstance::Validate() const {
  if (g1.n() != g2_anon.n() || g1.n() != secret.size()) {
    throw std::invalid_argument("instance sizes disagree");
  }
  if (g1.l() != g2_anon.l() || g1.l() != dist.l()) {
    throw std::invalid_argument("instance alphabets disagree");
  }
}

CmperInstance MakeCmperInstance(const JointEdgeDistribution& p, int n,
                                std::uint64_t seed) {
  auto [g1, g2] = GenerateCmer(p, n, DeriveSeed(seed, {kStreamGenerate}));
  auto anon = Anonymize(g2, DeriveSeed(seed, {kStreamAnonymize}));
  return {std::move(g1), std::move(anon.graph), Invert(anon.rho), p};
}

namespace {

int ParseInt(const std::string& token) {
  int v = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(fmt::format("not an integer: '{}'", token));
  }
  return v;
}

}  // namespace

LabeledGraph ParseGraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) throw FormatError("empty graph file");
  std::istringstream hin(header);
  std::string tn, tl, extra;
  if (!(hin >> tn >> tl) || (hin >> extra)) {
    throw FormatError("graph header must be \"n l\"");
  }
  const int n = ParseInt(tn);
  const int l = ParseInt(tl);
  if (n < 2) throw FormatError(fmt::format("graph needs n >= 2, got {}", n));
  if (l < 2 || l > kMaxAlphabet) {
    throw FormatError(fmt::format("alphabet size must be in [2, {}], got {}",
                                  kMaxAlphabet, l));
  }
  std::vector<Symbol> ut;
  std::string token;
  while (in >> token) {
    const int v = ParseInt(token);
    if (v < 0 || v >= l) {
      throw FormatError(fmt::format("edge value {} outside [0, {}]", v, l - 1));
    }
    ut.push_back(static_cast<Symbol>(v));
  }
  return LabeledGraph(n, l, std::move(ut));
}

std::string FormatGraph(const LabeledGraph& g) {
  std::string out = fmt::format("{} {}\n", g.n(), g.l());
  for (std::size_t k = 0; k < g.ut().size(); ++k) {
    out += fmt::format("{}{}", k ? " " : "", int{g.ut()[k]});
  }
  out += '\n';
  return out;
}

}  // namespace typmatch
