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

#include "typmatch/distribution.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "typmatch/errors.h"
#include "typmatch/rng.h"

namespace typmatch {

JointEdgeDistribution::JointEdgeDistribution(int l, std::vector<double> p)
    : l_(l), p_(std::move(p)), m1_(l, 0.0), m2_(l, 0.0) {
  for (int x1 = 0; x1 < l_; ++x1) {
    for (int x2 = 0; x2 < l_; ++x2) {
      m1_[x1] += p_[x1 * l_ + x2];
      m2_[x2] += p_[x1 * l_ + x2];
    }
  }
}

JointEdgeDistribution JointEdgeDistribution::FromMatrix(int l,
                                                        std::vector<double> p,
                                                        double tolerance) {
  if (l < 2 || l > kMaxAlphabet) {
    throw FormatError(fmt::format("alphabet size must be in [2, {}], got {}",
                                  kMaxAlphabet, l));
  }
  if (p.size() != static_cast<std::size_t>(l) * l) {
    throw FormatError(fmt::format("expected {} probabilities, got {}", l * l,
                                  p.size()));
  }
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw FormatError(fmt::format("invalid probability {}", v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw FormatError(fmt::format(
        "probabilities sum to {:.17g}, which deviates from 1 by more than {}",
        sum, tolerance));
  }
  return JointEdgeDistribution(l, std::move(p));
}

JointEdgeDistribution JointEdgeDistribution::CorrelatedUniform(int l,
                                                               double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw FormatError(fmt::format("rho must be in [0, 1], got {}", rho));
  }
  const double off = (1.0 - rho) / (static_cast<double>(l) * l);
  std::vector<double> p(static_cast<std::size_t>(l) * l, off);
  for (int x = 0; x < l; ++x) p[x * l + x] = rho / l + off;
  return FromMatrix(l, std::move(p));
}

std::string JointEdgeDistribution::SmallCellWarning() const {
  const auto it = std::min_element(p_.begin(), p_.end());
  if (*it >= kSmallCell) return {};
  const auto idx = static_cast<int>(it - p_.begin());
  return fmt::format(
      "cell ({}, {}) has probability {:.3g} < {:g}; the distribution is not "
      "bounded away from zero",
      idx / l_, idx % l_, *it, kSmallCell);
}

namespace {

double ParseDouble(std::string_view token) {
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(fmt::format("not a number: '{}'", token));
  }
  return v;
}

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> NonEmptyLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!Tokens(line).empty()) lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace

JointEdgeDistribution LoadDistribution(std::string_view text) {
  const auto lines = NonEmptyLines(text);
  if (lines.empty()) throw FormatError("empty distribution file");
  const auto header = Tokens(lines[0]);
  if (header.size() != 1) {
    throw FormatError("first line must hold the alphabet size l");
  }
  int l = 0;
  {
    const auto [ptr, ec] = std::from_chars(
        header[0].data(), header[0].data() + header[0].size(), l);
    if (ec != std::errc() || ptr != header[0].data() + header[0].size()) {
      throw FormatError(
          fmt::format("alphabet size is not an integer: '{}'", header[0]));
    }
  }
  if (l < 2 || l > kMaxAlphabet) {
    throw FormatError(fmt::format("alphabet size must be in [2, {}], got {}",
                                  kMaxAlphabet, l));
  }
  if (lines.size() - 1 != static_cast<std::size_t>(l)) {
    throw FormatError(
        fmt::format("expected {} rows, got {}", l, lines.size() - 1));
  }
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(l) * l);
  for (int row = 0; row < l; ++row) {
    const auto tokens = Tokens(lines[row + 1]);
    if (tokens.size() != static_cast<std::size_t>(l)) {
      throw FormatError(fmt::format("row {} has {} entries, expected {}", row,
                                    tokens.size(), l));
    }
    for (auto t : tokens) p.push_back(ParseDouble(t));
  }
  return JointEdgeDistribution::FromMatrix(
      l, std::move(p), JointEdgeDistribution::kLoadTolerance);
}

std::string FormatDistribution(const JointEdgeDistribution& p) {
  std::string out = fmt::format("{}\n", p.l());
  for (int x1 = 0; x1 < p.l(); ++x1) {
    for (int x2 = 0; x2 < p.l(); ++x2) {
      out += fmt::format("{}{:.17g}", x2 ? " " : "", p(x1, x2));
    }
    out += '\n';
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> Marginals(
    const JointEdgeDistribution& p) {
  return {p.marginal1(), p.marginal2()};
}

double MutualInformation(const JointEdgeDistribution& p, LogBase base) {
  double mi = 0.0;
  for (int x1 = 0; x1 < p.l(); ++x1) {
    for (int x2 = 0; x2 < p.l(); ++x2) {
      const double pxy = p(x1, x2);
      if (pxy <= 0.0) continue;
      mi += pxy * std::log(pxy / (p.marginal1()[x1] * p.marginal2()[x2]));
    }
  }
  // Rounding can leave a tiny negative value for product distributions.
  mi = std::max(mi, 0.0);
  return base == LogBase::kTwo ? mi / std::log(2.0) : mi;
}

PairSampler::PairSampler(const JointEdgeDistribution& p)
    : l_(p.l()), cumulative_(p.cells().size()) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p.cells().size(); ++k) {
    acc += p.cells()[k];
    cumulative_[k] = acc;
    if (p.cells()[k] > 0.0) last_positive_ = static_cast<int>(k);
  }
}

int PairSampler::CellFor(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return last_positive_;
  return static_cast<int>(it - cumulative_.begin());
}

std::vector<SymbolPair> SamplePairs(const JointEdgeDistribution& p,
                                    std::size_t count, std::uint64_t seed) {
  const PairSampler sampler(p);
  Rng rng(seed);
  std::vector<SymbolPair> out(count);
  for (auto& pair : out) {
    const int cell = sampler.CellFor(rng.Uniform01());
    pair = {static_cast<Symbol>(cell / p.l()), static_cast<Symbol>(cell % p.l())};
  }
  return out;
}

}  // namespace typmatch
