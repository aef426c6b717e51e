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

#ifndef TYPMATCH_DISTRIBUTION_H_
#define TYPMATCH_DISTRIBUTION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace typmatch {

// Edge values live in [0, l-1]; 0 plays the role of "no edge".
using Symbol = std::uint8_t;
inline constexpr int kMaxAlphabet = 256;

enum class LogBase { kTwo, kE };

struct SymbolPair {
  Symbol x1 = 0;
  Symbol x2 = 0;
  friend bool operator==(const SymbolPair&, const SymbolPair&) = default;
};

// Joint law P(x1, x2) of corresponding edge values in a correlated pair of
// graphs, over the alphabet [0, l-1]^2. Immutable once built.
class JointEdgeDistribution {
 public:
  // Tolerance on |sum - 1| for distributions built in memory.
  static constexpr double kInternalTolerance = 1e-12;
  // Tolerance on |sum - 1| for distributions parsed from decimal text.
  static constexpr double kLoadTolerance = 1e-9;
  // Cells below this are reported by SmallCellWarning().
  static constexpr double kSmallCell = 1e-6;

  // Validates and wraps a row-major l*l probability matrix. Throws
  // FormatError on l < 2, l > kMaxAlphabet, wrong size, negative or
  // non-finite entries, or a sum outside 1 +- tolerance. Never renormalizes.
  static JointEdgeDistribution FromMatrix(
      int l, std::vector<double> p, double tolerance = kInternalTolerance);

  // rho * diag(1/l) + (1 - rho) * uniform product, rho in [0, 1].
  static JointEdgeDistribution CorrelatedUniform(int l, double rho);

  int l() const { return l_; }
  double operator()(int x1, int x2) const { return p_[x1 * l_ + x2]; }
  // Row-major cells, index x1 * l + x2.
  const std::vector<double>& cells() const { return p_; }

  // Row sums (law of X1) and column sums (law of X2).
  const std::vector<double>& marginal1() const { return m1_; }
  const std::vector<double>& marginal2() const { return m2_; }

  // Non-empty when some cell is positive but below kSmallCell, or zero; the
  // achievability analysis assumes all cells are bounded away from zero.
  std::string SmallCellWarning() const;

  friend bool operator==(const JointEdgeDistribution& a,
                         const JointEdgeDistribution& b) {
    return a.l_ == b.l_ && a.p_ == b.p_;
  }

 private:
  JointEdgeDistribution(int l, std::vector<double> p);

  int l_;
  std::vector<double> p_;
  std::vector<double> m1_;
  std::vector<double> m2_;
};

// Parses the distribution file format:
//   line 1: l
//   lines 2..l+1: l whitespace-separated decimal probabilities (row x1).
// Decimal values are converted to the nearest double.
JointEdgeDistribution LoadDistribution(std::string_view text);
std::string FormatDistribution(const JointEdgeDistribution& p);

std::pair<std::vector<double>, std::vector<double>> Marginals(
    const JointEdgeDistribution& p);

// I(X1; X2) in bits or nats. Zero cells contribute nothing.
double MutualInformation(const JointEdgeDistribution& p,
                         LogBase base = LogBase::kTwo);

// `count` i.i.d. draws from p, deterministic in `seed`.
std::vector<SymbolPair> SamplePairs(const JointEdgeDistribution& p,
                                    std::size_t count, std::uint64_t seed);

// Inverse-CDF sampler over the flattened cells. Zero cells are never drawn.
class PairSampler {
 public:
  explicit PairSampler(const JointEdgeDistribution& p);
  // Maps u in [0, 1) to a flattened cell index.
  int CellFor(double u) const;
  int l() const { return l_; }

 private:
  int l_;
  std::vector<double> cumulative_;
  int last_positive_ = 0;
};

}  // namespace typmatch

#endif  // TYPMATCH_DISTRIBUTION_H_
