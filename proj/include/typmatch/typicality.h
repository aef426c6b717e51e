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

#ifndef TYPMATCH_TYPICALITY_H_
#define TYPMATCH_TYPICALITY_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "typmatch/distribution.h"
#include "typmatch/permutation.h"

namespace typmatch {

// Occurrence counts N(a, b | x, y) over an l x l alphabet.
struct JointType {
  int l = 2;
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;  // row-major, index a * l + b

  std::uint64_t operator()(int a, int b) const { return counts[a * l + b]; }
  friend bool operator==(const JointType&, const JointType&) = default;
};

// Throws std::invalid_argument on length mismatch or empty input, and
// FormatError on a symbol >= l.
JointType ComputeJointType(std::span<const Symbol> x, std::span<const Symbol> y,
                           int l);

// |count / n - p|. Every typicality decision in the library goes through
// this expression and WithinEpsilon so that scores and set membership agree
// bit for bit.
inline double CellDeviation(std::uint64_t count, std::size_t n, double p) {
  return std::abs(static_cast<double>(count) / static_cast<double>(n) - p);
}

// Absolute slack on the epsilon comparison. Decimal inputs such as
// |3/10 - 0.4| <= 0.1 are ties in exact arithmetic but round to either side
// in binary; the slack keeps them typical.
inline constexpr double kTypicalitySlack = 1e-12;

inline bool WithinEpsilon(double deviation, double epsilon) {
  return deviation <= epsilon + kTypicalitySlack;
}

struct TypicalityReport {
  double epsilon = 0.0;
  std::vector<double> deviations;  // row-major, per cell
  double max_deviation = 0.0;
  bool typical = false;            // WithinEpsilon(max_deviation, epsilon)
};

TypicalityReport Typicality(const JointType& type,
                            const JointEdgeDistribution& p, double epsilon);
// Whether (x, y) lies in the epsilon-typical set of p. epsilon must be > 0.
TypicalityReport CheckTypical(std::span<const Symbol> x,
                              std::span<const Symbol> y,
                              const JointEdgeDistribution& p, double epsilon);

// For each count c in [0, n] and each cell, whether CellDeviation(c, n, cell)
// <= epsilon. Lets kernels test typicality with table lookups.
class TypicalCountTable {
 public:
  TypicalCountTable(const JointEdgeDistribution& p, std::size_t n,
                    double epsilon);
  bool Allowed(std::size_t cell, std::uint64_t count) const {
    return allowed_[cell * (n_ + 1) + count] != 0;
  }
  bool Typical(std::span<const std::uint64_t> counts) const {
    for (std::size_t cell = 0; cell < counts.size(); ++cell) {
      if (!Allowed(cell, counts[cell])) return false;
    }
    return true;
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> allowed_;
};

// Exponential bound on P((X^n, pi(Y^n)) typical) for a permutation with the
// given cycle type: exp(-(n / t) (I - |X||Y| epsilon)), I in nats. t is the
// cycle-breaking length. When the preconditions do not hold the bound is
// vacuous (1) and `valid` is false:
//   0 < epsilon < I / (|X||Y|), m * m < n, and m == 0 unless
//   `allow_fixed_points` (the m > 0 case is only outlined by the argument).
struct PermutationTypicalityBound {
  int n = 0;
  double epsilon = 0.0;
  int t = 2;
  double mi_nats = 0.0;
  int alphabet_product = 4;
  double bound = 1.0;
  bool valid = false;
  std::string note;
};

// Throws std::invalid_argument if t < 2 or type.n() != n.
PermutationTypicalityBound ComputePermutationTypicalityBound(
    const JointEdgeDistribution& p, int n, double epsilon,
    const CycleType& type, int t, bool allow_fixed_points = false);
// max(2, longest cycle).
int DefaultBreakLength(const CycleType& type);

// Upper limit on (l^2)^n for ExactPermTypicalityProb: 2^24 weighted pairs,
// enough for n = 12 binary sequences.
inline constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 24;
// Below this value of n * log(smallest positive cell) the exact kernel
// accumulates in log space; plain products would underflow.
inline constexpr double kLogSpaceThreshold = -700.0;

// Exact P((X^n, pi(Y^n)) in the epsilon-typical set) for (X_i, Y_i) i.i.d.
// ~ p, by enumerating all (l^2)^n sequence pairs. Throws GuardExceeded past
// kEnumerationGuard. Runs in parallel; the result does not depend on the
// number of threads (per-x partial sums are reduced in a fixed order with
// compensated summation).
double ExactPermTypicalityProb(const JointEdgeDistribution& p, int n,
                               const Permutation& pi, double epsilon);
std::uint64_t EnumerationSize(int l, int n);  // (l^2)^n, saturating

struct ProportionInterval {
  double lo = 0.0;
  double hi = 1.0;
};
// Exact (Clopper-Pearson) two-sided interval for a binomial proportion.
ProportionInterval ClopperPearson(std::uint64_t successes, std::uint64_t trials,
                                  double confidence = 0.95);

struct McEstimate {
  double estimate = 0.0;
  ProportionInterval ci;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

// Monte Carlo estimate of the same probability. Trial k draws its sequences
// from DeriveSeed(seed, {kStreamMonteCarlo, k}), so the estimate is
// independent of scheduling. Throws std::invalid_argument if trials == 0.
McEstimate McPermTypicalityProb(const JointEdgeDistribution& p, int n,
                                const Permutation& pi, double epsilon,
                                std::uint64_t trials, std::uint64_t seed);

}  // namespace typmatch

#endif  // TYPMATCH_TYPICALITY_H_
