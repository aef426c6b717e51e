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

#include "typmatch/typicality.h"

#include <cmath>

#include "gtest/gtest.h"
#include "typmatch/errors.h"
#include "typmatch/rng.h"

namespace typmatch {
namespace {

const JointEdgeDistribution& Reference() {
  static const auto p =
      JointEdgeDistribution::FromMatrix(2, {0.4, 0.1, 0.1, 0.4});
  return p;
}

// I(X;Y) of the reference distribution, in nats (mpmath, 30 digits).
constexpr double kReferenceMiNats = 0.19274475702175742988;

std::vector<Symbol> Firsts(const std::vector<SymbolPair>& v) {
  std::vector<Symbol> out;
  for (const auto& s : v) out.push_back(s.x1);
  return out;
}
std::vector<Symbol> Seconds(const std::vector<SymbolPair>& v) {
  std::vector<Symbol> out;
  for (const auto& s : v) out.push_back(s.x2);
  return out;
}

TEST(JointType, CountsPairs) {
  const std::vector<Symbol> x{0, 0, 1};
  const auto t = ComputeJointType(x, x, 2);
  EXPECT_EQ(t.counts, (std::vector<std::uint64_t>{2, 0, 0, 1}));
  EXPECT_EQ(t.n, 3u);

  const std::vector<Symbol> y{1, 0, 1};
  EXPECT_EQ(ComputeJointType(x, y, 2).counts,
            (std::vector<std::uint64_t>{1, 1, 0, 1}));
}

TEST(JointType, Errors) {
  const std::vector<Symbol> a{0, 1}, b{0}, c{0, 2}, empty;
  EXPECT_THROW(ComputeJointType(a, b, 2), std::invalid_argument);
  EXPECT_THROW(ComputeJointType(empty, empty, 2), std::invalid_argument);
  EXPECT_THROW(ComputeJointType(a, c, 2), FormatError);
}

TEST(JointType, SumsToLengthAndIsInvariantUnderCommonPermutation) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = trial == 0 ? 1000 : 1 + static_cast<int>(rng.Below(200));
    const int l = 2 + static_cast<int>(rng.Below(4));
    std::vector<Symbol> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<Symbol>(rng.Below(l));
      y[i] = static_cast<Symbol>(rng.Below(l));
    }
    const auto t = ComputeJointType(x, y, l);
    std::uint64_t total = 0;
    for (auto c : t.counts) total += c;
    EXPECT_EQ(total, static_cast<std::uint64_t>(n));

    const auto rho = RandomPermutation(n, rng.NextU64());
    const auto px = Apply<Symbol>(rho, x);
    const auto py = Apply<Symbol>(rho, y);
    EXPECT_EQ(ComputeJointType(px, py, l), t);
  }
}

TEST(Typicality, JointDrawsAreTypical) {
  const auto s = SamplePairs(Reference(), 10000, 21);
  const auto r = CheckTypical(Firsts(s), Seconds(s), Reference(), 0.05);
  EXPECT_TRUE(r.typical);
  EXPECT_LE(r.max_deviation, 0.05);
  EXPECT_EQ(r.deviations.size(), 4u);
}

TEST(Typicality, IndependentDrawsAgainstPerfectCorrelation) {
  const auto indep = JointEdgeDistribution::CorrelatedUniform(2, 0.0);
  const auto perfect = JointEdgeDistribution::CorrelatedUniform(2, 1.0);
  const auto s = SamplePairs(indep, 1000, 22);
  const auto r = CheckTypical(Firsts(s), Seconds(s), perfect, 0.05);
  EXPECT_FALSE(r.typical);
  EXPECT_GT(r.max_deviation, 0.15);
}

TEST(Typicality, LargeEpsilonAlwaysTypical) {
  Rng rng(5);
  std::vector<Symbol> x(30), y(30);
  for (int i = 0; i < 30; ++i) {
    x[i] = static_cast<Symbol>(rng.Below(2));
    y[i] = static_cast<Symbol>(rng.Below(2));
  }
  EXPECT_TRUE(CheckTypical(x, y, Reference(), 1.0).typical);
  EXPECT_TRUE(CheckTypical(x, y, Reference(), 1.5).typical);
}

TEST(Typicality, ReportIsConsistentAndBoundaryInclusive) {
  const std::vector<Symbol> x{0, 1}, y{0, 1};
  // Type (1/2, 0, 0, 1/2) against the reference: max deviation 0.1.
  const auto r = CheckTypical(x, y, Reference(), 0.1);
  EXPECT_EQ(r.max_deviation, CellDeviation(0, 2, 0.1));
  EXPECT_TRUE(r.typical);
  EXPECT_FALSE(CheckTypical(x, y, Reference(), 0.09).typical);
  // |3/10 - 0.4| is a tie in exact arithmetic and must stay typical.
  const std::vector<Symbol> u{0, 0, 0, 1, 1, 1, 1, 1, 0, 1},
      v{0, 0, 0, 1, 1, 1, 1, 1, 1, 0};
  EXPECT_TRUE(CheckTypical(u, v, Reference(), 0.1).typical);
  EXPECT_THROW(CheckTypical(x, y, Reference(), 0.0), std::invalid_argument);
}

TEST(TypicalCountTable, AgreesWithCellDeviation) {
  const auto& p = Reference();
  for (std::size_t n : {1u, 7u, 12u, 45u}) {
    for (double eps : {0.01, 0.05, 0.1, 0.3}) {
      const TypicalCountTable table(p, n, eps);
      for (std::size_t cell = 0; cell < 4; ++cell) {
        for (std::uint64_t c = 0; c <= n; ++c) {
          ASSERT_EQ(table.Allowed(cell, c),
                    WithinEpsilon(CellDeviation(c, n, p.cells()[cell]), eps));
        }
      }
    }
  }
}

TEST(Bound, ReferenceValueAtTwelve) {
  const CycleType type{0, {2, 2, 2, 2, 2, 2}};
  const auto b = ComputePermutationTypicalityBound(Reference(), 12, 0.01, type, 2);
  EXPECT_TRUE(b.valid) << b.note;
  EXPECT_NEAR(b.mi_nats, kReferenceMiNats, 1e-14);
  EXPECT_EQ(b.alphabet_product, 4);
  EXPECT_NEAR(b.bound, 0.399928882220367, 1e-12);
  EXPECT_NEAR(b.bound, std::exp(-6.0 * (kReferenceMiNats - 0.04)), 1e-12);
}

TEST(Bound, ApproachesOneAtTheEpsilonLimit) {
  const CycleType type{0, {2, 2, 2, 2}};
  double previous = 0.0;
  for (double frac : {0.5, 0.9, 0.99, 0.999999}) {
    const auto b = ComputePermutationTypicalityBound(
        Reference(), 8, frac * kReferenceMiNats / 4.0, type, 2);
    EXPECT_TRUE(b.valid);
    EXPECT_GT(b.bound, previous);
    EXPECT_LE(b.bound, 1.0);
    previous = b.bound;
  }
  EXPECT_NEAR(previous, 1.0, 1e-5);
  const auto past = ComputePermutationTypicalityBound(
      Reference(), 8, kReferenceMiNats / 4.0 + 1e-6, type, 2);
  EXPECT_FALSE(past.valid);
  EXPECT_EQ(past.bound, 1.0);
}

TEST(Bound, IndependentDistributionIsVacuous) {
  const auto b = ComputePermutationTypicalityBound(
      JointEdgeDistribution::CorrelatedUniform(2, 0.0), 8, 0.01,
      CycleType{0, {2, 2, 2, 2}}, 2);
  EXPECT_FALSE(b.valid);
  EXPECT_EQ(b.bound, 1.0);
  EXPECT_FALSE(b.note.empty());
}

TEST(Bound, FixedPointsAreFlagged) {
  const CycleType type{2, {4, 4, 3, 3}};  // n = 16, m = 2 < 4
  const auto b = ComputePermutationTypicalityBound(Reference(), 16, 0.01, type, 4);
  EXPECT_FALSE(b.valid);
  EXPECT_EQ(b.bound, 1.0);
  EXPECT_NE(b.note.find("m>0"), std::string::npos);

  const auto o = ComputePermutationTypicalityBound(Reference(), 16, 0.01, type, 4,
                                                   /*allow_fixed_points=*/true);
  EXPECT_TRUE(o.valid);
  EXPECT_NEAR(o.bound, std::exp(-4.0 * (kReferenceMiNats - 0.04)), 1e-12);

  const CycleType many{4, {4, 4, 4}};  // n = 16, m = 4 = sqrt(n)
  EXPECT_FALSE(ComputePermutationTypicalityBound(Reference(), 16, 0.01, many, 4,
                                                 true)
                   .valid);
}

TEST(Bound, RejectsBadArguments) {
  const CycleType type{0, {2, 2}};
  EXPECT_THROW(ComputePermutationTypicalityBound(Reference(), 4, 0.01, type, 1),
               std::invalid_argument);
  EXPECT_THROW(ComputePermutationTypicalityBound(Reference(), 5, 0.01, type, 2),
               std::invalid_argument);
  EXPECT_EQ(DefaultBreakLength(CycleType{0, {3, 2}}), 3);
  EXPECT_EQ(DefaultBreakLength(CycleType{4, {}}), 2);
}

TEST(ExactProb, SingleSymbol) {
  const auto p = JointEdgeDistribution::FromMatrix(2, {0.7, 0.0, 0.1, 0.2});
  const auto id = Permutation::Identity(1);
  // Only the singleton (0, 0) stays within 0.35 of every cell.
  EXPECT_NEAR(ExactPermTypicalityProb(p, 1, id, 0.35), 0.7, 1e-15);
  EXPECT_NEAR(ExactPermTypicalityProb(p, 1, id, 0.85), 0.9, 1e-15);
  EXPECT_NEAR(ExactPermTypicalityProb(p, 1, id, 0.05), 0.0, 1e-15);
}

TEST(ExactProb, EverythingTypicalForLargeEpsilon) {
  for (int n : {2, 5, 8}) {
    EXPECT_NEAR(ExactPermTypicalityProb(Reference(), n, Permutation::Identity(n), 1.0),
                1.0, 1e-12);
    EXPECT_NEAR(ExactPermTypicalityProb(Reference(), n,
                                        RandomPermutation(n, 3), 1.0),
                1.0, 1e-12);
  }
}

// Reference values from an exact rational convolution over transposition
// blocks, independent of the enumeration kernel.
TEST(ExactProb, MatchesTranspositionConvolution) {
  struct Case {
    int n;
    double eps;
    double expected;
  };
  const Case cases[] = {
      {8, 0.01, 0.0},
      {10, 0.01, 8181.0 / 781250.0},
      {12, 0.01, 0.0},
      {8, 0.1, 46029.0 / 1250000.0},
      {10, 0.1, 33415371.0 / 312500000.0},
      {12, 0.1, 1817756733.0 / 31250000000.0},
  };
  for (const auto& c : cases) {
    const auto pi = StandardPermutation(
        CycleType{0, std::vector<int>(c.n / 2, 2)});
    EXPECT_NEAR(ExactPermTypicalityProb(Reference(), c.n, pi, c.eps), c.expected,
                1e-12)
        << "n=" << c.n << " eps=" << c.eps;
  }
}

TEST(ExactProb, EqualForEqualCycleType) {
  Rng rng(6);
  for (int trial = 0; trial < 12; ++trial) {
    const auto pi = RandomPermutation(6, rng.NextU64());
    const auto standard = StandardPermutation(DecomposeCycles(pi).type);
    for (double eps : {0.05, 0.1, 0.2}) {
      EXPECT_NEAR(ExactPermTypicalityProb(Reference(), 6, pi, eps),
                  ExactPermTypicalityProb(Reference(), 6, standard, eps), 1e-12);
    }
  }
}

TEST(ExactProb, GuardAndLogSpace) {
  EXPECT_EQ(EnumerationSize(2, 12), std::uint64_t{1} << 24);
  EXPECT_THROW(ExactPermTypicalityProb(Reference(), 13, Permutation::Identity(13), 0.1),
               GuardExceeded);
  EXPECT_THROW(ExactPermTypicalityProb(JointEdgeDistribution::CorrelatedUniform(3, 0.5),
                                       8, Permutation::Identity(8), 0.1),
               GuardExceeded);
  // Cells of 1e-120 push n * log(min cell) below the log-space threshold.
  const auto tiny = JointEdgeDistribution::FromMatrix(
      2, {0.5 - 1e-120, 1e-120, 1e-120, 0.5 - 1e-120}, 1e-9);
  EXPECT_NEAR(ExactPermTypicalityProb(tiny, 6, Permutation::Identity(6), 1.0), 1.0,
              1e-12);
  // Only the type (3, 0, 0, 3) is within 0.01: C(6, 3) / 2^6.
  EXPECT_NEAR(ExactPermTypicalityProb(tiny, 6, Permutation::Identity(6), 0.01),
              20.0 / 64.0, 1e-12);
}

TEST(ClopperPearson, KnownValues) {
  const auto all = ClopperPearson(20, 20);
  EXPECT_EQ(all.hi, 1.0);
  EXPECT_NEAR(all.lo, std::pow(0.025, 1.0 / 20.0), 1e-12);
  const auto none = ClopperPearson(0, 20);
  EXPECT_EQ(none.lo, 0.0);
  EXPECT_NEAR(none.hi, 1.0 - std::pow(0.025, 1.0 / 20.0), 1e-12);
  const auto half = ClopperPearson(5, 10);
  EXPECT_NEAR(half.lo, 0.18708602844739855, 1e-12);
  EXPECT_NEAR(half.hi, 0.8129139715526015, 1e-12);
}

TEST(McProb, IdentityLargeEpsilon) {
  const auto est = McPermTypicalityProb(Reference(), 10, Permutation::Identity(10),
                                        1.0, 500, 1);
  EXPECT_EQ(est.estimate, 1.0);
  EXPECT_EQ(est.ci.hi, 1.0);
  EXPECT_LT(est.ci.lo, 1.0);
  EXPECT_EQ(est.successes, 500u);
  EXPECT_THROW(McPermTypicalityProb(Reference(), 10, Permutation::Identity(10), 1.0,
                                    0, 1),
               std::invalid_argument);
}

TEST(McProb, DeterministicPerSeed) {
  const auto pi = StandardPermutation(CycleType{0, {3, 3, 2}});
  const auto a = McPermTypicalityProb(Reference(), 8, pi, 0.1, 2000, 42);
  const auto b = McPermTypicalityProb(Reference(), 8, pi, 0.1, 2000, 42);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_EQ(a.ci.lo, b.ci.lo);
}

TEST(McProb, CoversExactValue) {
  const auto pi = StandardPermutation(CycleType{0, {2, 2, 2, 2}});
  const double exact = ExactPermTypicalityProb(Reference(), 8, pi, 0.1);
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto est = McPermTypicalityProb(Reference(), 8, pi, 0.1, 400, seed);
    covered += est.ci.lo <= exact && exact <= est.ci.hi;
  }
  EXPECT_GE(covered, 93);
}

TEST(McProb, SameCycleTypeOverlaps) {
  const auto a = StandardPermutation(CycleType{0, {4, 2, 2}});
  const auto b = FromCycles(8, {{2, 7, 5, 1}, {3, 8}, {4, 6}});
  const auto ea = McPermTypicalityProb(Reference(), 8, a, 0.1, 20000, 7);
  const auto eb = McPermTypicalityProb(Reference(), 8, b, 0.1, 20000, 8);
  EXPECT_LE(ea.ci.lo, eb.ci.hi);
  EXPECT_LE(eb.ci.lo, ea.ci.hi);
}

}  // namespace
}  // namespace typmatch
