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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include "internal/summation.h"
#include "typmatch/errors.h"
#include "typmatch/rng.h"

namespace typmatch {

JointType ComputeJointType(std::span<const Symbol> x, std::span<const Symbol> y,
                           int l) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(
        fmt::format("sequence lengths differ: {} vs {}", x.size(), y.size()));
  }
  if (x.empty()) throw std::invalid_argument("empty sequences");
  JointType type{l, x.size(), std::vector<std::uint64_t>(l * l, 0)};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= l || y[i] >= l) {
      throw FormatError(fmt::format("symbol at position {} outside [0, {}]",
                                    i + 1, l - 1));
    }
    ++type.counts[x[i] * l + y[i]];
  }
  return type;
}

TypicalityReport Typicality(const JointType& type,
                            const JointEdgeDistribution& p, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument(fmt::format("epsilon must be > 0, got {}", epsilon));
  }
  if (type.l != p.l()) {
    throw std::invalid_argument("joint type and distribution alphabets differ");
  }
  TypicalityReport report;
  report.epsilon = epsilon;
  report.deviations.resize(type.counts.size());
  for (std::size_t cell = 0; cell < type.counts.size(); ++cell) {
    report.deviations[cell] =
        CellDeviation(type.counts[cell], type.n, p.cells()[cell]);
    report.max_deviation = std::max(report.max_deviation, report.deviations[cell]);
  }
  report.typical = WithinEpsilon(report.max_deviation, epsilon);
  return report;
}

TypicalityReport CheckTypical(std::span<const Symbol> x,
                              std::span<const Symbol> y,
                              const JointEdgeDistribution& p, double epsilon) {
  return Typicality(ComputeJointType(x, y, p.l()), p, epsilon);
}

TypicalCountTable::TypicalCountTable(const JointEdgeDistribution& p,
                                     std::size_t n, double epsilon)
    : n_(n), allowed_(p.cells().size() * (n + 1)) {
  for (std::size_t cell = 0; cell < p.cells().size(); ++cell) {
    for (std::size_t c = 0; c <= n; ++c) {
      allowed_[cell * (n + 1) + c] =
          WithinEpsilon(CellDeviation(c, n, p.cells()[cell]), epsilon);
    }
  }
}

int DefaultBreakLength(const CycleType& type) {
  return std::max(2, type.max_length());
}

PermutationTypicalityBound ComputePermutationTypicalityBound(
    const JointEdgeDistribution& p, int n, double epsilon,
    const CycleType& type, int t, bool allow_fixed_points) {
  if (t < 2) throw std::invalid_argument(fmt::format("t must be >= 2, got {}", t));
  type.Validate();
  if (type.n() != n) {
    throw std::invalid_argument(fmt::format(
        "cycle type {} covers {} points, expected {}", type.ToString(), type.n(), n));
  }
  PermutationTypicalityBound out;
  out.n = n;
  out.epsilon = epsilon;
  out.t = t;
  out.mi_nats = MutualInformation(p, LogBase::kE);
  out.alphabet_product = p.l() * p.l();

  std::vector<std::string> notes;
  if (!(epsilon > 0.0 && epsilon < out.mi_nats / out.alphabet_product)) {
    notes.push_back("epsilon outside (0, I/(|X||Y|))");
  }
  if (static_cast<long long>(type.m) * type.m >= n) {
    notes.push_back("m >= sqrt(n)");
  }
  bool blocking = !notes.empty();
  if (type.m > 0) {
    notes.push_back(allow_fixed_points ? "m>0: outline only (override)"
                                       : "m>0: outline only");
    blocking = blocking || !allow_fixed_points;
  }
  out.valid = !blocking;
  out.note = fmt::format("{}", fmt::join(notes, "; "));
  out.bound = out.valid
                  ? std::exp(-(static_cast<double>(n) / t) *
                             (out.mi_nats - out.alphabet_product * epsilon))
                  : 1.0;
  return out;
}

std::uint64_t EnumerationSize(int l, int n) {
  const std::uint64_t base = static_cast<std::uint64_t>(l) * l;
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    size *= base;
  }
  return size;
}

namespace {

void CheckPermTypicalityArgs(const JointEdgeDistribution& p, int n,
                             const Permutation& pi, double epsilon) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (pi.size() != n) {
    throw std::invalid_argument(
        fmt::format("permutation size {} != n = {}", pi.size(), n));
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument(fmt::format("epsilon must be > 0, got {}", epsilon));
  }
  (void)p;
}

// src[i] = pi(i + 1) - 1, so the permuted sequence is z_i = y_{src[i]}.
std::vector<int> ZeroBasedSources(const Permutation& pi) {
  std::vector<int> src(pi.size());
  for (int i = 0; i < pi.size(); ++i) src[i] = pi(i + 1) - 1;
  return src;
}

}  // namespace

double ExactPermTypicalityProb(const JointEdgeDistribution& p, int n,
                               const Permutation& pi, double epsilon) {
  CheckPermTypicalityArgs(p, n, pi, epsilon);
  const int l = p.l();
  if (EnumerationSize(l, n) > kEnumerationGuard) {
    throw GuardExceeded(fmt::format(
        "exact enumeration of (l^2)^n = ({}^2)^{} sequence pairs exceeds the "
        "guard of {}",
        l, n, kEnumerationGuard));
  }
  std::uint64_t per_sequence = 1;
  for (int i = 0; i < n; ++i) per_sequence *= static_cast<std::uint64_t>(l);

  // digits[s * n + i] is symbol i of the s-th sequence (base-l, first symbol
  // least significant).
  std::vector<Symbol> digits(per_sequence * n);
  for (std::uint64_t s = 0; s < per_sequence; ++s) {
    std::uint64_t v = s;
    for (int i = 0; i < n; ++i) {
      digits[s * n + i] = static_cast<Symbol>(v % l);
      v /= l;
    }
  }
  const std::vector<int> src = ZeroBasedSources(pi);
  const TypicalCountTable table(p, static_cast<std::size_t>(n), epsilon);
  const std::vector<double>& cells = p.cells();

  double min_positive = 1.0;
  for (double c : cells) {
    if (c > 0.0) min_positive = std::min(min_positive, c);
  }
  const bool log_space = n * std::log(min_positive) < kLogSpaceThreshold;
  std::vector<double> log_cells(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    log_cells[k] = cells[k] > 0.0 ? std::log(cells[k])
                                  : -std::numeric_limits<double>::infinity();
  }

  const auto count = static_cast<std::int64_t>(per_sequence);
  std::vector<double> partial(per_sequence);
#pragma omp parallel
  {
    std::vector<std::uint64_t> counts(cells.size());
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t xs = 0; xs < count; ++xs) {
      const Symbol* x = &digits[static_cast<std::size_t>(xs) * n];
      internal::CompensatedSum sum;
      internal::LogSumExp log_sum;
      for (std::uint64_t ys = 0; ys < per_sequence; ++ys) {
        const Symbol* y = &digits[ys * n];
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) ++counts[x[i] * l + y[src[i]]];
        if (!table.Typical(counts)) continue;
        if (log_space) {
          double w = 0.0;
          for (int i = 0; i < n; ++i) w += log_cells[x[i] * l + y[i]];
          log_sum.Add(w);
        } else {
          double w = 1.0;
          for (int i = 0; i < n; ++i) w *= cells[x[i] * l + y[i]];
          sum.Add(w);
        }
      }
      partial[static_cast<std::size_t>(xs)] =
          log_space ? log_sum.value() : sum.value();
    }
  }

  if (log_space) {
    internal::LogSumExp total;
    for (double v : partial) total.Add(v);
    return std::exp(total.value());
  }
  internal::CompensatedSum total;
  for (double v : partial) total.Add(v);
  return std::min(total.value(), 1.0);
}

ProportionInterval ClopperPearson(std::uint64_t successes, std::uint64_t trials,
                                  double confidence) {
  if (trials == 0 || successes > trials) {
    throw std::invalid_argument("need 0 <= successes <= trials, trials > 0");
  }
  const double alpha = 1.0 - confidence;
  const auto k = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  ProportionInterval ci;
  ci.lo = successes == 0 ? 0.0
                         : boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2);
  ci.hi = successes == trials
              ? 1.0
              : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2);
  return ci;
}

McEstimate McPermTypicalityProb(const JointEdgeDistribution& p, int n,
                                const Permutation& pi, double epsilon,
                                std::uint64_t trials, std::uint64_t seed) {
  CheckPermTypicalityArgs(p, n, pi, epsilon);
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const int l = p.l();
  const std::vector<int> src = ZeroBasedSources(pi);
  const TypicalCountTable table(p, static_cast<std::size_t>(n), epsilon);
  const PairSampler sampler(p);

  std::uint64_t successes = 0;
  const auto total = static_cast<std::int64_t>(trials);
#pragma omp parallel reduction(+ : successes)
  {
    std::vector<Symbol> x(n);
    std::vector<Symbol> y(n);
    std::vector<std::uint64_t> counts(p.cells().size());
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < total; ++k) {
      Rng rng(DeriveSeed(seed, {kStreamMonteCarlo, static_cast<std::uint64_t>(k)}));
      for (int i = 0; i < n; ++i) {
        const int cell = sampler.CellFor(rng.Uniform01());
        x[i] = static_cast<Symbol>(cell / l);
        y[i] = static_cast<Symbol>(cell % l);
      }
      std::fill(counts.begin(), counts.end(), 0);
      for (int i = 0; i < n; ++i) ++counts[x[i] * l + y[src[i]]];
      successes += table.Typical(counts) ? 1 : 0;
    }
  }
  McEstimate out;
  out.successes = successes;
  out.trials = trials;
  out.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  out.ci = ClopperPearson(successes, trials);
  return out;
}

}  // namespace typmatch
