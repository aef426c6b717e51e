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

#ifndef TYPMATCH_PERMUTATION_H_
#define TYPMATCH_PERMUTATION_H_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace typmatch {

// A bijection on [1, n]. Indices and images are 1-based at every interface.
class Permutation {
 public:
  Permutation() = default;

  static Permutation Identity(int n);
  // images[i - 1] = pi(i). Throws FormatError unless images is a bijection
  // on [1, n].
  static Permutation FromImages(std::vector<int> images);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  std::span<const int> images() const { return images_; }

  // Lexicographic on the image sequence.
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}
  std::vector<int> images_;
};

// (m, c, i_1, ..., i_c): m fixed points and c non-trivial cycles with the
// given lengths. `lengths` keeps the order it was given in; cycle
// decomposition always produces it in non-increasing order.
struct CycleType {
  int m = 0;
  std::vector<int> lengths;

  int c() const { return static_cast<int>(lengths.size()); }
  int n() const;
  int max_length() const;
  // Throws FormatError on m < 0 or any length < 2.
  void Validate() const;

  // "m=<m>;<i_1>,<i_2>,..." e.g. "m=0;2,2,2,2" or "m=5;".
  std::string ToString() const;
  static CycleType Parse(std::string_view spec);

  friend bool operator==(const CycleType&, const CycleType&) = default;
};

struct CycleDecomposition {
  CycleType type;
  // Non-trivial cycles only. Each is rotated so its smallest element comes
  // first; cycles are ordered by decreasing length, then increasing first
  // element. A cycle (a_1 a_2 ... a_k) means pi(a_1) = a_2, ..., pi(a_k) = a_1.
  std::vector<std::vector<int>> cycles;
};

CycleDecomposition DecomposeCycles(const Permutation& pi);
// Inverse of DecomposeCycles: builds the permutation on [1, n] with the
// given disjoint cycles. Throws FormatError on overlaps or out-of-range
// entries.
Permutation FromCycles(int n, const std::vector<std::vector<int>>& cycles);

// Cycles (1..i_1)(i_1+1..i_1+i_2)... in the order given, then m fixed
// points at the end.
Permutation StandardPermutation(const CycleType& type);

Permutation Compose(const Permutation& outer, const Permutation& inner);
Permutation Invert(const Permutation& pi);
// Uniform over S_n (Fisher-Yates driven by Rng).
Permutation RandomPermutation(int n, std::uint64_t seed);
int FixedPointCount(const Permutation& pi);
// |{i : a(i) != b(i)}|.
int LabelingMismatch(const Permutation& a, const Permutation& b);

// z_i = s_{pi(i)}.
//
// Note: with the cycle convention above, this maps (a_1..a_7) through
// (1 2 3)(4 5) to (a_2, a_3, a_1, a_5, a_4, a_6, a_7). ApplyInverse gives
// (a_3, a_1, a_2, a_5, a_4, a_6, a_7). Both actions have the same cycle
// type, so typicality probabilities do not depend on which one is used.
template <typename T>
std::vector<T> Apply(const Permutation& pi, std::span<const T> s);
// z_i = s_{pi^{-1}(i)}, equivalently z_{pi(i)} = s_i.
template <typename T>
std::vector<T> ApplyInverse(const Permutation& pi, std::span<const T> s);

// Position of pi in the lexicographic order of S_n, in [0, n!). n <= 20.
std::uint64_t LexRank(const Permutation& pi);
Permutation FromLexRank(int n, std::uint64_t rank);
std::uint64_t Factorial(int n);

// Labeling file: line 1 holds n, line 2 the images pi(1) .. pi(n).
Permutation ParseLabeling(std::string_view text);
std::string FormatLabeling(const Permutation& pi);

}  // namespace typmatch

#include "typmatch/permutation_inl.h"

#endif  // TYPMATCH_PERMUTATION_H_
