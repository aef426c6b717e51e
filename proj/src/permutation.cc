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

#include "typmatch/permutation.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "typmatch/errors.h"
#include "typmatch/rng.h"

namespace typmatch {

namespace {

void CheckSameSize(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(
        fmt::format("permutation sizes differ: {} vs {}", a.size(), b.size()));
  }
}

int ParseInt(std::string_view token) {
  int v = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError(fmt::format("not an integer: '{}'", token));
  }
  return v;
}

}  // namespace

Permutation Permutation::Identity(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::FromImages(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<bool> seen(n + 1, false);
  for (int v : images) {
    if (v < 1 || v > n) {
      throw FormatError(fmt::format("image {} outside [1, {}]", v, n));
    }
    if (seen[v]) throw FormatError(fmt::format("image {} repeated", v));
    seen[v] = true;
  }
  return Permutation(std::move(images));
}

int CycleType::n() const {
  return m + std::accumulate(lengths.begin(), lengths.end(), 0);
}

int CycleType::max_length() const {
  return lengths.empty() ? 1 : *std::max_element(lengths.begin(), lengths.end());
}

void CycleType::Validate() const {
  if (m < 0) throw FormatError(fmt::format("negative fixed-point count {}", m));
  for (int len : lengths) {
    if (len < 2) {
      throw FormatError(fmt::format("cycle length {} is below 2", len));
    }
  }
}

std::string CycleType::ToString() const {
  std::string out = fmt::format("m={};", m);
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    out += fmt::format("{}{}", k ? "," : "", lengths[k]);
  }
  return out;
}

CycleType CycleType::Parse(std::string_view spec) {
  const auto semi = spec.find(';');
  if (spec.substr(0, 2) != "m=" || semi == std::string_view::npos) {
    throw FormatError(fmt::format(
        "cycle spec '{}' must look like \"m=<fixed>;<len>,<len>,...\"", spec));
  }
  CycleType type;
  type.m = ParseInt(spec.substr(2, semi - 2));
  std::string_view rest = spec.substr(semi + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    type.lengths.push_back(ParseInt(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) throw FormatError("trailing ',' in cycle spec");
  }
  type.Validate();
  return type;
}

CycleDecomposition DecomposeCycles(const Permutation& pi) {
  const int n = pi.size();
  std::vector<bool> visited(n + 1, false);
  CycleDecomposition out;
  for (int start = 1; start <= n; ++start) {
    if (visited[start]) continue;
    std::vector<int> cycle;
    for (int v = start; !visited[v]; v = pi(v)) {
      visited[v] = true;
      cycle.push_back(v);
    }
    // Scanning starts in increasing order, so `start` is the cycle minimum.
    if (cycle.size() == 1) {
      ++out.type.m;
    } else {
      out.cycles.push_back(std::move(cycle));
    }
  }
  std::stable_sort(out.cycles.begin(), out.cycles.end(),
                   [](const auto& a, const auto& b) {
                     return a.size() > b.size();
                   });
  for (const auto& cycle : out.cycles) {
    out.type.lengths.push_back(static_cast<int>(cycle.size()));
  }
  return out;
}

Permutation FromCycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(n + 1, false);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const int v = cycle[k];
      if (v < 1 || v > n) {
        throw FormatError(fmt::format("cycle entry {} outside [1, {}]", v, n));
      }
      if (used[v]) throw FormatError(fmt::format("cycles overlap at {}", v));
      used[v] = true;
      images[v - 1] = cycle[(k + 1) % cycle.size()];
    }
  }
  return Permutation::FromImages(std::move(images));
}

Permutation StandardPermutation(const CycleType& type) {
  type.Validate();
  const int n = type.n();
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  int offset = 0;
  for (int len : type.lengths) {
    for (int k = 0; k < len; ++k) {
      images[offset + k] = offset + (k + 1) % len + 1;
    }
    offset += len;
  }
  return Permutation::FromImages(std::move(images));
}

Permutation Compose(const Permutation& outer, const Permutation& inner) {
  CheckSameSize(outer, inner);
  std::vector<int> images(inner.size());
  for (int i = 1; i <= inner.size(); ++i) images[i - 1] = outer(inner(i));
  return Permutation::FromImages(std::move(images));
}

Permutation Invert(const Permutation& pi) {
  std::vector<int> images(pi.size());
  for (int i = 1; i <= pi.size(); ++i) images[pi(i) - 1] = i;
  return Permutation::FromImages(std::move(images));
}

Permutation RandomPermutation(int n, std::uint64_t seed) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.Below(static_cast<std::uint64_t>(i) + 1));
    std::swap(images[i], images[j]);
  }
  return Permutation::FromImages(std::move(images));
}

int FixedPointCount(const Permutation& pi) {
  int count = 0;
  for (int i = 1; i <= pi.size(); ++i) count += pi(i) == i;
  return count;
}

int LabelingMismatch(const Permutation& a, const Permutation& b) {
  CheckSameSize(a, b);
  int count = 0;
  for (int i = 1; i <= a.size(); ++i) count += a(i) != b(i);
  return count;
}

std::uint64_t Factorial(int n) {
  if (n < 0 || n > 20) {
    throw std::invalid_argument(fmt::format("{}! does not fit in 64 bits", n));
  }
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::uint64_t LexRank(const Permutation& pi) {
  const int n = pi.size();
  std::uint64_t rank = 0;
  // Lehmer code: for each position, count smaller unused values.
  std::vector<bool> used(n + 1, false);
  for (int i = 1; i <= n; ++i) {
    int smaller = 0;
    for (int v = 1; v < pi(i); ++v) smaller += !used[v];
    used[pi(i)] = true;
    rank += static_cast<std::uint64_t>(smaller) * Factorial(n - i);
  }
  return rank;
}

Permutation FromLexRank(int n, std::uint64_t rank) {
  if (rank >= Factorial(n)) {
    throw std::invalid_argument(fmt::format("rank {} >= {}!", rank, n));
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> images;
  images.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const std::uint64_t f = Factorial(n - i);
    const auto digit = static_cast<std::size_t>(rank / f);
    rank %= f;
    images.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return Permutation::FromImages(std::move(images));
}

Permutation ParseLabeling(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token)) throw FormatError("empty labeling file");
  const int n = ParseInt(token);
  if (n < 1) throw FormatError(fmt::format("labeling size {} < 1", n));
  std::vector<int> images;
  while (in >> token) images.push_back(ParseInt(token));
  if (static_cast<int>(images.size()) != n) {
    throw FormatError(
        fmt::format("expected {} values, got {}", n, images.size()));
  }
  return Permutation::FromImages(std::move(images));
}

std::string FormatLabeling(const Permutation& pi) {
  return fmt::format("{}\n{}\n", pi.size(), fmt::join(pi.images(), " "));
}

}  // namespace typmatch
