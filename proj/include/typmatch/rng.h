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

#ifndef TYPMATCH_RNG_H_
#define TYPMATCH_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace typmatch {

// Seedable generator used everywhere in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not (their algorithms vary across
// library vendors), so uniform doubles and bounded integers are derived here
// from raw 64-bit outputs. Identical seeds give identical streams on every
// conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [0, bound). bound must be positive. Lemire's multiply-shift
  // with rejection, so the result is exactly unbiased.
  std::uint64_t Below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives an independent sub-seed from a master seed and a path of tags:
//
//   h = Mix64(master); for each tag t: h = Mix64(h ^ Mix64(t))
//
// Every consumer of randomness asks for its own path (a stream id followed by
// indices such as trial number), so adding a new consumer never shifts the
// values an existing one sees, and results do not depend on how work is
// scheduled across threads.
constexpr std::uint64_t DeriveSeed(std::uint64_t master,
                                   std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = Mix64(master);
  for (std::uint64_t tag : path) h = Mix64(h ^ Mix64(tag));
  return h;
}

// Stream identifiers. Values are frozen; append new ones at the end.
enum Stream : std::uint64_t {
  kStreamGenerate = 1,
  kStreamAnonymize = 2,
  kStreamMatchPick = 3,
  kStreamGreedy = 4,
  kStreamMonteCarlo = 5,
  kStreamSweep = 6,
};

}  // namespace typmatch

#endif  // TYPMATCH_RNG_H_
