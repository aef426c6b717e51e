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

#ifndef TYPMATCH_PERMUTATION_INL_H_
#define TYPMATCH_PERMUTATION_INL_H_

#include <fmt/format.h>

#include "typmatch/errors.h"

namespace typmatch {

template <typename T>
std::vector<T> Apply(const Permutation& pi, std::span<const T> s) {
  if (static_cast<int>(s.size()) != pi.size()) {
    throw std::invalid_argument(fmt::format(
        "sequence length {} != permutation size {}", s.size(), pi.size()));
  }
  std::vector<T> z(s.size());
  for (int i = 1; i <= pi.size(); ++i) z[i - 1] = s[pi(i) - 1];
  return z;
}

template <typename T>
std::vector<T> ApplyInverse(const Permutation& pi, std::span<const T> s) {
  if (static_cast<int>(s.size()) != pi.size()) {
    throw std::invalid_argument(fmt::format(
        "sequence length {} != permutation size {}", s.size(), pi.size()));
  }
  std::vector<T> z(s.size());
  for (int i = 1; i <= pi.size(); ++i) z[pi(i) - 1] = s[i - 1];
  return z;
}

}  // namespace typmatch

#endif  // TYPMATCH_PERMUTATION_INL_H_
