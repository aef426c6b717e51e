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

#ifndef TYPMATCH_INTERNAL_SUMMATION_H_
#define TYPMATCH_INTERNAL_SUMMATION_H_

#include <algorithm>
#include <cmath>
#include <limits>

namespace typmatch::internal {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Streaming log(sum exp(v_k)).
class LogSumExp {
 public:
  void Add(double log_v) {
    if (log_v == -std::numeric_limits<double>::infinity()) return;
    if (log_v <= max_) {
      scaled_ += std::exp(log_v - max_);
    } else {
      scaled_ = scaled_ * std::exp(max_ - log_v) + 1.0;
      max_ = log_v;
    }
  }
  double value() const {
    return scaled_ == 0.0 ? -std::numeric_limits<double>::infinity()
                          : max_ + std::log(scaled_);
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double scaled_ = 0.0;
};

}  // namespace typmatch::internal

#endif  // TYPMATCH_INTERNAL_SUMMATION_H_
