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

#ifndef TYPMATCH_REFERENCE_H_
#define TYPMATCH_REFERENCE_H_

// Straightforward single-threaded versions of the parallel kernels. They are
// written for clarity, built from the public per-item operations (Apply,
// Relabel, CheckTypical), and exist so tests and benchmarks can check the
// optimized kernels against them.

#include <cstdint>
#include <vector>

#include "typmatch/graph.h"
#include "typmatch/matcher.h"
#include "typmatch/typicality.h"

namespace typmatch::reference {

double ExactPermTypicalityProb(const JointEdgeDistribution& p, int n,
                               const Permutation& pi, double epsilon);

McEstimate McPermTypicalityProb(const JointEdgeDistribution& p, int n,
                                const Permutation& pi, double epsilon,
                                std::uint64_t trials, std::uint64_t seed);

// Visits S_n with std::next_permutation, relabels g2_anon and runs the full
// typicality check for every labeling.
CandidateSet CandidateSetExhaustive(const CmperInstance& inst, double epsilon);

}  // namespace typmatch::reference

#endif  // TYPMATCH_REFERENCE_H_
