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

#ifndef TYPMATCH_ERRORS_H_
#define TYPMATCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace typmatch {

// Malformed or out-of-contract input data (files, parsed text, values).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation was refused because the instance exceeds an enumeration
// guard (exact probability oracle, exhaustive labeling search).
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system failures: missing files, unwritable directories.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace typmatch

#endif  // TYPMATCH_ERRORS_H_
