// Copyright 2026 The Rankbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANKBENCH_ERROR_HPP_
#define RANKBENCH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace rankbench {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input, violated precondition or kind mismatch.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A metric that has no value on the given input (e.g. ROC AUC with a single
// class in the ground truth).
class UndefinedMetricError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Failure of a numerical procedure rather than of its input format.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The comparison graph splits into several components, so Bradley-Terry
// scores are not identifiable across them.
class DisconnectedGraphError : public NumericalError {
 public:
  DisconnectedGraphError(std::string message,
                         std::vector<std::vector<std::string>> components)
      : NumericalError(std::move(message)),
        components_(std::move(components)) {}

  const std::vector<std::vector<std::string>>& components() const {
    return components_;
  }

 private:
  std::vector<std::vector<std::string>> components_;
};

}  // namespace rankbench

#endif  // RANKBENCH_ERROR_HPP_
