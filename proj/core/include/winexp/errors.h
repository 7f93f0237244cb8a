// Copyright 2026 The Win-Exp Lab Authors. All rights reserved.
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

#ifndef WINEXP_ERRORS_H_
#define WINEXP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace winexp {

// Argument outside the documented domain (empty grid, eps <= 0, r <= 0...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The realized feedback has zero probability under the learner's own
// distribution, e.g. a win when no grid bid can win.
class InconsistentFeedback : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A data-structure invariant was broken by the caller (positive utility
// estimate fed to the exponential-weights update, malformed curve...).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Scenario / learner configuration is inconsistent.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Feedback graph without a self-loop on every node.
class InvalidGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive search would exceed its size budget.
class SizeLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A bound was requested outside the regime where it is guaranteed.
class PreconditionViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Regression history cannot identify the model (all bids identical).
class FitDegenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace winexp

#endif  // WINEXP_ERRORS_H_
