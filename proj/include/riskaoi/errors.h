// Copyright 2026 The riskaoi Authors
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

#ifndef RISKAOI_ERRORS_H_
#define RISKAOI_ERRORS_H_

#include <stdexcept>
#include <string>

namespace riskaoi {

// Violated precondition on a parameter or argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The analytic formulas do not cover the requested case (e.g. zeta <= n).
class Inapplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// No candidate satisfies a risk budget.
class Infeasible : public std::runtime_error {
 public:
  Infeasible(const std::string& what, double min_achievable_risk)
      : std::runtime_error(what), min_achievable_risk_(min_achievable_risk) {}

  double min_achievable_risk() const { return min_achievable_risk_; }

 private:
  double min_achievable_risk_;
};

// An infinite series failed to reach its tail tolerance.
class NonConvergent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse, e.g. stepping an environment past its horizon.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace riskaoi

#endif  // RISKAOI_ERRORS_H_
