// Copyright 2026 The pulsekit Authors.
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pulsekit {

/// Model class outside what an operation supports (e.g. multivariate input
/// passed to the univariate series analysis).
class UnsupportedModelError : public std::runtime_error {
  public:
    explicit UnsupportedModelError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A computation would exceed its configured work or dimension budget.
/// `required()` reports the budget that would have been needed.
class BudgetExceededError : public std::runtime_error {
  public:
    BudgetExceededError(const std::string& what, std::uint64_t required)
        : std::runtime_error(what), required_(required) {}
    std::uint64_t required() const { return required_; }

  private:
    std::uint64_t required_;
};

/// Numerical integrity violation (non-finite loss, imaginary residue above
/// tolerance, ...).
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Observable proportional to the identity cannot be rescaled to [-1, 1].
class DegenerateObservableError : public std::invalid_argument {
  public:
    explicit DegenerateObservableError(const std::string& what)
        : std::invalid_argument(what) {}
};

} // namespace pulsekit
