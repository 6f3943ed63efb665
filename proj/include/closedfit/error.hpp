// Copyright 2026 The closedfit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLOSEDFIT_ERROR_HPP_
#define CLOSEDFIT_ERROR_HPP_

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace closedfit {

enum class ErrorCode {
  kInvalidArgument,
  kDomain,            // argument outside the mathematical domain
  kDegenerate,        // vanishing denominator or zero-variance sample
  kOutOfDomain,       // estimate landed outside the parameter space
  kNonFinite,         // overflow / NaN in a sample functional
  kNoConvergence,
  kEstimationFailed,  // no admissible candidate at all
  kIo,
  kParse,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a closed form produces a nonpositive parameter. Carries the raw
// pair so callers (e.g. the profile selector) can log what was rejected.
class OutOfDomainError : public Error {
 public:
  OutOfDomainError(const std::string& message, std::array<double, 2> raw)
      : Error(ErrorCode::kOutOfDomain, message), raw_(raw) {}

  const std::array<double, 2>& raw_values() const noexcept { return raw_; }

 private:
  std::array<double, 2> raw_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, std::array<double, 2> last,
                   int iterations)
      : Error(ErrorCode::kNoConvergence, message),
        last_(last),
        iterations_(iterations) {}

  const std::array<double, 2>& last_iterate() const noexcept { return last_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::array<double, 2> last_;
  int iterations_;
};

}  // namespace closedfit

#endif  // CLOSEDFIT_ERROR_HPP_
