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

#include "closedfit/error.hpp"

namespace closedfit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kDomain:
      return "domain error";
    case ErrorCode::kDegenerate:
      return "degenerate sample";
    case ErrorCode::kOutOfDomain:
      return "estimate out of domain";
    case ErrorCode::kNonFinite:
      return "non-finite statistic";
    case ErrorCode::kNoConvergence:
      return "no convergence";
    case ErrorCode::kEstimationFailed:
      return "estimation failed";
    case ErrorCode::kIo:
      return "i/o error";
    case ErrorCode::kParse:
      return "parse error";
  }
  return "unknown error";
}

}  // namespace closedfit
