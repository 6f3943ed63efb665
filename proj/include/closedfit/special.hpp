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

#ifndef CLOSEDFIT_SPECIAL_HPP_
#define CLOSEDFIT_SPECIAL_HPP_

namespace closedfit {

// Scalar special functions on the positive half-line. All three throw
// Error(kDomain) for x <= 0 or non-finite x; poles are never returned.

/// ln Gamma(x) by upward shifting to x >= 10 followed by the Stirling series.
double log_gamma(double x);

/// psi(x) = d/dx ln Gamma(x).
double digamma(double x);

/// psi'(x).
double trigamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double log_beta(double a, double b);

}  // namespace closedfit

#endif  // CLOSEDFIT_SPECIAL_HPP_
