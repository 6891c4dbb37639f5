// Copyright 2026 The phonolase authors
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

#ifndef PHONOLASE_CORE_SPECFUN_HPP
#define PHONOLASE_CORE_SPECFUN_HPP

#include <vector>

#include "core/types.hpp"

namespace phl::specfun {

struct SeriesResult {
    double value = 0.0;
    bool converged = false;
    long terms = 0;
};

/// Gauss hypergeometric 2F1(a,b;c;z) by direct series with term recurrence
/// and Kahan-compensated summation.  Series-only: requires |z| < 1 and c not
/// a nonpositive integer; throws NumericsError / std::invalid_argument
/// otherwise, and NumericsError when 1e6 terms do not converge.
SeriesResult hyp2f1(double a, double b, double c, double z);

/// Generalized pFq with p = q+1 (the convergent |z| < 1 case).
SeriesResult hyp_pfq(const std::vector<double>& upper, const std::vector<double>& lower, double z);

} // namespace phl::specfun

#endif
