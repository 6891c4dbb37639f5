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

#include "core/specfun.hpp"

#include <cmath>

namespace phl::specfun {

namespace {

constexpr long kMaxTerms = 1000000;
constexpr double kRelTerm = 1e-15;

bool nonpositive_integer(double x) {
    return x <= 0.0 && std::abs(x - std::nearbyint(x)) < 1e-12;
}

SeriesResult sum_series(const std::vector<double>& upper, const std::vector<double>& lower, double z) {
    if (std::abs(z) >= 1.0)
        throw std::invalid_argument("hypergeometric series requires |z| < 1");
    for (double c : lower)
        if (nonpositive_integer(c))
            throw std::invalid_argument("hypergeometric series: lower parameter is a nonpositive integer");

    double sum = 1.0, comp = 0.0;  // Kahan compensation
    double term = 1.0;
    for (long n = 0; n < kMaxTerms; ++n) {
        double ratio = z / double(n + 1);
        for (double a : upper) ratio *= a + double(n);
        for (double c : lower) ratio /= c + double(n);
        term *= ratio;
        if (!std::isfinite(term)) throw NumericsError("hypergeometric series overflowed");

        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        if (std::abs(term) < kRelTerm * std::abs(sum)) return {sum, true, n + 1};
    }
    throw NumericsError("hypergeometric series did not converge within 1e6 terms");
}

} // namespace

SeriesResult hyp2f1(double a, double b, double c, double z) {
    return sum_series({a, b}, {c}, z);
}

SeriesResult hyp_pfq(const std::vector<double>& upper, const std::vector<double>& lower, double z) {
    if (upper.size() != lower.size() + 1)
        throw std::invalid_argument("hyp_pfq: implemented for p = q + 1 only");
    return sum_series(upper, lower, z);
}

} // namespace phl::specfun
