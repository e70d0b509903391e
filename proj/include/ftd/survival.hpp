/*
   Copyright 2026 The ftd-pricer Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <string>

namespace ftd {

/// One credit name in the basket. Times are in years, the hazard rate is a
/// constant per-year default intensity.
struct CreditName {
    std::string id;
    double hazard_rate = 0.0;  // > 0
    double recovery = 0.0;     // in [0, 1)
};

/// P(T > t) = exp(-h*t) under a constant hazard rate.
/// Throws std::domain_error for h <= 0 or t < 0.
double survival_prob(double hazard, double t);

/// P(T <= t) = 1 - exp(-h*t).
double default_cdf(double hazard, double t);

/// Inverse of default_cdf in t: the default time with cumulative
/// probability u, i.e. -ln(1-u)/h. Accepts u in [0, 1); u = 1 would map to
/// an infinite default time and is rejected.
double invert_default_time(double u, double hazard);

}  // namespace ftd
