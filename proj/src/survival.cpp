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

#include "ftd/survival.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ftd {

namespace {

void require_hazard(double hazard) {
    if (!(hazard > 0.0))
        throw std::domain_error("hazard rate must be > 0, got " + std::to_string(hazard));
}

}  // namespace

double survival_prob(double hazard, double t) {
    require_hazard(hazard);
    if (!(t >= 0.0)) throw std::domain_error("time must be >= 0, got " + std::to_string(t));
    return std::exp(-hazard * t);
}

double default_cdf(double hazard, double t) {
    require_hazard(hazard);
    if (!(t >= 0.0)) throw std::domain_error("time must be >= 0, got " + std::to_string(t));
    return -std::expm1(-hazard * t);
}

double invert_default_time(double u, double hazard) {
    require_hazard(hazard);
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("invert_default_time: u must lie in [0, 1), got " +
                                std::to_string(u));
    return -std::log1p(-u) / hazard;
}

}  // namespace ftd
