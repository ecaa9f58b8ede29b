/*
 *    Copyright 2026 The leoharvest Authors
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#include "leoh/geometry.hpp"

#include "leoh/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace leoh {

namespace {

// Relative slack on range checks, so a horizon range computed by the caller with
// sqrt() is still accepted.
constexpr double kRangeSlack = 1e-12;

// Negative sqrt arguments down to this magnitude are rounding noise at tangency.
constexpr double kTangencyNoise = 1e-12;

} // namespace

double normalize_angle(double radians) {
    double wrapped = std::fmod(radians, kTwoPi);
    if (wrapped < 0.0) {
        wrapped += kTwoPi;
    }
    // fmod of a tiny negative value can round back up to exactly 2*pi.
    return wrapped >= kTwoPi ? 0.0 : wrapped;
}

OrbitGeometry::OrbitGeometry(double earth_radius, double orbit_radius, double gamma)
    : earth_radius_(earth_radius), orbit_radius_(orbit_radius), gamma_(gamma) {
    if (!(earth_radius > 0.0) || !std::isfinite(earth_radius)) {
        throw DomainError("earth radius must be positive and finite");
    }
    if (!(orbit_radius > earth_radius) || !std::isfinite(orbit_radius)) {
        throw DomainError("orbit radius must exceed the earth radius");
    }
    const double lo = altitude();
    const double hi = horizon_range();
    if (!(gamma >= lo * (1.0 - kRangeSlack)) || !(gamma <= hi * (1.0 + kRangeSlack))) {
        throw DomainError("communication range " + std::to_string(gamma) + " m outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

double OrbitGeometry::horizon_range() const noexcept {
    return std::sqrt((orbit_radius_ - earth_radius_) * (orbit_radius_ + earth_radius_));
}

namespace {

double cap_angle_for_range(double re, double ro, double u) {
    // (re^2 + ro^2 - u^2) / (2 re ro) written as 1 - ((u^2 - (ro - re)^2) / (2 re ro))
    // so that u close to the altitude does not cancel.
    const double ra = ro - re;
    const double deficit = (u - ra) * (u + ra) / (2.0 * re * ro);
    const double c = std::clamp(1.0 - deficit, -1.0, 1.0);
    // acos near 1 loses digits; 2*asin(sqrt(deficit/2)) is the same angle.
    return 2.0 * std::asin(std::sqrt(std::max(0.0, 1.0 - c) / 2.0));
}

} // namespace

double max_azimuth_xi(const OrbitGeometry& geom) {
    return cap_angle_for_range(geom.earth_radius(), geom.orbit_radius(), geom.gamma());
}

double kappa(const OrbitGeometry& geom, double u) {
    const double lo = geom.altitude();
    const double hi = geom.horizon_range();
    if (!(u >= lo * (1.0 - kRangeSlack)) || !(u <= hi * (1.0 + kRangeSlack))) {
        throw OutOfRange("range " + std::to_string(u) + " m outside [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    }
    return cap_angle_for_range(geom.earth_radius(), geom.orbit_radius(), std::clamp(u, lo, hi));
}

double cap_arc_half_angle(double cap, double offset, double gap) {
    // 1 - cos^2(cap)/cos^2(offset) = sin(cap - offset) sin(cap + offset) / cos^2(offset)
    const double c = std::cos(offset);
    const double s = std::sin(gap) * std::sin(cap + offset) / (c * c);
    if (s <= 0.0) {
        return 0.0;
    }
    return std::asin(std::sqrt(std::min(s, 1.0)));
}

double visible_arc_half_angle(const OrbitGeometry& geom, double phi) {
    const double xi = max_azimuth_xi(geom);
    const double offset = std::abs(phi - kPi / 2.0);
    const double c = std::cos(offset);
    const double s = std::sin(xi - offset) * std::sin(xi + offset) / (c * c);
    if (s < 0.0) {
        if (s >= -kTangencyNoise) {
            return 0.0;
        }
        throw OutOfCap("inclination " + std::to_string(phi) + " rad does not meet the cap (xi = " +
                       std::to_string(xi) + ")");
    }
    return std::asin(std::sqrt(std::min(s, 1.0)));
}

double user_satellite_distance(const OrbitGeometry& geom, double phi, double omega) {
    const double re = geom.earth_radius();
    const double ro = geom.orbit_radius();
    const double sq = ro * ro - 2.0 * re * ro * std::sin(omega) * std::sin(phi) + re * re;
    return std::sqrt(std::max(sq, 0.0));
}

bool in_cap(const OrbitGeometry& geom, double phi, double omega) {
    return user_satellite_distance(geom, phi, omega) <= geom.gamma();
}

} // namespace leoh
