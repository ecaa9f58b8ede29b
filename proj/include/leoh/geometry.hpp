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

#pragma once

#include <cmath>
#include <numbers>

namespace leoh {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2*pi).
double normalize_angle(double radians);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Earth/orbit/range triple that every formula is built on. All lengths in meters.
///
/// The typical user sits at (0, 0, r_e). Orbits are circles of radius r_o centered
/// at the origin, and a satellite is reachable when its distance to the user is at
/// most gamma, which must lie in [r_o - r_e, sqrt(r_o^2 - r_e^2)].
class OrbitGeometry {
public:
    OrbitGeometry(double earth_radius, double orbit_radius, double gamma);

    static OrbitGeometry from_altitude(double earth_radius, double altitude, double gamma) {
        return {earth_radius, earth_radius + altitude, gamma};
    }

    double earth_radius() const noexcept { return earth_radius_; }
    double orbit_radius() const noexcept { return orbit_radius_; }
    double gamma() const noexcept { return gamma_; }
    double altitude() const noexcept { return orbit_radius_ - earth_radius_; }
    /// Horizon distance sqrt(r_o^2 - r_e^2), the largest admissible range.
    double horizon_range() const noexcept;

    /// Position of the typical user.
    Vec3 user_position() const noexcept { return {0.0, 0.0, earth_radius_}; }

    friend bool operator==(const OrbitGeometry&, const OrbitGeometry&) = default;

private:
    double earth_radius_;
    double orbit_radius_;
    double gamma_;
};

/// Polar half-angle of the communication cap seen from the Earth center.
double max_azimuth_xi(const OrbitGeometry& geom);

/// Cap half-angle for an arbitrary range u in [r_a, horizon_range].
/// Throws OutOfRange outside that interval.
double kappa(const OrbitGeometry& geom, double u);

/// arcsin(sqrt(1 - cos^2(cap) sec^2(offset))) for offset in [0, cap]: half the angular
/// extent of the arc that an orbit at angular offset `offset` from the overhead
/// great circle cuts out of a cap of half-angle `cap`.
///
/// `gap` is cap - offset, passed separately so callers that know it exactly (e.g.
/// after a substitution clustering nodes at the tangency point) keep full precision.
double cap_arc_half_angle(double cap, double offset, double gap);
inline double cap_arc_half_angle(double cap, double offset) {
    return cap_arc_half_angle(cap, offset, cap - offset);
}

/// Half the angular extent of the visible arc of an orbit with inclination phi.
/// Throws OutOfCap when |phi - pi/2| > xi (noise within 1e-12 of tangency clamps to 0).
double visible_arc_half_angle(const OrbitGeometry& geom, double phi);

/// Distance from the typical user to a satellite with inclination phi, argument omega.
double user_satellite_distance(const OrbitGeometry& geom, double phi, double omega);

bool in_cap(const OrbitGeometry& geom, double phi, double omega);

} // namespace leoh
