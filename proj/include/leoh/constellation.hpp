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

#include "leoh/geometry.hpp"
#include "leoh/rng.hpp"

#include "json.hpp"

#include <cstddef>
#include <vector>

namespace leoh {

inline constexpr double kEarthGravitationalParameter = 3.986004418e14; // m^3 / s^2
inline constexpr double kEarthRotationRate = 7.2921159e-5;             // rad / s

/// Orbital plane: longitude of the ascending node theta in [0, pi) and inclination
/// phi in [0, pi). `direction` is the sense in which satellites advance their
/// argument: +1 normally, -1 after an odd number of longitude folds (see propagate).
struct Orbit {
    double theta = 0.0;
    double phi = 0.0;
    int direction = 1;

    friend bool operator==(const Orbit&, const Orbit&) = default;
};

struct Satellite {
    std::size_t orbit = 0;
    double omega = 0.0;

    friend bool operator==(const Satellite&, const Satellite&) = default;
};

struct MotionParams {
    double omega_s = 0.0; ///< satellite angular speed along the orbit, rad/s
    double omega_e = 0.0; ///< Earth rotation, rad/s

    MotionParams(double satellite_rate, double earth_rate);

    /// Keplerian rate sqrt(GM / r_o^3) for a circular orbit of the given geometry.
    static MotionParams kepler(const OrbitGeometry& geom, double earth_rate = kEarthRotationRate);

    double satellite_speed(const OrbitGeometry& geom) const { return omega_s * geom.orbit_radius(); }
};

/// Immutable snapshot of orbits and satellites at a given epoch (seconds).
class Constellation {
public:
    Constellation(OrbitGeometry geom, std::vector<Orbit> orbits, std::vector<Satellite> satellites,
                  double epoch = 0.0);

    const OrbitGeometry& geometry() const noexcept { return geom_; }
    const std::vector<Orbit>& orbits() const noexcept { return orbits_; }
    const std::vector<Satellite>& satellites() const noexcept { return satellites_; }
    double epoch() const noexcept { return epoch_; }

    const Orbit& orbit_of(const Satellite& s) const { return orbits_[s.orbit]; }

    friend bool operator==(const Constellation&, const Constellation&) = default;

private:
    OrbitGeometry geom_;
    std::vector<Orbit> orbits_;
    std::vector<Satellite> satellites_;
    double epoch_;
};

/// In-plane basis of an orbit in Earth-centered coordinates: a satellite with
/// argument omega sits at r_o (cos(omega) * node + sin(omega) * normal_in_plane).
struct OrbitFrame {
    Vec3 node;
    Vec3 in_plane;
};

OrbitFrame orbit_frame(const Orbit& orbit);

/// Rotates (r_o cos w, r_o sin w, 0) by the inclination about x, then by the
/// longitude about z.
Vec3 satellite_position_ecef(const OrbitGeometry& geom, const Orbit& orbit, double omega);

/// Draws the orbit Poisson process of mean count lambda on [0, pi) x [0, pi) with
/// inclination density sin(phi) / 2, then Poisson(mu) uniform satellites per orbit.
Constellation sample_cox(const OrbitGeometry& geom, double lambda, double mu, Rng& rng);

enum class PolarSpacing {
    even,    ///< evenly spaced arguments, one uniform phase per orbit
    poisson, ///< Poisson(n) uniform arguments per orbit
};

/// n_orbits polar (phi = pi/2) planes with evenly spaced longitudes on [0, pi).
Constellation sample_polar(const OrbitGeometry& geom, int n_orbits, int n_sats_per_orbit, Rng& rng,
                           PolarSpacing spacing = PolarSpacing::even);

/// Advances every satellite by omega_s * dt along its orbit and every orbit
/// longitude by omega_e * dt. A longitude reaching pi is folded back to
/// theta - pi with inclination pi - phi; the same great circle is then traversed
/// with argument pi - omega in the opposite direction.
Constellation propagate(const Constellation& c, double dt, const MotionParams& motion);

struct VisibleSatellite {
    std::size_t index;
    double distance;
};

/// Satellites within gamma of the typical user, nearest first.
std::vector<VisibleSatellite> visible_satellites(const Constellation& c);

void to_json(nlohmann::json& j, const Constellation& c);
Constellation constellation_from_json(const nlohmann::json& j);

} // namespace leoh
