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

#include "leoh/constellation.hpp"

#include "leoh/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace leoh {

MotionParams::MotionParams(double satellite_rate, double earth_rate)
    : omega_s(satellite_rate), omega_e(earth_rate) {
    if (!(omega_s > 0.0) || !std::isfinite(omega_s)) {
        throw DomainError("satellite angular speed must be positive");
    }
    if (!(omega_e >= 0.0) || !std::isfinite(omega_e)) {
        throw DomainError("earth rotation rate must be non-negative");
    }
}

MotionParams MotionParams::kepler(const OrbitGeometry& geom, double earth_rate) {
    const double r = geom.orbit_radius();
    return {std::sqrt(kEarthGravitationalParameter / (r * r * r)), earth_rate};
}

Constellation::Constellation(OrbitGeometry geom, std::vector<Orbit> orbits,
                             std::vector<Satellite> satellites, double epoch)
    : geom_(geom), orbits_(std::move(orbits)), satellites_(std::move(satellites)), epoch_(epoch) {
    for (const Satellite& s : satellites_) {
        if (s.orbit >= orbits_.size()) {
            throw DomainError("satellite refers to orbit " + std::to_string(s.orbit) + " of " +
                              std::to_string(orbits_.size()));
        }
    }
    for (const Orbit& o : orbits_) {
        if (o.direction != 1 && o.direction != -1) {
            throw DomainError("orbit direction must be +1 or -1");
        }
    }
}

OrbitFrame orbit_frame(const Orbit& orbit) {
    const double ct = std::cos(orbit.theta);
    const double st = std::sin(orbit.theta);
    const double cp = std::cos(orbit.phi);
    const double sp = std::sin(orbit.phi);
    // Rz(theta) * Rx(phi) applied to the x and y unit vectors.
    return {{ct, st, 0.0}, {-st * cp, ct * cp, sp}};
}

Vec3 satellite_position_ecef(const OrbitGeometry& geom, const Orbit& orbit, double omega) {
    const OrbitFrame f = orbit_frame(orbit);
    return geom.orbit_radius() * (std::cos(omega) * f.node + std::sin(omega) * f.in_plane);
}

Constellation sample_cox(const OrbitGeometry& geom, double lambda, double mu, Rng& rng) {
    if (!(lambda > 0.0) || !(mu > 0.0)) {
        throw DomainError("lambda and mu must be positive");
    }
    const auto n_orbits = std::poisson_distribution<int>(lambda)(rng);
    std::poisson_distribution<int> per_orbit(mu);

    std::vector<Orbit> orbits;
    std::vector<Satellite> satellites;
    orbits.reserve(n_orbits);
    for (int i = 0; i < n_orbits; ++i) {
        Orbit o;
        o.theta = kPi * uniform01(rng);
        // Inverse CDF of the density sin(phi) / 2 on [0, pi].
        o.phi = std::acos(1.0 - 2.0 * uniform01(rng));
        orbits.push_back(o);

        const int n_sats = per_orbit(rng);
        for (int k = 0; k < n_sats; ++k) {
            satellites.push_back({static_cast<std::size_t>(i), kTwoPi * uniform01(rng)});
        }
    }
    return {geom, std::move(orbits), std::move(satellites), 0.0};
}

Constellation sample_polar(const OrbitGeometry& geom, int n_orbits, int n_sats_per_orbit, Rng& rng,
                           PolarSpacing spacing) {
    if (n_orbits < 1 || n_sats_per_orbit < 1) {
        throw DomainError("polar constellation needs at least one orbit and one satellite");
    }
    std::vector<Orbit> orbits;
    std::vector<Satellite> satellites;
    orbits.reserve(n_orbits);
    for (int i = 0; i < n_orbits; ++i) {
        orbits.push_back({kPi * i / n_orbits, kPi / 2.0, 1});
        const auto orbit = static_cast<std::size_t>(i);
        if (spacing == PolarSpacing::even) {
            const double phase = kTwoPi * uniform01(rng);
            for (int k = 0; k < n_sats_per_orbit; ++k) {
                satellites.push_back({orbit, normalize_angle(phase + kTwoPi * k / n_sats_per_orbit)});
            }
        } else {
            const int n = std::poisson_distribution<int>(n_sats_per_orbit)(rng);
            for (int k = 0; k < n; ++k) {
                satellites.push_back({orbit, kTwoPi * uniform01(rng)});
            }
        }
    }
    return {geom, std::move(orbits), std::move(satellites), 0.0};
}

Constellation propagate(const Constellation& c, double dt, const MotionParams& motion) {
    if (!(dt >= 0.0)) {
        throw DomainError("propagation step must be non-negative");
    }
    std::vector<Orbit> orbits = c.orbits();
    // Per orbit: does the fold flip the argument parametrization?
    std::vector<bool> folded(orbits.size(), false);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        Orbit& o = orbits[i];
        const double theta = std::fmod(o.theta + motion.omega_e * dt, kTwoPi);
        if (theta >= kPi) {
            o.theta = theta - kPi;
            o.phi = kPi - o.phi;
            o.direction = -o.direction;
            folded[i] = true;
        } else {
            o.theta = theta;
        }
    }

    std::vector<Satellite> satellites = c.satellites();
    for (Satellite& s : satellites) {
        const Orbit& before = c.orbit_of(s);
        const double advanced = s.omega + before.direction * motion.omega_s * dt;
        s.omega = normalize_angle(folded[s.orbit] ? kPi - advanced : advanced);
    }
    return {c.geometry(), std::move(orbits), std::move(satellites), c.epoch() + dt};
}

std::vector<VisibleSatellite> visible_satellites(const Constellation& c) {
    std::vector<VisibleSatellite> visible;
    const OrbitGeometry& geom = c.geometry();
    for (std::size_t i = 0; i < c.satellites().size(); ++i) {
        const Satellite& s = c.satellites()[i];
        const double d = user_satellite_distance(geom, c.orbit_of(s).phi, s.omega);
        if (d <= geom.gamma()) {
            visible.push_back({i, d});
        }
    }
    std::sort(visible.begin(), visible.end(), [](const VisibleSatellite& a, const VisibleSatellite& b) {
        return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
    });
    return visible;
}

void to_json(nlohmann::json& j, const Constellation& c) {
    const OrbitGeometry& g = c.geometry();
    j = nlohmann::json::object();
    j["geom"] = {{"r_e", g.earth_radius()}, {"r_o", g.orbit_radius()}, {"gamma", g.gamma()}};
    j["epoch"] = c.epoch();
    auto orbits = nlohmann::json::array();
    for (const Orbit& o : c.orbits()) {
        nlohmann::json entry = {{"theta", o.theta}, {"phi", o.phi}};
        if (o.direction != 1) {
            entry["direction"] = o.direction;
        }
        orbits.push_back(std::move(entry));
    }
    j["orbits"] = std::move(orbits);
    auto sats = nlohmann::json::array();
    for (const Satellite& s : c.satellites()) {
        sats.push_back({{"orbit", s.orbit}, {"omega", s.omega}});
    }
    j["satellites"] = std::move(sats);
}

Constellation constellation_from_json(const nlohmann::json& j) {
    try {
        const auto& g = j.at("geom");
        OrbitGeometry geom(g.at("r_e").get<double>(), g.at("r_o").get<double>(),
                           g.at("gamma").get<double>());
        std::vector<Orbit> orbits;
        for (const auto& o : j.at("orbits")) {
            orbits.push_back({o.at("theta").get<double>(), o.at("phi").get<double>(),
                              o.value("direction", 1)});
        }
        std::vector<Satellite> sats;
        for (const auto& s : j.at("satellites")) {
            sats.push_back({s.at("orbit").get<std::size_t>(), s.at("omega").get<double>()});
        }
        return {geom, std::move(orbits), std::move(sats), j.at("epoch").get<double>()};
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed constellation JSON: ") + e.what());
    }
}

} // namespace leoh
