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

// Experiment configuration: one YAML file holds every knob of a run.
//
// Lengths are given in km (`*_km` keys), powers and gains in dB, and angles as
// strings with a unit suffix ("90deg", "1.5708rad"). Unknown keys are errors.

#include "leoh/analytics.hpp"
#include "leoh/channel.hpp"
#include "leoh/constellation.hpp"
#include "leoh/geometry.hpp"
#include "leoh/quadrature.hpp"
#include "leoh/simulator.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace leoh {

struct GeometryConfig {
    double earth_radius_km = 6371.0;
    double altitude_km = 600.0;
    double gamma_km = 900.0;

    OrbitGeometry geometry() const;
    friend bool operator==(const GeometryConfig&, const GeometryConfig&) = default;
};

struct CoxConfig {
    double lambda = 30.0;
    double mu = 20.0;

    CoxParams params() const { return {lambda, mu}; }
    friend bool operator==(const CoxConfig&, const CoxConfig&) = default;
};

struct PolarConfig {
    int n_orbits = 20;
    int n_sats_per_orbit = 30;
    PolarSpacing spacing = PolarSpacing::even;

    friend bool operator==(const PolarConfig&, const PolarConfig&) = default;
};

struct LinkConfig {
    double p_dbm = 30.0;
    double g_db = 20.0;
    double alpha = 2.0;
    double noise_density_dbm_hz = -174.0;
    double bandwidth_hz = 20e6;
    int nakagami_m = 1;

    LinkBudget link() const;
    NakagamiFading fading() const { return NakagamiFading(nakagami_m); }
    friend bool operator==(const LinkConfig&, const LinkConfig&) = default;
};

struct MotionConfig {
    std::optional<double> omega_s; ///< rad/s; Keplerian rate when unset
    double omega_e = kEarthRotationRate;
    bool include_earth_rotation = false;

    MotionParams motion(const OrbitGeometry& geom) const;
    friend bool operator==(const MotionConfig&, const MotionConfig&) = default;
};

struct SchemeConfig {
    bool adaptive = false;
    int bits_per_symbol = 1;
    double tau_db = 0.0;

    ModulationScheme scheme() const;
    friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

struct SimBlock {
    std::optional<std::int64_t> trials; ///< per-metric default when unset
    std::uint64_t seed = 1;
    std::optional<double> time_step_s;
    double confidence_level = 0.95;
    int threads = 0;

    friend bool operator==(const SimBlock&, const SimBlock&) = default;
};

struct SweepConfig {
    std::string parameter;
    std::vector<double> values;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct OutputConfig {
    std::string path; ///< empty: standard output
    std::string format = "csv";

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ExperimentConfig {
    GeometryConfig geometry;
    CoxConfig cox;
    PolarConfig polar;
    LinkConfig link;
    MotionConfig motion;
    SchemeConfig scheme;
    double inclination = kPi / 2.0; ///< pass block, rad
    std::vector<double> d_grid_s;   ///< delay block; empty: 20 points below the wraparound limit
    SimBlock sim;
    QuadratureSpec quadrature;
    std::optional<SweepConfig> sweep;
    OutputConfig output;
    double z_threshold = 3.0; ///< compare block

    /// SimConfig for a metric whose default trial count is `default_trials`.
    SimConfig sim_config(std::int64_t default_trials) const;

    /// Delay grid to evaluate: d_grid_s, or the default grid.
    std::vector<double> delay_grid() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Names accepted by sweep.parameter.
const std::vector<std::string>& sweep_parameters();

/// Copy of `config` with a sweep parameter set to `value`.
ExperimentConfig with_parameter(const ExperimentConfig& config, const std::string& parameter, double value);

/// Parses YAML text. Throws ConfigError naming the line and field at fault.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");

ExperimentConfig load_config(const std::string& path);

/// YAML for the fully resolved config; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

/// Parses "90deg" or "1.2rad" into radians.
double parse_angle(const std::string& text);

} // namespace leoh
