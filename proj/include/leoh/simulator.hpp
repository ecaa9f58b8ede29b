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

// Monte Carlo estimators for the analytic metrics. Distances come from
// Earth-centered Cartesian positions and arc endpoints from root finding, so
// the estimators share no formula with the analytics module.
//
// Trials run in fixed blocks of kTrialBlock. Block b draws from
// stream_rng(base_seed, b) and blocks are summed in order, so results do not
// depend on the number of worker threads.

#include "leoh/analytics.hpp"
#include "leoh/channel.hpp"
#include "leoh/constellation.hpp"
#include "leoh/geometry.hpp"
#include "leoh/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace leoh {

inline constexpr std::int64_t kTrialBlock = 1024;

struct SimConfig {
    std::int64_t trials = 100000;
    std::uint64_t base_seed = 1;
    /// Pass simulation step in seconds; pass duration / 1000 when unset.
    std::optional<double> time_step;
    /// Rotates orbit longitudes during the delay wait. Distances to the user on
    /// the rotation axis are unchanged by this, so it does not alter results.
    bool include_earth_rotation = false;
    double confidence_level = 0.95;
    /// Worker threads; 0 picks hardware concurrency. LEOH_THREADS caps either.
    int threads = 0;

    /// Throws DomainError on trials < 1, time_step <= 0 or a level outside (0, 1).
    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct MetricEstimate {
    std::string metric;
    double mean = 0.0;
    double half_width = 0.0; ///< normal-approximation half-width at the configured level
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Number of workers actually used for `sim`.
int worker_count(const SimConfig& sim);

/// Runs `trial` for every trial index and returns one estimate per output slot.
/// `trial` fills all `outputs` slots of its span on every call.
std::vector<MetricEstimate> estimate_means(const std::vector<std::string>& names, const SimConfig& sim,
                                           const std::function<void(Rng&, std::span<double>)>& trial);

/// Single-output form of estimate_means.
MetricEstimate estimate_mean(const std::string& name, const SimConfig& sim,
                             const std::function<double(Rng&)>& trial);

/// Mean number of orbits crossing the cap.
MetricEstimate estimate_visible_orbits(const CoxParams& params, const OrbitGeometry& geom,
                                       const SimConfig& sim);

/// Mean number of satellites within gamma.
MetricEstimate estimate_visible_count(const CoxParams& params, const OrbitGeometry& geom,
                                      const SimConfig& sim);

/// Fraction of snapshots with at least one satellite within gamma.
MetricEstimate estimate_time_fraction(const CoxParams& params, const OrbitGeometry& geom,
                                      const SimConfig& sim);

/// Bits uploaded during one pass on an orbit of inclination phi, stepping the
/// satellite through the arc within gamma with fading redrawn every step.
MetricEstimate simulate_pass(double phi, const OrbitGeometry& geom, const LinkBudget& link,
                             const NakagamiFading& fading, const MotionParams& motion,
                             const ModulationScheme& scheme, const SimConfig& sim);

/// Same, with the fading power drawn by `sample_h`.
MetricEstimate simulate_pass(double phi, const OrbitGeometry& geom, const LinkBudget& link,
                             const MotionParams& motion, const ModulationScheme& scheme,
                             const SimConfig& sim, const std::function<double(Rng&)>& sample_h);

/// Mean rate B_w log2(1 + SNR) to the nearest satellite within gamma, 0 if none.
MetricEstimate estimate_capacity(const CoxParams& params, const OrbitGeometry& geom,
                                 const LinkBudget& link, const NakagamiFading& fading,
                                 const SimConfig& sim);

struct DelayEstimate {
    std::vector<MetricEstimate> cdf; ///< P(D <= d) for each grid point
    MetricEstimate infinite;         ///< P(D = infinity)
};

/// Empirical delay distribution from exact entry times of every satellite.
DelayEstimate estimate_delay_cdf(const CoxParams& params, const OrbitGeometry& geom,
                                 const MotionParams& motion, const std::vector<double>& d_grid,
                                 const SimConfig& sim);

/// Fraction of trials in which no satellite ever enters the cap.
MetricEstimate estimate_infinite_delay(const CoxParams& params, const OrbitGeometry& geom,
                                       const SimConfig& sim);

/// Fraction of snapshots of a polar constellation with a satellite within gamma.
MetricEstimate estimate_polar_time_fraction(int n_orbits, int n_sats_per_orbit, PolarSpacing spacing,
                                            const OrbitGeometry& geom, const SimConfig& sim);

} // namespace leoh
