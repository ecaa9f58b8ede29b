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

// Closed-form performance metrics of the orbit/satellite Cox model, evaluated by
// adaptive quadrature. Inclination integrals are written in the offset variable
// x = |phi - pi/2| in [0, cap], where cap is the cap half-angle (xi for the
// communication range, kappa(u) for a smaller radius u).

#include "leoh/channel.hpp"
#include "leoh/constellation.hpp"
#include "leoh/geometry.hpp"
#include "leoh/quadrature.hpp"

#include <variant>

namespace leoh {

/// Mean number of orbits (lambda) and mean satellites per orbit (mu).
class CoxParams {
public:
    CoxParams(double lambda, double mu);

    double lambda() const noexcept { return lambda_; }
    double mu() const noexcept { return mu_; }

    friend bool operator==(const CoxParams&, const CoxParams&) = default;

private:
    double lambda_;
    double mu_;
};

/// Fixed modulation: `bits_per_symbol` bits per second per Hz whenever SNR > tau.
struct FixedRate {
    int bits_per_symbol = 1;
    double tau = 1.0;
};

/// Rate log2(1 + SNR).
struct AdaptiveRate {};

using ModulationScheme = std::variant<FixedRate, AdaptiveRate>;

/// lambda * sin(xi): mean number of orbits that cross the cap.
double expected_visible_orbits(const CoxParams& params, double xi);

/// Integral over [0, cap] of cos(x) * arcsin(sqrt(1 - cos^2(cap) sec^2(x))).
double cap_integral(double cap, const QuadratureSpec& quad = {});

/// Mean number of satellites within gamma: (lambda mu / pi) * cap_integral(xi).
double expected_visible_satellites(const CoxParams& params, const OrbitGeometry& geom,
                                   const QuadratureSpec& quad = {});

/// Long-run fraction of time with at least one satellite within gamma.
double harvest_time_fraction(const CoxParams& params, const OrbitGeometry& geom,
                             const QuadratureSpec& quad = {});

/// Expected bits uploaded to one satellite during a full pass over the cap on an
/// orbit of inclination phi. Throws OutOfCap when the orbit misses the cap.
double data_per_pass(double phi, const OrbitGeometry& geom, const LinkBudget& link,
                     const NakagamiFading& fading, const MotionParams& motion,
                     const ModulationScheme& scheme, const QuadratureSpec& quad = {});

/// E[log2(1 + mean_snr * H)] in bit/s/Hz, as the integral over v >= 0 of
/// P(H > (2^v - 1) / mean_snr).
double ergodic_rate(const NakagamiFading& fading, double mean_snr, const QuadratureSpec& quad = {});

/// Void probability of a single orbit at offset x in a cap of half-angle `cap`:
/// exp(-(mu / pi) * arcsin(sqrt(1 - cos^2(cap) sec^2(x)))).
double orbit_void_probability(double mu, double cap, double offset);

/// P(no satellite within distance u), u in [r_a, horizon range].
double nearest_void_probability(const CoxParams& params, const OrbitGeometry& geom, double u,
                                const QuadratureSpec& quad = {});

/// Density of the distance to the nearest satellite at u in [r_a, horizon range].
/// Integrates to 1 - nearest_void_probability(gamma) over [r_a, gamma].
double nearest_distance_density(const CoxParams& params, const OrbitGeometry& geom, double u,
                                const QuadratureSpec& quad = {});

/// P(SNR to the nearest satellite within gamma exceeds `threshold`).
double coverage_probability(const CoxParams& params, const OrbitGeometry& geom,
                            const LinkBudget& link, const NakagamiFading& fading, double threshold,
                            const QuadratureSpec& quad = {});

/// Mean achievable uplink rate (bit/s) to the nearest satellite within gamma;
/// zero when none is in range.
double harvesting_capacity(const CoxParams& params, const OrbitGeometry& geom,
                           const LinkBudget& link, const NakagamiFading& fading,
                           const QuadratureSpec& quad = {});

/// Largest delay (2 pi - 2 xi) / omega_s for which the delay CDF closed form holds.
double delay_wraparound_limit(const OrbitGeometry& geom, const MotionParams& motion);

/// P(D <= d) for the wait until a satellite first comes within gamma. At d = 0 this
/// equals harvest_time_fraction. Throws OutOfValidity for d >= delay_wraparound_limit.
double delay_cdf(const CoxParams& params, const OrbitGeometry& geom, const MotionParams& motion,
                 double d, const QuadratureSpec& quad = {});

double zero_delay_probability(const CoxParams& params, const OrbitGeometry& geom,
                              const QuadratureSpec& quad = {});

/// exp(-lambda sin(xi)): no orbit crosses the cap.
double infinite_delay_probability(const CoxParams& params, const OrbitGeometry& geom);

/// Cox intensities whose mean visible orbit and satellite counts equal those of
/// a polar constellation with `polar_lambda` planes of `polar_mu` satellites.
/// Throws DegenerateGeometry when xi = 0.
CoxParams moment_match_polar_to_cox(double polar_lambda, double polar_mu, const OrbitGeometry& geom,
                                    const QuadratureSpec& quad = {});

struct MomentMatchResiduals {
    double orbits;     ///< lambda_bar sin(xi) - polar_lambda
    double satellites; ///< E[N](lambda_bar, mu_bar) - polar_lambda polar_mu xi / pi
};

MomentMatchResiduals moment_match_residuals(double polar_lambda, double polar_mu,
                                            const CoxParams& matched, const OrbitGeometry& geom,
                                            const QuadratureSpec& quad = {});

} // namespace leoh
