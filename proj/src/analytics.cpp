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


#include "leoh/analytics.hpp"

#include "leoh/error.hpp"

#include <cmath>
#include <string>

namespace leoh {

namespace {

// Inner integrals of nested quadratures run ten times tighter, so their rounding
// does not show up as roughness in the outer integrand.
QuadratureSpec inner_spec(const QuadratureSpec& quad) {
    QuadratureSpec inner = quad;
    inner.abs_tol = quad.abs_tol / 10.0;
    inner.rel_tol = quad.rel_tol / 10.0;
    return inner;
}

// lambda * integral over [0, cap] of cos(x) (1 - exp(-(mu / 2 pi)(2 arc(x) + extra))).
// The arc has a square-root endpoint at x = cap, hence the substitution.
double void_exponent(double lambda, double mu, double cap, double extra, const QuadratureSpec& quad) {
    auto integrand = [&](double x, double gap) {
        const double arc = cap_arc_half_angle(cap, x, gap);
        return std::cos(x) * -std::expm1(-(mu / kTwoPi) * (2.0 * arc + extra));
    };
    return lambda * integrate_sqrt_endpoint(integrand, 0.0, cap, quad);
}

// Integral over [0, cap] of gbar(x) / sqrt(1 - cos^2(cap) sec^2(x)); pi/2 in the limit cap -> 0.
double nearest_arc_integral(double mu, double cap, const QuadratureSpec& quad) {
    if (cap <= 0.0) {
        return kPi / 2.0;
    }
    auto integrand = [&](double x, double gap) {
        const double arc = cap_arc_half_angle(cap, x, gap);
        // 1 / sqrt(s) with s = sin(gap) sin(cap + x) / cos^2(x)
        return std::exp(-(mu / kPi) * arc) * std::cos(x) / std::sqrt(std::sin(gap) * std::sin(cap + x));
    };
    return integrate_sqrt_endpoint(integrand, 0.0, cap, quad);
}

double range_for_cap(const OrbitGeometry& geom, double cap) {
    const double ra = geom.altitude();
    const double h = std::sin(cap / 2.0);
    return std::sqrt(ra * ra + 4.0 * geom.earth_radius() * geom.orbit_radius() * h * h);
}

// Integral over [0, xi] of (lambda mu / pi) sin(k) V(k) J(k) w(u(k)) dk, which equals the
// integral of nearest_distance_density(u) w(u) du over [r_a, gamma] after u -> kappa.
template <class Weight>
double nearest_distance_expectation(const CoxParams& params, const OrbitGeometry& geom, Weight&& w,
                                    const QuadratureSpec& quad) {
    const QuadratureSpec inner = inner_spec(quad);
    auto integrand = [&](double k) {
        const double v = std::exp(-void_exponent(params.lambda(), params.mu(), k, 0.0, inner));
        return std::sin(k) * v * nearest_arc_integral(params.mu(), k, inner) * w(range_for_cap(geom, k));
    };
    const double scale = params.lambda() * params.mu() / kPi;
    return scale * integrate_1d(integrand, 0.0, max_azimuth_xi(geom), quad);
}

void check_delay(double d, double limit) {
    if (!(d >= 0.0)) {
        throw DomainError("delay must be non-negative");
    }
    if (!(d < limit)) {
        throw OutOfValidity("delay " + std::to_string(d) + " s at or beyond the wraparound limit " +
                            std::to_string(limit) + " s");
    }
}

} // namespace

CoxParams::CoxParams(double lambda, double mu) : lambda_(lambda), mu_(mu) {
    if (!(lambda > 0.0) || !(mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
        throw DomainError("lambda and mu must be positive and finite");
    }
}

double expected_visible_orbits(const CoxParams& params, double xi) {
    if (!(xi >= 0.0) || !(xi <= kPi / 2.0)) {
        throw DomainError("xi must lie in [0, pi/2]");
    }
    return params.lambda() * std::sin(xi);
}

double cap_integral(double cap, const QuadratureSpec& quad) {
    quad.validate();
    auto integrand = [&](double x, double gap) { return std::cos(x) * cap_arc_half_angle(cap, x, gap); };
    return integrate_sqrt_endpoint(integrand, 0.0, cap, quad);
}

double expected_visible_satellites(const CoxParams& params, const OrbitGeometry& geom,
                                   const QuadratureSpec& quad) {
    return params.lambda() * params.mu() / kPi * cap_integral(max_azimuth_xi(geom), quad);
}

double harvest_time_fraction(const CoxParams& params, const OrbitGeometry& geom,
                             const QuadratureSpec& quad) {
    quad.validate();
    return -std::expm1(-void_exponent(params.lambda(), params.mu(), max_azimuth_xi(geom), 0.0, quad));
}

double data_per_pass(double phi, const OrbitGeometry& geom, const LinkBudget& link,
                     const NakagamiFading& fading, const MotionParams& motion,
                     const ModulationScheme& scheme, const QuadratureSpec& quad) {
    quad.validate();
    const double w0 = visible_arc_half_angle(geom, phi);
    const double re = geom.earth_radius();
    const double ro = geom.orbit_radius();
    const double sin_phi = std::sin(phi);
    const double half_alpha = link.alpha() / 2.0;
    const double inv_snr1 = 1.0 / link.snr_at_one_meter();
    // d^alpha, with d measured from the middle of the pass.
    auto path_loss = [&](double w) {
        return std::pow(ro * ro - 2.0 * ro * re * std::cos(w) * sin_phi + re * re, half_alpha);
    };
    // The pass is symmetric about its midpoint: twice the half-pass integral.
    const double time_scale = 2.0 * link.bandwidth() / motion.omega_s;

    if (const auto* fixed = std::get_if<FixedRate>(&scheme)) {
        if (fixed->bits_per_symbol < 1 || !(fixed->tau > 0.0)) {
            throw DomainError("fixed modulation needs bits_per_symbol >= 1 and tau > 0");
        }
        auto integrand = [&](double w) { return fading_ccdf(fading, fixed->tau * inv_snr1 * path_loss(w)); };
        return fixed->bits_per_symbol * time_scale * integrate_1d(integrand, 0.0, w0, quad);
    }

    // Adaptive: integral over rate v of the time the SNR exceeds 2^v - 1.
    const QuadratureSpec inner = inner_spec(quad);
    const double closest = std::pow(geom.altitude(), link.alpha());
    auto bound = [&](double v) { return fading_ccdf(fading, std::expm1(v * std::log(2.0)) * inv_snr1 * closest); };
    auto over_pass = [&](double v) {
        const double threshold = std::expm1(v * std::log(2.0)) * inv_snr1;
        auto integrand = [&](double w) { return fading_ccdf(fading, threshold * path_loss(w)); };
        return integrate_1d(integrand, 0.0, w0, inner);
    };
    return time_scale * integrate_semi_infinite(over_pass, 0.0, quad, bound);
}

double ergodic_rate(const NakagamiFading& fading, double mean_snr, const QuadratureSpec& quad) {
    if (!(mean_snr > 0.0)) {
        throw DomainError("mean SNR must be positive");
    }
    auto integrand = [&](double v) { return fading_ccdf(fading, std::expm1(v * std::log(2.0)) / mean_snr); };
    return integrate_semi_infinite(integrand, 0.0, quad);
}

double orbit_void_probability(double mu, double cap, double offset) {
    return std::exp(-(mu / kPi) * cap_arc_half_angle(cap, offset));
}

double nearest_void_probability(const CoxParams& params, const OrbitGeometry& geom, double u,
                                const QuadratureSpec& quad) {
    quad.validate();
    return std::exp(-void_exponent(params.lambda(), params.mu(), kappa(geom, u), 0.0, quad));
}

double nearest_distance_density(const CoxParams& params, const OrbitGeometry& geom, double u,
                                const QuadratureSpec& quad) {
    quad.validate();
    const double k = kappa(geom, u);
    const double v = std::exp(-void_exponent(params.lambda(), params.mu(), k, 0.0, quad));
    const double scale = params.lambda() * params.mu() * u / (kPi * geom.earth_radius() * geom.orbit_radius());
    return scale * v * nearest_arc_integral(params.mu(), k, quad);
}

double coverage_probability(const CoxParams& params, const OrbitGeometry& geom,
                            const LinkBudget& link, const NakagamiFading& fading, double threshold,
                            const QuadratureSpec& quad) {
    quad.validate();
    if (!(threshold >= 0.0)) {
        throw DomainError("SNR threshold must be non-negative");
    }
    const double scale = threshold / link.snr_at_one_meter();
    auto success = [&](double u) { return fading_ccdf(fading, scale * std::pow(u, link.alpha())); };
    return nearest_distance_expectation(params, geom, success, quad);
}

double harvesting_capacity(const CoxParams& params, const OrbitGeometry& geom,
                           const LinkBudget& link, const NakagamiFading& fading,
                           const QuadratureSpec& quad) {
    quad.validate();
    const QuadratureSpec inner = inner_spec(quad);
    auto rate = [&](double u) { return ergodic_rate(fading, snr(link, 1.0, u), inner); };
    return link.bandwidth() * nearest_distance_expectation(params, geom, rate, quad);
}

double delay_wraparound_limit(const OrbitGeometry& geom, const MotionParams& motion) {
    return (kTwoPi - 2.0 * max_azimuth_xi(geom)) / motion.omega_s;
}

double delay_cdf(const CoxParams& params, const OrbitGeometry& geom, const MotionParams& motion,
                 double d, const QuadratureSpec& quad) {
    quad.validate();
    check_delay(d, delay_wraparound_limit(geom, motion));
    const double exponent =
        void_exponent(params.lambda(), params.mu(), max_azimuth_xi(geom), motion.omega_s * d, quad);
    return -std::expm1(-exponent);
}

double zero_delay_probability(const CoxParams& params, const OrbitGeometry& geom,
                              const QuadratureSpec& quad) {
    return harvest_time_fraction(params, geom, quad);
}

double infinite_delay_probability(const CoxParams& params, const OrbitGeometry& geom) {
    return std::exp(-expected_visible_orbits(params, max_azimuth_xi(geom)));
}

CoxParams moment_match_polar_to_cox(double polar_lambda, double polar_mu, const OrbitGeometry& geom,
                                    const QuadratureSpec& quad) {
    if (!(polar_lambda > 0.0) || !(polar_mu > 0.0)) {
        throw DomainError("polar constellation sizes must be positive");
    }
    const double xi = max_azimuth_xi(geom);
    if (xi == 0.0) {
        throw DegenerateGeometry("communication range equals the altitude, so the cap is empty");
    }
    const double lambda_bar = polar_lambda / std::sin(xi);
    const double mu_bar = polar_lambda * polar_mu * xi / (lambda_bar * cap_integral(xi, quad));
    return {lambda_bar, mu_bar};
}

MomentMatchResiduals moment_match_residuals(double polar_lambda, double polar_mu,
                                            const CoxParams& matched, const OrbitGeometry& geom,
                                            const QuadratureSpec& quad) {
    const double xi = max_azimuth_xi(geom);
    return {expected_visible_orbits(matched, xi) - polar_lambda,
            expected_visible_satellites(matched, geom, quad) - polar_lambda * polar_mu * xi / kPi};
}

} // namespace leoh
