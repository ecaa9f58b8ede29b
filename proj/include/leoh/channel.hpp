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

#include "leoh/rng.hpp"

#include <cmath>

namespace leoh {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Noise power in watts from a density in dBm/Hz and a bandwidth in Hz.
double noise_power_from_density(double density_dbm_per_hz, double bandwidth_hz);

/// Uplink budget in linear units: received power p * g * H * d^-alpha over noise.
class LinkBudget {
public:
    LinkBudget(double transmit_power_w, double gain, double alpha, double noise_power_w,
               double bandwidth_hz);

    /// Builds a budget from the usual dB quantities (dBm, dB, dBm/Hz).
    static LinkBudget from_db(double transmit_power_dbm, double gain_db, double alpha,
                              double noise_density_dbm_per_hz, double bandwidth_hz);

    double transmit_power() const noexcept { return p_; }
    double gain() const noexcept { return g_; }
    double alpha() const noexcept { return alpha_; }
    double noise_power() const noexcept { return noise_; }
    double bandwidth() const noexcept { return bandwidth_; }

    /// p * g / sigma^2, the mean SNR at one meter.
    double snr_at_one_meter() const noexcept { return p_ * g_ / noise_; }

private:
    double p_;
    double g_;
    double alpha_;
    double noise_;
    double bandwidth_;
};

/// Nakagami-m power fading with unit mean; m is an integer shape >= 1.
class NakagamiFading {
public:
    explicit NakagamiFading(int m = 1);
    int m() const noexcept { return m_; }

private:
    int m_;
};

/// P(H > x) = e^{-mx} sum_{k<m} (mx)^k / k!. Throws DomainError for x < 0.
double fading_ccdf(const NakagamiFading& fading, double x);

/// Gamma(shape m, scale 1/m) variate.
double sample_fading(const NakagamiFading& fading, Rng& rng);

/// Instantaneous SNR p g h d^-alpha / sigma^2. Throws DomainError for d < 1 m.
double snr(const LinkBudget& link, double h, double distance);

} // namespace leoh
