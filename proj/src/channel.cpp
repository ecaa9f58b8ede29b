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

#include "leoh/channel.hpp"

#include "leoh/error.hpp"

#include <cmath>
#include <random>
#include <string>

namespace leoh {

double noise_power_from_density(double density_dbm_per_hz, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) {
        throw DomainError("bandwidth must be positive");
    }
    return dbm_to_watts(density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz));
}

LinkBudget::LinkBudget(double transmit_power_w, double gain, double alpha, double noise_power_w,
                       double bandwidth_hz)
    : p_(transmit_power_w), g_(gain), alpha_(alpha), noise_(noise_power_w), bandwidth_(bandwidth_hz) {
    if (!(p_ > 0.0) || !(g_ > 0.0) || !(noise_ > 0.0) || !(bandwidth_ > 0.0)) {
        throw DomainError("link budget powers, gain and bandwidth must be positive");
    }
    if (!(alpha_ >= 2.0)) {
        throw DomainError("path loss exponent must be at least 2");
    }
}

LinkBudget LinkBudget::from_db(double transmit_power_dbm, double gain_db, double alpha,
                               double noise_density_dbm_per_hz, double bandwidth_hz) {
    return {dbm_to_watts(transmit_power_dbm), db_to_linear(gain_db), alpha,
            noise_power_from_density(noise_density_dbm_per_hz, bandwidth_hz), bandwidth_hz};
}

NakagamiFading::NakagamiFading(int m) : m_(m) {
    if (m < 1) {
        throw DomainError("Nakagami shape m must be an integer >= 1, got " + std::to_string(m));
    }
}

double fading_ccdf(const NakagamiFading& fading, double x) {
    if (!(x >= 0.0)) {
        throw DomainError("fading CCDF argument must be non-negative");
    }
    const double mx = fading.m() * x;
    if (fading.m() == 1) {
        return std::exp(-mx);
    }
    if (mx < 600.0) {
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < fading.m(); ++k) {
            term *= mx / k;
            sum += term;
        }
        return std::exp(-mx) * sum;
    }
    // Large arguments: sum the terms in log space so (mx)^k / k! cannot overflow.
    double sum = 0.0;
    const double log_mx = std::log(mx);
    for (int k = 0; k < fading.m(); ++k) {
        sum += std::exp(k * log_mx - mx - std::lgamma(k + 1.0));
    }
    return sum;
}

double sample_fading(const NakagamiFading& fading, Rng& rng) {
    return std::gamma_distribution<double>(fading.m(), 1.0 / fading.m())(rng);
}

double snr(const LinkBudget& link, double h, double distance) {
    if (!(distance >= 1.0)) {
        throw DomainError("link distance must be at least 1 m");
    }
    return link.snr_at_one_meter() * h * std::pow(distance, -link.alpha());
}

} // namespace leoh
