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


#include "leoh/simulator.hpp"

#include "leoh/error.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace leoh {

namespace {

// Running mean and sum of squared deviations (Welford), merged with Chan's formula.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0.0) {
            return;
        }
        const double total = n + o.n;
        const double delta = o.mean - mean;
        mean += delta * o.n / total;
        m2 += o.m2 + delta * delta * n * o.n / total;
        n = total;
    }
};

// Cartesian view of the typical user and the cap, shared by the estimators.
class CapField {
public:
    explicit CapField(const OrbitGeometry& geom)
        : geom_(geom), user_(geom.user_position()), gamma_sq_(geom.gamma() * geom.gamma()) {
        const double re = geom.earth_radius();
        const double ro = geom.orbit_radius();
        // An orbit can only reach the cap if sin(phi) >= (re^2 + ro^2 - gamma^2) / (2 re ro).
        // The filter is loosened slightly; the Cartesian test below decides.
        min_sin_phi_ = (re * re + ro * ro - gamma_sq_) / (2.0 * re * ro) - 1e-9;
    }

    const OrbitGeometry& geometry() const { return geom_; }

    double distance_sq(const OrbitFrame& frame, double omega) const {
        const double ro = geom_.orbit_radius();
        const Vec3 pos = (ro * std::cos(omega)) * frame.node + (ro * std::sin(omega)) * frame.in_plane;
        const Vec3 d = pos - user_;
        return d.x * d.x + d.y * d.y + d.z * d.z;
    }

    double distance(const OrbitFrame& frame, double omega) const { return std::sqrt(distance_sq(frame, omega)); }

    bool within(const OrbitFrame& frame, double omega) const { return distance_sq(frame, omega) <= gamma_sq_; }

    /// Draws the orbit process and calls on_orbit(orbit, frame) for each orbit that
    /// comes within gamma. Satellites are left to the callback.
    template <class OnOrbit>
    void sample_cap_orbits(std::poisson_distribution<int> orbit_count, Rng& rng, OnOrbit&& on_orbit) const {
        const int count = orbit_count(rng);
        for (int i = 0; i < count; ++i) {
            const double c = 1.0 - 2.0 * uniform01(rng);
            const double sin_phi = std::sqrt(std::max(0.0, 1.0 - c * c));
            if (sin_phi < min_sin_phi_) {
                continue;
            }
            const Orbit orbit{kPi * uniform01(rng), std::acos(c), 1};
            const OrbitFrame frame = orbit_frame(orbit);
            // Closest approach to the user is at omega = pi/2.
            if (!within(frame, kPi / 2.0)) {
                continue;
            }
            on_orbit(orbit, frame);
        }
    }

    /// Argument in [lo, hi] where the distance crosses gamma; the distance must be
    /// monotone on the bracket.
    double crossing(const OrbitFrame& frame, double lo, double hi) const {
        auto f = [&](double w) { return distance(frame, w) - geom_.gamma(); };
        const double flo = f(lo);
        const double fhi = f(hi);
        if (flo == 0.0) {
            return lo;
        }
        if (fhi == 0.0) {
            return hi;
        }
        std::uintmax_t iterations = 200;
        const auto root = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                            boost::math::tools::eps_tolerance<double>(),
                                                            iterations);
        return 0.5 * (root.first + root.second);
    }

private:
    OrbitGeometry geom_;
    Vec3 user_;
    double gamma_sq_;
    double min_sin_phi_;
};

// Poisson(mu) uniform satellite arguments on one orbit, passed to on_satellite.
template <class OnSatellite>
int draw_arguments(std::poisson_distribution<int> sat_count, Rng& rng, OnSatellite&& on_satellite) {
    const int n = sat_count(rng);
    for (int i = 0; i < n; ++i) {
        on_satellite(kTwoPi * uniform01(rng));
    }
    return n;
}

struct CoxDraws {
    std::poisson_distribution<int> orbits;
    std::poisson_distribution<int> satellites;

    explicit CoxDraws(const CoxParams& p) : orbits(p.lambda()), satellites(p.mu()) {}
};

double z_value(double confidence_level) {
    const boost::math::normal standard;
    return boost::math::quantile(standard, 0.5 + confidence_level / 2.0);
}

MetricEstimate finish(const std::string& name, const Moments& m, const SimConfig& sim) {
    MetricEstimate e;
    e.metric = name;
    e.mean = m.mean;
    e.trials = sim.trials;
    e.seed = sim.base_seed;
    if (m.n > 1.0) {
        e.std_error = std::sqrt(m.m2 / (m.n - 1.0) / m.n);
    }
    e.half_width = z_value(sim.confidence_level) * e.std_error;
    return e;
}

} // namespace

void SimConfig::validate() const {
    if (trials < 1) {
        throw DomainError("trials must be at least 1");
    }
    if (time_step && !(*time_step > 0.0)) {
        throw DomainError("time_step must be positive");
    }
    if (!(confidence_level > 0.0) || !(confidence_level < 1.0)) {
        throw DomainError("confidence_level must lie in (0, 1)");
    }
    if (threads < 0) {
        throw DomainError("threads must be non-negative");
    }
}

int worker_count(const SimConfig& sim) {
    int n = sim.threads > 0 ? sim.threads : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    if (const char* env = std::getenv("LEOH_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) {
            n = std::min<long>(n, cap);
        }
    }
    return n;
}

std::vector<MetricEstimate> estimate_means(const std::vector<std::string>& names, const SimConfig& sim,
                                           const std::function<void(Rng&, std::span<double>)>& trial) {
    sim.validate();
    const std::size_t outputs = names.size();
    const std::int64_t chunks = (sim.trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<Moments> partial(static_cast<std::size_t>(chunks) * outputs);

    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        std::vector<double> out(outputs);
        try {
            for (std::int64_t c = next++; c < chunks; c = next++) {
                Moments* acc = &partial[static_cast<std::size_t>(c) * outputs];
                const std::int64_t end = std::min(sim.trials, (c + 1) * kTrialBlock);
                Rng rng = stream_rng(sim.base_seed, static_cast<std::uint64_t>(c));
                for (std::int64_t i = c * kTrialBlock; i < end; ++i) {
                    trial(rng, out);
                    for (std::size_t k = 0; k < outputs; ++k) {
                        acc[k].add(out[k]);
                    }
                }
            }
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = chunks;
        }
    };

    const int workers = static_cast<int>(std::min<std::int64_t>(worker_count(sim), chunks));
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < workers; ++t) {
            pool.emplace_back(work);
        }
        work();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::vector<MetricEstimate> result;
    for (std::size_t k = 0; k < outputs; ++k) {
        Moments total;
        for (std::int64_t c = 0; c < chunks; ++c) {
            total.merge(partial[static_cast<std::size_t>(c) * outputs + k]);
        }
        result.push_back(finish(names[k], total, sim));
    }
    return result;
}

MetricEstimate estimate_mean(const std::string& name, const SimConfig& sim,
                             const std::function<double(Rng&)>& trial) {
    return estimate_means({name}, sim, [&](Rng& rng, std::span<double> out) { out[0] = trial(rng); })[0];
}

MetricEstimate estimate_visible_orbits(const CoxParams& params, const OrbitGeometry& geom,
                                       const SimConfig& sim) {
    const CapField field(geom);
    const CoxDraws draws(params);
    return estimate_mean("visible_orbits", sim, [&](Rng& rng) {
        int count = 0;
        field.sample_cap_orbits(draws.orbits, rng, [&](const Orbit&, const OrbitFrame&) { ++count; });
        return static_cast<double>(count);
    });
}

MetricEstimate estimate_visible_count(const CoxParams& params, const OrbitGeometry& geom,
                                      const SimConfig& sim) {
    const CapField field(geom);
    const CoxDraws draws(params);
    return estimate_mean("visible_sats", sim, [&](Rng& rng) {
        int count = 0;
        field.sample_cap_orbits(draws.orbits, rng, [&](const Orbit&, const OrbitFrame& frame) {
            draw_arguments(draws.satellites, rng, [&](double w) { count += field.within(frame, w) ? 1 : 0; });
        });
        return static_cast<double>(count);
    });
}

MetricEstimate estimate_time_fraction(const CoxParams& params, const OrbitGeometry& geom,
                                      const SimConfig& sim) {
    const CapField field(geom);
    const CoxDraws draws(params);
    return estimate_mean("time_fraction", sim, [&](Rng& rng) {
        bool covered = false;
        field.sample_cap_orbits(draws.orbits, rng, [&](const Orbit&, const OrbitFrame& frame) {
            draw_arguments(draws.satellites, rng, [&](double w) { covered = covered || field.within(frame, w); });
        });
        return covered ? 1.0 : 0.0;
    });
}

MetricEstimate simulate_pass(double phi, const OrbitGeometry& geom, const LinkBudget& link,
                             const NakagamiFading& fading, const MotionParams& motion,
                             const ModulationScheme& scheme, const SimConfig& sim) {
    return simulate_pass(phi, geom, link, motion, scheme, sim,
                         [&fading](Rng& rng) { return sample_fading(fading, rng); });
}

MetricEstimate simulate_pass(double phi, const OrbitGeometry& geom, const LinkBudget& link,
                             const MotionParams& motion, const ModulationScheme& scheme,
                             const SimConfig& sim, const std::function<double(Rng&)>& sample_h) {
    sim.validate();
    const CapField field(geom);
    const OrbitFrame frame = orbit_frame(Orbit{0.0, phi, 1});
    if (!field.within(frame, kPi / 2.0)) {
        throw OutOfCap("inclination " + std::to_string(phi) + " rad: orbit never comes within range");
    }
    // Distance falls on [-pi/2, pi/2] and rises on [pi/2, 3pi/2].
    const double enter = field.crossing(frame, -kPi / 2.0, kPi / 2.0);
    const double leave = field.crossing(frame, kPi / 2.0, 3.0 * kPi / 2.0);
    const double duration = (leave - enter) / motion.omega_s;

    const double step = sim.time_step.value_or(duration / 1000.0);
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(duration / step)));
    const double dt = duration / static_cast<double>(steps);
    // Mean SNR at each step midpoint; only the fading changes between trials.
    std::vector<double> mean_snr(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double w = enter + motion.omega_s * dt * (static_cast<double>(i) + 0.5);
        mean_snr[i] = snr(link, 1.0, std::max(1.0, field.distance(frame, w)));
    }

    const auto* fixed = std::get_if<FixedRate>(&scheme);
    const double bw_dt = link.bandwidth() * dt;
    return estimate_mean("data_per_pass", sim, [&](Rng& rng) {
        double bits = 0.0;
        for (double s : mean_snr) {
            const double value = sample_h(rng) * s;
            if (fixed) {
                bits += value > fixed->tau ? fixed->bits_per_symbol * bw_dt : 0.0;
            } else {
                bits += bw_dt * std::log2(1.0 + value);
            }
        }
        return bits;
    });
}

MetricEstimate estimate_capacity(const CoxParams& params, const OrbitGeometry& geom,
                                 const LinkBudget& link, const NakagamiFading& fading,
                                 const SimConfig& sim) {
    const CapField field(geom);
    const CoxDraws draws(params);
    const double gamma_sq = geom.gamma() * geom.gamma();
    return estimate_mean("capacity", sim, [&](Rng& rng) {
        double nearest_sq = std::numeric_limits<double>::infinity();
        field.sample_cap_orbits(draws.orbits, rng, [&](const Orbit&, const OrbitFrame& frame) {
            draw_arguments(draws.satellites, rng,
                           [&](double w) { nearest_sq = std::min(nearest_sq, field.distance_sq(frame, w)); });
        });
        if (!(nearest_sq <= gamma_sq)) {
            return 0.0;
        }
        const double h = sample_fading(fading, rng);
        return link.bandwidth() * std::log2(1.0 + snr(link, h, std::sqrt(nearest_sq)));
    });
}

namespace {

// Earliest time any satellite is within gamma; infinity if none ever is.
double sample_delay(const CapField& field, const CoxDraws& draws, const MotionParams& motion, Rng& rng) {
    double delay = std::numeric_limits<double>::infinity();
    field.sample_cap_orbits(draws.orbits, rng, [&](const Orbit&, const OrbitFrame& frame) {
        double enter = 0.0;
        bool have_enter = false;
        draw_arguments(draws.satellites, rng, [&](double w) {
            if (field.within(frame, w)) {
                delay = 0.0;
                return;
            }
            if (!have_enter) {
                enter = field.crossing(frame, -kPi / 2.0, kPi / 2.0);
                have_enter = true;
            }
            delay = std::min(delay, normalize_angle(enter - w) / motion.omega_s);
        });
    });
    return delay;
}

} // namespace

DelayEstimate estimate_delay_cdf(const CoxParams& params, const OrbitGeometry& geom,
                                 const MotionParams& motion, const std::vector<double>& d_grid,
                                 const SimConfig& sim) {
    const CapField field(geom);
    const CoxDraws draws(params);
    std::vector<std::string> names(d_grid.size(), "delay_cdf");
    names.emplace_back("p_inf_delay");
    auto estimates = estimate_means(names, sim, [&](Rng& rng, std::span<double> out) {
        const double delay = sample_delay(field, draws, motion, rng);
        for (std::size_t k = 0; k < d_grid.size(); ++k) {
            out[k] = delay <= d_grid[k] ? 1.0 : 0.0;
        }
        out[d_grid.size()] = std::isinf(delay) ? 1.0 : 0.0;
    });
    DelayEstimate result;
    result.infinite = estimates.back();
    estimates.pop_back();
    result.cdf = std::move(estimates);
    return result;
}

MetricEstimate estimate_infinite_delay(const CoxParams& params, const OrbitGeometry& geom,
                                       const SimConfig& sim) {
    const CapField field(geom);
    const CoxDraws draws(params);
    return estimate_mean("p_inf_delay", sim, [&](Rng& rng) {
        bool reachable = false;
        field.sample_cap_orbits(draws.orbits, rng, [&](const Orbit&, const OrbitFrame&) {
            reachable = draw_arguments(draws.satellites, rng, [](double) {}) > 0 || reachable;
        });
        return reachable ? 0.0 : 1.0;
    });
}

MetricEstimate estimate_polar_time_fraction(int n_orbits, int n_sats_per_orbit, PolarSpacing spacing,
                                            const OrbitGeometry& geom, const SimConfig& sim) {
    const CapField field(geom);
    return estimate_mean("polar_time_fraction", sim, [&](Rng& rng) {
        const Constellation c = sample_polar(geom, n_orbits, n_sats_per_orbit, rng, spacing);
        std::vector<OrbitFrame> frames;
        frames.reserve(c.orbits().size());
        for (const Orbit& o : c.orbits()) {
            frames.push_back(orbit_frame(o));
        }
        for (const Satellite& s : c.satellites()) {
            if (field.within(frames[s.orbit], s.omega)) {
                return 1.0;
            }
        }
        return 0.0;
    });
}

} // namespace leoh
