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


#include "leoh/config.hpp"
#include "leoh/error.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace leoh;

namespace {

std::string config_error(const std::string& text) {
    try {
        parse_config(text, "test.yaml");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Config, EmptyTextGivesDefaults) {
    const ExperimentConfig c = parse_config("");
    EXPECT_EQ(c, ExperimentConfig{});
    EXPECT_EQ(c.geometry.altitude_km, 600.0);
    EXPECT_EQ(c.cox.lambda, 30.0);
    EXPECT_FALSE(c.motion.omega_s.has_value());
    EXPECT_FALSE(c.sweep.has_value());
    EXPECT_EQ(c.z_threshold, 3.0);
}

TEST(Config, LoadsShippedConfigs) {
    for (const char* name : {"defaults", "time_fraction_700km", "time_fraction_gamma", "visible_sats",
                             "data_per_pass", "capacity", "delay", "moment_match"}) {
        EXPECT_NO_THROW(load_config(std::string(LEOH_SOURCE_DIR) + "/configs/" + name + ".yaml")) << name;
    }
    const ExperimentConfig t = load_config(std::string(LEOH_SOURCE_DIR) + "/configs/defaults.yaml");
    EXPECT_EQ(t.scheme.tau_db, 20.0);
    EXPECT_EQ(t.link.bandwidth_hz, 20e6);
    EXPECT_DOUBLE_EQ(t.inclination, kPi / 2.0);
}

TEST(Config, ParsesEveryBlock) {
    const ExperimentConfig c = parse_config(R"(
geometry: {earth_radius_km: 6378.137, altitude_km: 700, gamma_km: 750}
cox: {lambda: 12.5, mu: 7}
polar: {n_orbits: 4, n_sats_per_orbit: 9, spacing: poisson}
link: {p_dbm: 27, g_db: 35, alpha: 2.5, noise_density_dbm_hz: -170, bandwidth_hz: 1.0e6, nakagami_m: 3}
motion: {omega_s: 0.001, omega_e: 0, include_earth_rotation: true}
scheme: {type: adaptive, bits_per_symbol: 2, tau_db: 3}
pass: {inclination: 1.2rad}
delay: {d_grid_s: [0, 10, 20]}
sim: {trials: 500, seed: 99, time_step_s: 0.5, confidence_level: 0.9, threads: 2}
quadrature: {abs_tol: 1.0e-9, rel_tol: 1.0e-7, max_subdivisions: 100, tail_cutoff: 1.0e-10}
sweep: {parameter: lambda, values: [1, 2]}
output: {path: out.csv, format: csv}
compare: {z_threshold: 4}
)");
    EXPECT_EQ(c.geometry.earth_radius_km, 6378.137);
    EXPECT_EQ(c.cox.mu, 7.0);
    EXPECT_EQ(c.polar.spacing, PolarSpacing::poisson);
    EXPECT_EQ(c.link.nakagami_m, 3);
    EXPECT_EQ(c.motion.omega_s, 0.001);
    EXPECT_TRUE(c.motion.include_earth_rotation);
    EXPECT_TRUE(c.scheme.adaptive);
    EXPECT_EQ(c.inclination, 1.2);
    EXPECT_EQ(c.d_grid_s, (std::vector<double>{0, 10, 20}));
    EXPECT_EQ(c.sim.trials, 500);
    EXPECT_EQ(c.sim.seed, 99u);
    EXPECT_EQ(c.sim.time_step_s, 0.5);
    EXPECT_EQ(c.quadrature.max_subdivisions, 100);
    ASSERT_TRUE(c.sweep.has_value());
    EXPECT_EQ(c.sweep->values, (std::vector<double>{1, 2}));
    EXPECT_EQ(c.output.path, "out.csv");
    EXPECT_EQ(c.z_threshold, 4.0);

    const SimConfig sim = c.sim_config(1000);
    EXPECT_EQ(sim.trials, 500);
    EXPECT_EQ(sim.base_seed, 99u);
    EXPECT_EQ(sim.threads, 2);
    EXPECT_EQ(parse_config("").sim_config(1234).trials, 1234);
}

TEST(Config, UnknownKeyNamesLineAndAllowedKeys) {
    const std::string msg = config_error("cox:\n  lambda: 3\n  lamda: 4\n");
    EXPECT_NE(msg.find("test.yaml:3:3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("cox.lamda"), std::string::npos) << msg;
    EXPECT_NE(msg.find("allowed: lambda, mu"), std::string::npos) << msg;
    EXPECT_NE(config_error("colors: 1\n").find("colors"), std::string::npos);
}

TEST(Config, TypeErrors) {
    const std::string msg = config_error("geometry:\n  altitude_km: high\n");
    EXPECT_NE(msg.find("test.yaml:2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("geometry.altitude_km"), std::string::npos) << msg;
    EXPECT_NE(msg.find("a number"), std::string::npos) << msg;
    EXPECT_NE(config_error("link:\n  nakagami_m: 1.5\n").find("an integer"), std::string::npos);
    EXPECT_NE(config_error("cox: 5\n").find("block"), std::string::npos);
    EXPECT_NE(config_error("cox: {lambda: [1, 2]}\n").find("single value"), std::string::npos);
    EXPECT_NE(config_error("scheme: {type: turbo}\n").find("scheme.type"), std::string::npos);
    EXPECT_NE(config_error("polar: {spacing: random}\n").find("polar.spacing"), std::string::npos);
    EXPECT_NE(config_error("cox: {lambda: 1\n").find("test.yaml"), std::string::npos);
}

TEST(Config, SemanticValidation) {
    EXPECT_NE(config_error("cox: {lambda: -1}\n").find("cox"), std::string::npos);
    EXPECT_NE(config_error("geometry: {altitude_km: 600, gamma_km: 100}\n").find("geometry"), std::string::npos);
    EXPECT_NE(config_error("link: {nakagami_m: 0}\n").find("link"), std::string::npos);
    EXPECT_NE(config_error("sim: {trials: 0}\n").find("sim"), std::string::npos);
    EXPECT_NE(config_error("quadrature: {max_subdivisions: 0}\n").find("quadrature"), std::string::npos);
    EXPECT_NE(config_error("sweep: {parameter: colour, values: [1]}\n").find("colour"), std::string::npos);
    EXPECT_NE(config_error("sweep: {parameter: mu, values: []}\n").find("sweep.values"), std::string::npos);
    EXPECT_NE(config_error("sweep: {parameter: mu}\n").find("sweep.values"), std::string::npos);
    EXPECT_NE(config_error("output: {format: parquet}\n").find("output.format"), std::string::npos);
    EXPECT_NE(config_error("compare: {z_threshold: 0}\n").find("z_threshold"), std::string::npos);
    EXPECT_THROW(load_config("/nonexistent/leoh.yaml"), ConfigError);
}

TEST(Config, Angles) {
    EXPECT_DOUBLE_EQ(parse_angle("90deg"), kPi / 2.0);
    EXPECT_DOUBLE_EQ(parse_angle("-45deg"), -kPi / 4.0);
    EXPECT_EQ(parse_angle("1.25rad"), 1.25);
    EXPECT_THROW(parse_angle("90"), ConfigError);
    EXPECT_THROW(parse_angle("ninetydeg"), ConfigError);
    EXPECT_NE(config_error("pass: {inclination: 90}\n").find("pass.inclination"), std::string::npos);
}

TEST(Config, OmegaS) {
    EXPECT_FALSE(parse_config("motion: {omega_s: kepler}\n").motion.omega_s.has_value());
    EXPECT_EQ(parse_config("motion: {omega_s: 0.0011}\n").motion.omega_s, 0.0011);
    const ExperimentConfig c = parse_config("");
    const OrbitGeometry g = c.geometry.geometry();
    EXPECT_EQ(c.motion.motion(g).omega_s, MotionParams::kepler(g).omega_s);
}

TEST(Config, EmitRoundTrip) {
    const ExperimentConfig defaults = parse_config("");
    EXPECT_EQ(parse_config(emit_config(defaults)), defaults);

    ExperimentConfig c = parse_config(R"(
geometry: {altitude_km: 1100, gamma_km: 1200}
cox: {lambda: 0.1, mu: 33.3333333333333333}
motion: {omega_s: 0.00109}
scheme: {type: adaptive}
pass: {inclination: 93deg}
delay: {d_grid_s: [0, 1.5e3]}
sim: {trials: 777, time_step_s: 0.25}
sweep: {parameter: gamma_km, values: [1150, 1200]}
compare: {z_threshold: 2.5}
)");
    c.polar.spacing = PolarSpacing::poisson;
    EXPECT_EQ(parse_config(emit_config(c)), c);
}

TEST(Config, DelayGrid) {
    ExperimentConfig c = parse_config("geometry: {altitude_km: 600, gamma_km: 1200}\n");
    const OrbitGeometry g = c.geometry.geometry();
    const double limit = delay_wraparound_limit(g, c.motion.motion(g));
    const std::vector<double> grid = c.delay_grid();
    ASSERT_EQ(grid.size(), 20u);
    EXPECT_EQ(grid.front(), 0.0);
    EXPECT_LT(grid.back(), limit);
    EXPECT_NEAR(grid[1], limit / 20.0, 1e-9);
    c.d_grid_s = {5.0, 6.0};
    EXPECT_EQ(c.delay_grid(), c.d_grid_s);
    EXPECT_NE(config_error("delay: {d_grid_s: [-1]}\n").find("delay"), std::string::npos);
}

TEST(Config, WithParameter) {
    const ExperimentConfig base = parse_config("");
    EXPECT_EQ(with_parameter(base, "lambda", 7.0).cox.lambda, 7.0);
    EXPECT_EQ(with_parameter(base, "gamma_km", 1000.0).geometry.gamma_km, 1000.0);
    EXPECT_EQ(with_parameter(base, "nakagami_m", 4.0).link.nakagami_m, 4);
    EXPECT_DOUBLE_EQ(with_parameter(base, "inclination_deg", 90.0).inclination, kPi / 2.0);
    EXPECT_EQ(with_parameter(base, "omega_s", 0.002).motion.omega_s, 0.002);
    EXPECT_THROW(with_parameter(base, "nakagami_m", 1.5), ConfigError);
    EXPECT_THROW(with_parameter(base, "colour", 1.0), ConfigError);
    for (const std::string& p : sweep_parameters()) {
        EXPECT_NO_THROW(with_parameter(base, p, p == "inclination_deg" ? 90.0 : 2.0)) << p;
    }
}
