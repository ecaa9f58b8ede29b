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


#include "leoh/cli.hpp"
#include "leoh/config.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace leoh;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "leoh");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(LEOH_FIXTURE_DIR) + "/" + name; }

std::string config(const std::string& name) { return std::string(LEOH_SOURCE_DIR) + "/configs/" + name; }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("leoh_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::filesystem::path dir_;
};

} // namespace

TEST(Cli, HelpAndMissingSubcommand) {
    EXPECT_EQ(run({"--help"}).code, kExitOk);
    EXPECT_EQ(run({}).code, kExitConfigError);
    EXPECT_EQ(run({"analytic"}).code, kExitConfigError);
    EXPECT_EQ(run({"frobnicate"}).code, kExitConfigError);
}

TEST(Cli, AnalyticCsv) {
    const CliRun r = run({"analytic", "--metric", "time_fraction", "--config", config("defaults.yaml")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "sweep_var,value,analytic,sim_mean,sim_ci,trials,seed");
    EXPECT_EQ(rows[1].rfind("none,,0.", 0), 0u) << rows[1];
    EXPECT_EQ(rows[1].substr(rows[1].size() - 4), ",,,,");
}

TEST(Cli, AnalyticSweep) {
    const CliRun r = run({"analytic", "--metric", "visible_sats", "--config", config("visible_sats.yaml")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = lines(r.out);
    ASSERT_GT(rows.size(), 2u);
    const ExperimentConfig c = load_config(config("visible_sats.yaml"));
    ASSERT_TRUE(c.sweep.has_value());
    EXPECT_EQ(rows.size(), c.sweep->values.size() + 1);
    EXPECT_EQ(rows[1].rfind(c.sweep->parameter + ",", 0), 0u);
}

TEST(Cli, EveryMetricEvaluates) {
    for (const char* metric : {"visible_orbits", "visible_sats", "time_fraction", "data_per_pass", "capacity",
                               "delay_cdf", "p_zero_delay", "p_inf_delay"}) {
        const CliRun r = run({"compare", "--metric", metric, "--trials", "3000", "--seed", "5"});
        EXPECT_NE(r.code, kExitConfigError) << metric << ": " << r.err;
        EXPECT_NE(r.code, kExitNumericError) << metric << ": " << r.err;
        EXPECT_NE(r.err.find("points within"), std::string::npos) << metric;
    }
}

TEST(Cli, DelayRows) {
    const CliRun r = run({"analytic", "--metric", "delay_cdf", "--config", config("delay.yaml")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = lines(r.out);
    EXPECT_EQ(rows.size(), 13u);
    EXPECT_EQ(rows[1].rfind("d_s,0,", 0), 0u) << rows[1];
}

TEST(Cli, InvalidMetricListsNames) {
    const CliRun r = run({"analytic", "--metric", "throughput"});
    EXPECT_EQ(r.code, kExitConfigError);
    EXPECT_NE(r.err.find("throughput"), std::string::npos);
    EXPECT_NE(r.err.find("time_fraction"), std::string::npos);
    EXPECT_NE(r.err.find("p_inf_delay"), std::string::npos);
}

TEST(Cli, ConfigErrors) {
    const CliRun unknown = run({"analytic", "--metric", "time_fraction", "--config", fixture("unknown_key.yaml")});
    EXPECT_EQ(unknown.code, kExitConfigError);
    EXPECT_NE(unknown.err.find("unknown_key.yaml:3"), std::string::npos) << unknown.err;
    EXPECT_NE(unknown.err.find("geometry.gama_km"), std::string::npos) << unknown.err;

    EXPECT_EQ(run({"analytic", "--metric", "time_fraction", "--config", "/nonexistent.yaml"}).code,
              kExitConfigError);
    EXPECT_EQ(run({"simulate", "--metric", "time_fraction", "--trials", "0"}).code, kExitConfigError);
    EXPECT_EQ(run({"sweep", "--metric", "time_fraction"}).code, kExitConfigError);
    EXPECT_EQ(run({"analytic", "--metric", "delay_cdf", "--config", config("visible_sats.yaml")}).code,
              kExitConfigError);
}

TEST(Cli, NumericFailures) {
    const CliRun degenerate = run({"moment-match", "--config", fixture("degenerate.yaml")});
    EXPECT_EQ(degenerate.code, kExitNumericError) << degenerate.err;
    const CliRun starved = run({"analytic", "--metric", "capacity", "--config", fixture("starved_quadrature.yaml")});
    EXPECT_EQ(starved.code, kExitNumericError) << starved.err;
    EXPECT_NE(starved.err.find("numeric failure"), std::string::npos);
}

TEST(Cli, CompareVerdicts) {
    const CliRun ok = run({"compare", "--metric", "time_fraction", "--config", fixture("compare_ok.yaml")});
    EXPECT_EQ(ok.code, kExitOk) << ok.out << ok.err;
    const auto rows = lines(ok.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "sweep_var,value,analytic,sim_mean,sim_ci,trials,seed,z,verdict");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].substr(rows[i].size() - 5), ",PASS");
        EXPECT_NE(rows[i].find(",20000,3,"), std::string::npos) << rows[i];
    }
    EXPECT_NE(ok.err.find("3/3 points within 4 standard errors"), std::string::npos) << ok.err;

    const CliRun strict = run({"compare", "--metric", "time_fraction", "--config", fixture("compare_strict.yaml")});
    EXPECT_EQ(strict.code, kExitCompareFailed);
    EXPECT_NE(strict.out.find(",FAIL"), std::string::npos);
}

TEST_F(CliFiles, SimulateIsByteIdentical) {
    const std::vector<std::string> args = {"simulate", "--metric", "time_fraction", "--config",
                                           config("time_fraction_700km.yaml"), "--trials", "20000", "--seed", "42"};
    auto a = args;
    a.insert(a.end(), {"--out", path("a.csv")});
    auto b = args;
    b.insert(b.end(), {"--out", path("b.csv")});
    ASSERT_EQ(run(a).code, kExitOk);
    ASSERT_EQ(run(b).code, kExitOk);
    const std::string first = slurp(path("a.csv"));
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, slurp(path("b.csv")));
    EXPECT_NE(first.find(",20000,42"), std::string::npos);
}

TEST_F(CliFiles, SweepWritesBothColumns) {
    const CliRun r = run({"sweep", "--metric", "time_fraction", "--config", fixture("compare_ok.yaml"), "--trials", "2000",
                       "--out", path("s.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto rows = lines(slurp(path("s.csv")));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[1].rfind("mu,5,0.", 0), 0u) << rows[1];
    EXPECT_NE(rows[1].find(",2000,3"), std::string::npos) << rows[1];
}

TEST_F(CliFiles, EmitConfigRoundTrip) {
    const CliRun r = run({"analytic", "--metric", "capacity", "--config", config("capacity.yaml"), "--seed", "9",
                       "--trials", "321", "--emit-config", path("effective.yaml")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const ExperimentConfig emitted = load_config(path("effective.yaml"));
    ExperimentConfig expected = load_config(config("capacity.yaml"));
    expected.sim.seed = 9;
    expected.sim.trials = 321;
    EXPECT_EQ(emitted, expected);

    const CliRun again = run({"analytic", "--metric", "capacity", "--config", path("effective.yaml")});
    ASSERT_EQ(again.code, kExitOk);
    EXPECT_EQ(again.out, r.out);
}

TEST_F(CliFiles, GenRoundTrip) {
    const CliRun r = run({"gen", "--seed", "4", "--out", path("c.json"), "--positions", path("p.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(slurp(path("c.json")));
    const Constellation c = constellation_from_json(j);
    EXPECT_GT(c.orbits().size(), 0u);
    EXPECT_EQ(lines(slurp(path("p.csv"))).size(), c.satellites().size() + 1);

    const CliRun again = run({"gen", "--seed", "4"});
    EXPECT_EQ(nlohmann::json::parse(again.out), j);

    const CliRun polar = run({"gen", "--polar"});
    ASSERT_EQ(polar.code, kExitOk);
    const Constellation p = constellation_from_json(nlohmann::json::parse(polar.out));
    EXPECT_EQ(p.orbits().size(), 20u);
    EXPECT_EQ(p.satellites().size(), 600u);
}

TEST(Cli, GenTinyLambdaIsEmpty) {
    const CliRun r = run({"gen", "--config", fixture("tiny_lambda.yaml")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["orbits"].empty());
    EXPECT_TRUE(j["satellites"].empty());
}

TEST(Cli, MomentMatch) {
    const CliRun r = run({"moment-match", "--config", config("moment_match.yaml")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "polar_lambda,polar_mu,lambda_bar,mu_bar,residual_orbits,residual_satellites");
    EXPECT_EQ(rows[1].rfind("20,30,533.2338863895", 0), 0u) << rows[1];
}
