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

#include "leoh/analytics.hpp"
#include "leoh/config.hpp"
#include "leoh/error.hpp"
#include "leoh/simulator.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace leoh {

namespace {

const std::vector<std::string> kMetrics = {"visible_orbits", "visible_sats", "time_fraction", "data_per_pass",
                                           "capacity",       "delay_cdf",    "p_zero_delay",  "p_inf_delay"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Row {
    std::string sweep_var;
    std::string value;
    std::optional<double> analytic;
    std::optional<MetricEstimate> sim;
};

struct Options {
    std::string config_path;
    std::string metric;
    std::string out_path;
    std::string emit_path;
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    bool seed_given = false;
    bool trials_given = false;
};

ExperimentConfig effective_config(const Options& o) {
    ExperimentConfig c = o.config_path.empty() ? parse_config("", "<defaults>") : load_config(o.config_path);
    if (o.seed_given) {
        c.sim.seed = o.seed;
    }
    if (o.trials_given) {
        if (o.trials < 1) {
            throw ConfigError("--trials must be at least 1");
        }
        c.sim.trials = o.trials;
    }
    if (!o.out_path.empty()) {
        c.output.path = o.out_path;
    }
    if (!o.emit_path.empty()) {
        std::ofstream f(o.emit_path);
        if (!f) {
            throw ConfigError(o.emit_path + ": cannot write effective config");
        }
        f << emit_config(c);
    }
    return c;
}

void check_metric(const std::string& metric) {
    if (std::find(kMetrics.begin(), kMetrics.end(), metric) != kMetrics.end()) {
        return;
    }
    std::string names;
    for (const auto& m : kMetrics) {
        names += names.empty() ? m : ", " + m;
    }
    throw ConfigError("unknown metric '" + metric + "' (valid: " + names + ")");
}

std::int64_t default_trials(const std::string& metric) {
    return metric == "data_per_pass" || metric == "capacity" ? 10000 : 100000;
}

// Rows for one configuration point. Delay CDF rows are indexed by d instead.
std::vector<Row> evaluate(const ExperimentConfig& c, const std::string& metric, bool analytic, bool simulate,
                          const std::string& sweep_var, const std::string& value) {
    const OrbitGeometry geom = c.geometry.geometry();
    const QuadratureSpec& quad = c.quadrature;
    const SimConfig sim = c.sim_config(default_trials(metric));

    if (metric == "delay_cdf") {
        const MotionParams motion = c.motion.motion(geom);
        const std::vector<double> grid = c.delay_grid();
        std::vector<Row> rows;
        std::optional<DelayEstimate> est;
        if (simulate) {
            est = estimate_delay_cdf(c.cox.params(), geom, motion, grid, sim);
        }
        for (std::size_t k = 0; k < grid.size(); ++k) {
            Row r{"d_s", fmt(grid[k]), std::nullopt, std::nullopt};
            if (analytic) {
                r.analytic = delay_cdf(c.cox.params(), geom, motion, grid[k], quad);
            }
            if (est) {
                r.sim = est->cdf[k];
            }
            rows.push_back(r);
        }
        return rows;
    }

    Row r{sweep_var, value, std::nullopt, std::nullopt};
    const CoxParams params = c.cox.params();
    if (metric == "visible_orbits") {
        if (analytic) r.analytic = expected_visible_orbits(params, max_azimuth_xi(geom));
        if (simulate) r.sim = estimate_visible_orbits(params, geom, sim);
    } else if (metric == "visible_sats") {
        if (analytic) r.analytic = expected_visible_satellites(params, geom, quad);
        if (simulate) r.sim = estimate_visible_count(params, geom, sim);
    } else if (metric == "time_fraction") {
        if (analytic) r.analytic = harvest_time_fraction(params, geom, quad);
        if (simulate) r.sim = estimate_time_fraction(params, geom, sim);
    } else if (metric == "data_per_pass") {
        const MotionParams motion = c.motion.motion(geom);
        const LinkBudget link = c.link.link();
        if (analytic) {
            r.analytic = data_per_pass(c.inclination, geom, link, c.link.fading(), motion, c.scheme.scheme(), quad);
        }
        if (simulate) r.sim = simulate_pass(c.inclination, geom, link, c.link.fading(), motion, c.scheme.scheme(), sim);
    } else if (metric == "capacity") {
        const LinkBudget link = c.link.link();
        if (analytic) r.analytic = harvesting_capacity(params, geom, link, c.link.fading(), quad);
        if (simulate) r.sim = estimate_capacity(params, geom, link, c.link.fading(), sim);
    } else if (metric == "p_zero_delay") {
        if (analytic) r.analytic = zero_delay_probability(params, geom, quad);
        if (simulate) {
            MetricEstimate e = estimate_delay_cdf(params, geom, c.motion.motion(geom), {0.0}, sim).cdf[0];
            e.metric = metric;
            r.sim = e;
        }
    } else if (metric == "p_inf_delay") {
        if (analytic) r.analytic = infinite_delay_probability(params, geom);
        if (simulate) r.sim = estimate_infinite_delay(params, geom, sim);
    }
    return {r};
}

std::vector<Row> evaluate_all(const ExperimentConfig& c, const std::string& metric, bool analytic, bool simulate) {
    if (!c.sweep) {
        return evaluate(c, metric, analytic, simulate, "none", "");
    }
    if (metric == "delay_cdf") {
        throw ConfigError("delay_cdf is indexed by the delay grid and cannot be combined with a sweep block");
    }
    std::vector<Row> rows;
    for (double v : c.sweep->values) {
        const ExperimentConfig point = with_parameter(c, c.sweep->parameter, v);
        for (Row& r : evaluate(point, metric, analytic, simulate, c.sweep->parameter, fmt(v))) {
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

struct Verdict {
    double z;
    bool pass;
};

Verdict judge(const Row& r, double threshold) {
    const double diff = r.sim->mean - *r.analytic;
    if (r.sim->std_error > 0.0) {
        const double z = diff / r.sim->std_error;
        return {z, std::abs(z) <= threshold};
    }
    // Zero sample variance: the estimate must reproduce the value itself.
    const bool same = std::abs(diff) <= 1e-9 * std::max(1.0, std::abs(*r.analytic));
    return {same ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff), same};
}

std::string render(const std::vector<Row>& rows, bool with_verdict, double threshold, int* failures) {
    std::ostringstream csv;
    csv << "sweep_var,value,analytic,sim_mean,sim_ci,trials,seed";
    if (with_verdict) {
        csv << ",z,verdict";
    }
    csv << '\n';
    for (const Row& r : rows) {
        csv << r.sweep_var << ',' << r.value << ',' << (r.analytic ? fmt(*r.analytic) : "") << ',';
        if (r.sim) {
            csv << fmt(r.sim->mean) << ',' << fmt(r.sim->half_width) << ',' << r.sim->trials << ',' << r.sim->seed;
        } else {
            csv << ",,,";
        }
        if (with_verdict) {
            const Verdict v = judge(r, threshold);
            csv << ',' << fmt(v.z) << ',' << (v.pass ? "PASS" : "FAIL");
            *failures += v.pass ? 0 : 1;
        }
        csv << '\n';
    }
    return csv.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError(path + ": cannot write output");
    }
    f << text;
}

int cmd_table(const Options& o, bool analytic, bool simulate, bool verdict, bool need_sweep, std::ostream& out,
              std::ostream& err) {
    check_metric(o.metric);
    const ExperimentConfig c = effective_config(o);
    if (need_sweep && !c.sweep) {
        throw ConfigError("the sweep command needs a sweep block in the config");
    }
    const std::vector<Row> rows = evaluate_all(c, o.metric, analytic, simulate);
    int failures = 0;
    emit(render(rows, verdict, c.z_threshold, &failures), c.output.path, out);
    if (verdict) {
        err << (rows.size() - static_cast<std::size_t>(failures)) << "/" << rows.size() << " points within "
            << fmt(c.z_threshold) << " standard errors\n";
        return failures == 0 ? kExitOk : kExitCompareFailed;
    }
    return kExitOk;
}

int cmd_gen(const Options& o, bool polar, const std::string& positions_path, std::ostream& out) {
    const ExperimentConfig c = effective_config(o);
    const OrbitGeometry geom = c.geometry.geometry();
    Rng rng = stream_rng(c.sim.seed, 0);
    const Constellation con = polar ? sample_polar(geom, c.polar.n_orbits, c.polar.n_sats_per_orbit, rng,
                                                   c.polar.spacing)
                                    : sample_cox(geom, c.cox.lambda, c.cox.mu, rng);
    nlohmann::json j;
    to_json(j, con);
    emit(j.dump(1) + "\n", c.output.path, out);
    if (!positions_path.empty()) {
        std::ostringstream csv;
        csv << "satellite,orbit,x_m,y_m,z_m\n";
        for (std::size_t i = 0; i < con.satellites().size(); ++i) {
            const Satellite& s = con.satellites()[i];
            const Vec3 p = satellite_position_ecef(geom, con.orbit_of(s), s.omega);
            csv << i << ',' << s.orbit << ',' << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.z) << '\n';
        }
        emit(csv.str(), positions_path, out);
    }
    return kExitOk;
}

int cmd_moment_match(const Options& o, std::ostream& out) {
    const ExperimentConfig c = effective_config(o);
    const OrbitGeometry geom = c.geometry.geometry();
    const double pl = c.polar.n_orbits;
    const double pm = c.polar.n_sats_per_orbit;
    const CoxParams matched = moment_match_polar_to_cox(pl, pm, geom, c.quadrature);
    const MomentMatchResiduals res = moment_match_residuals(pl, pm, matched, geom, c.quadrature);
    std::ostringstream csv;
    csv << "polar_lambda,polar_mu,lambda_bar,mu_bar,residual_orbits,residual_satellites\n";
    csv << fmt(pl) << ',' << fmt(pm) << ',' << fmt(matched.lambda()) << ',' << fmt(matched.mu()) << ','
        << fmt(res.orbits) << ',' << fmt(res.satellites) << '\n';
    emit(csv.str(), c.output.path, out);
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"LEO data-harvesting constellation analytics and Monte Carlo simulator", "leoh"};
    app.require_subcommand(1);
    Options o;
    bool polar = false;
    std::string positions_path;

    auto common = [&](CLI::App* sub, bool metric) {
        sub->add_option("--config", o.config_path, "YAML experiment config (defaults when omitted)");
        if (metric) {
            sub->add_option("--metric", o.metric, "metric name")->required();
        }
        sub->add_option("--out", o.out_path, "output file (overrides output.path)");
        sub->add_option("--seed", o.seed, "base seed (overrides sim.seed)");
        sub->add_option("--trials", o.trials, "Monte Carlo trials (overrides sim.trials)");
        sub->add_option("--emit-config", o.emit_path, "write the effective config to this file");
    };
    CLI::App* analytic = app.add_subcommand("analytic", "evaluate a closed-form metric");
    CLI::App* simulate = app.add_subcommand("simulate", "estimate a metric by Monte Carlo");
    CLI::App* compare = app.add_subcommand("compare", "closed form against Monte Carlo, PASS/FAIL per point");
    CLI::App* sweep = app.add_subcommand("sweep", "closed form and Monte Carlo over the sweep block");
    CLI::App* gen = app.add_subcommand("gen", "sample a constellation and write it as JSON");
    CLI::App* mm = app.add_subcommand("moment-match", "Cox intensities matching the polar constellation");
    for (CLI::App* sub : {analytic, simulate, compare, sweep}) {
        common(sub, true);
    }
    common(gen, false);
    common(mm, false);
    gen->add_flag("--polar", polar, "sample the polar constellation instead of the Cox model");
    gen->add_option("--positions", positions_path, "also write Earth-centered positions as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (const CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app.help();
        }
        return kExitConfigError;
    }
    for (const auto* sub : app.get_subcommands()) {
        o.seed_given = sub->count("--seed") > 0;
        o.trials_given = sub->count("--trials") > 0;
    }

    try {
        if (analytic->parsed()) {
            return cmd_table(o, true, false, false, false, out, err);
        }
        if (simulate->parsed()) {
            return cmd_table(o, false, true, false, false, out, err);
        }
        if (compare->parsed()) {
            return cmd_table(o, true, true, true, false, out, err);
        }
        if (sweep->parsed()) {
            return cmd_table(o, true, true, false, true, out, err);
        }
        if (gen->parsed()) {
            return cmd_gen(o, polar, positions_path, out);
        }
        return cmd_moment_match(o, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const QuadratureFailure& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const DegenerateGeometry& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
}

} // namespace leoh
