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

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace leoh {

OrbitGeometry GeometryConfig::geometry() const {
    return OrbitGeometry::from_altitude(earth_radius_km * 1e3, altitude_km * 1e3, gamma_km * 1e3);
}

LinkBudget LinkConfig::link() const {
    return LinkBudget::from_db(p_dbm, g_db, alpha, noise_density_dbm_hz, bandwidth_hz);
}

MotionParams MotionConfig::motion(const OrbitGeometry& geom) const {
    if (omega_s) {
        return {*omega_s, omega_e};
    }
    return MotionParams::kepler(geom, omega_e);
}

ModulationScheme SchemeConfig::scheme() const {
    if (adaptive) {
        return AdaptiveRate{};
    }
    return FixedRate{bits_per_symbol, db_to_linear(tau_db)};
}

SimConfig ExperimentConfig::sim_config(std::int64_t default_trials) const {
    SimConfig s;
    s.trials = sim.trials.value_or(default_trials);
    s.base_seed = sim.seed;
    s.time_step = sim.time_step_s;
    s.include_earth_rotation = motion.include_earth_rotation;
    s.confidence_level = sim.confidence_level;
    s.threads = sim.threads;
    return s;
}

std::vector<double> ExperimentConfig::delay_grid() const {
    if (!d_grid_s.empty()) {
        return d_grid_s;
    }
    const OrbitGeometry geom = geometry.geometry();
    const double limit = delay_wraparound_limit(geom, motion.motion(geom));
    std::vector<double> grid;
    for (int k = 0; k < 20; ++k) {
        grid.push_back(limit * k / 20.0);
    }
    return grid;
}

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names = {
        "lambda",   "mu",         "earth_radius_km", "altitude_km",     "gamma_km",
        "p_dbm",    "g_db",       "alpha",           "nakagami_m",      "tau_db",
        "bits_per_symbol", "inclination_deg", "n_orbits", "n_sats_per_orbit", "omega_s"};
    return names;
}

namespace {

int integral(const std::string& parameter, double value) {
    if (value != std::floor(value) || std::abs(value) > 1e9) {
        throw ConfigError("sweep value " + std::to_string(value) + " for " + parameter + " must be an integer");
    }
    return static_cast<int>(value);
}

} // namespace

ExperimentConfig with_parameter(const ExperimentConfig& config, const std::string& parameter, double value) {
    ExperimentConfig c = config;
    if (parameter == "lambda") {
        c.cox.lambda = value;
    } else if (parameter == "mu") {
        c.cox.mu = value;
    } else if (parameter == "earth_radius_km") {
        c.geometry.earth_radius_km = value;
    } else if (parameter == "altitude_km") {
        c.geometry.altitude_km = value;
    } else if (parameter == "gamma_km") {
        c.geometry.gamma_km = value;
    } else if (parameter == "p_dbm") {
        c.link.p_dbm = value;
    } else if (parameter == "g_db") {
        c.link.g_db = value;
    } else if (parameter == "alpha") {
        c.link.alpha = value;
    } else if (parameter == "nakagami_m") {
        c.link.nakagami_m = integral(parameter, value);
    } else if (parameter == "tau_db") {
        c.scheme.tau_db = value;
    } else if (parameter == "bits_per_symbol") {
        c.scheme.bits_per_symbol = integral(parameter, value);
    } else if (parameter == "inclination_deg") {
        c.inclination = value * kPi / 180.0;
    } else if (parameter == "n_orbits") {
        c.polar.n_orbits = integral(parameter, value);
    } else if (parameter == "n_sats_per_orbit") {
        c.polar.n_sats_per_orbit = integral(parameter, value);
    } else if (parameter == "omega_s") {
        c.motion.omega_s = value;
    } else {
        throw ConfigError("unknown sweep parameter '" + parameter + "'");
    }
    return c;
}

double parse_angle(const std::string& text) {
    double scale = 0.0;
    std::string number;
    auto ends_with = [&](const std::string& suffix) {
        return text.size() > suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("deg")) {
        scale = kPi / 180.0;
        number = text.substr(0, text.size() - 3);
    } else if (ends_with("rad")) {
        scale = 1.0;
        number = text.substr(0, text.size() - 3);
    } else {
        throw ConfigError("angle '" + text + "' needs a unit suffix, e.g. 90deg or 1.5rad");
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc() || end != number.data() + number.size() || !std::isfinite(value)) {
        throw ConfigError("angle '" + text + "' is not a number");
    }
    return value * scale;
}

namespace {

bool present(const YAML::Node& n) {
    return n.IsDefined() && !n.IsNull();
}

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& message) const {
        std::string where = source_;
        if (node.IsDefined() && node.Mark().line >= 0) {
            where += ":" + std::to_string(node.Mark().line + 1) + ":" + std::to_string(node.Mark().column + 1);
        }
        throw ConfigError(where + ": " + field + ": " + message);
    }

    /// The block as a map, or a null node when absent.
    YAML::Node block(const YAML::Node& root, const std::string& name,
                     std::initializer_list<const char*> keys) const {
        YAML::Node b = root[name];
        if (!b.IsDefined() || b.IsNull()) {
            return YAML::Node();
        }
        if (!b.IsMap()) {
            fail(b, name, "expected a block of key: value pairs");
        }
        check_keys(b, name, keys);
        return b;
    }

    void check_keys(const YAML::Node& map, const std::string& name, std::initializer_list<const char*> keys) const {
        for (const auto& kv : map) {
            const std::string key = kv.first.as<std::string>();
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
                std::string allowed;
                for (const char* k : keys) {
                    allowed += allowed.empty() ? k : std::string(", ") + k;
                }
                fail(kv.first, name.empty() ? key : name + "." + key, "unknown key (allowed: " + allowed + ")");
            }
        }
    }

    template <class T>
    void read(const YAML::Node& b, const std::string& name, const char* key, T& out) const {
        if (!b.IsDefined() || b.IsNull()) {
            return;
        }
        const YAML::Node n = b[key];
        if (!n.IsDefined() || n.IsNull()) {
            return;
        }
        out = convert<T>(n, name + "." + key);
    }

    template <class T>
    T convert(const YAML::Node& n, const std::string& field) const {
        if (!n.IsScalar()) {
            fail(n, field, "expected a single value");
        }
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            fail(n, field, std::string("expected ") + type_name<T>() + ", got '" + n.Scalar() + "'");
        }
    }

private:
    template <class T>
    static const char* type_name() {
        if constexpr (std::is_same_v<T, bool>) {
            return "true or false";
        } else if constexpr (std::is_integral_v<T>) {
            return "an integer";
        } else if constexpr (std::is_floating_point_v<T>) {
            return "a number";
        } else {
            return "a string";
        }
    }

    std::string source_;
};

template <class F>
void validated(const std::string& source, const std::string& field, F&& f) {
    try {
        f();
    } catch (const DomainError& e) {
        throw ConfigError(source + ": " + field + ": " + e.what());
    }
}

void validate(const ExperimentConfig& c, const std::string& source) {
    validated(source, "geometry", [&] { (void)c.geometry.geometry(); });
    validated(source, "cox", [&] { (void)c.cox.params(); });
    validated(source, "link", [&] {
        (void)c.link.link();
        (void)c.link.fading();
    });
    validated(source, "motion", [&] { (void)c.motion.motion(c.geometry.geometry()); });
    validated(source, "scheme", [&] {
        if (!c.scheme.adaptive && c.scheme.bits_per_symbol < 1) {
            throw DomainError("bits_per_symbol must be at least 1");
        }
    });
    validated(source, "polar", [&] {
        if (c.polar.n_orbits < 1 || c.polar.n_sats_per_orbit < 1) {
            throw DomainError("n_orbits and n_sats_per_orbit must be at least 1");
        }
    });
    validated(source, "pass", [&] {
        if (!(c.inclination >= 0.0) || !(c.inclination < kPi)) {
            throw DomainError("inclination must lie in [0deg, 180deg)");
        }
    });
    validated(source, "delay", [&] {
        for (double d : c.d_grid_s) {
            if (!(d >= 0.0)) {
                throw DomainError("d_grid_s entries must be non-negative");
            }
        }
    });
    validated(source, "sim", [&] { c.sim_config(1).validate(); });
    validated(source, "quadrature", [&] { c.quadrature.validate(); });
    if (c.sweep) {
        const auto& names = sweep_parameters();
        if (std::find(names.begin(), names.end(), c.sweep->parameter) == names.end()) {
            std::string allowed;
            for (const auto& n : names) {
                allowed += allowed.empty() ? n : ", " + n;
            }
            throw ConfigError(source + ": sweep.parameter: unknown parameter '" + c.sweep->parameter +
                              "' (allowed: " + allowed + ")");
        }
        if (c.sweep->values.empty()) {
            throw ConfigError(source + ": sweep.values: at least one value is required");
        }
    }
    if (c.output.format != "csv") {
        throw ConfigError(source + ": output.format: only 'csv' is supported");
    }
    if (!(c.z_threshold > 0.0)) {
        throw ConfigError(source + ": compare.z_threshold: must be positive");
    }
}

} // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                          ": " + e.msg);
    }
    ExperimentConfig c;
    if (!root.IsDefined() || root.IsNull()) {
        validate(c, source);
        return c;
    }
    const Reader r(source);
    if (!root.IsMap()) {
        r.fail(root, "<top>", "expected a map of blocks");
    }
    r.check_keys(root, "", {"geometry", "cox", "polar", "link", "motion", "scheme", "pass", "delay", "sim",
                            "quadrature", "sweep", "output", "compare"});

    const YAML::Node g = r.block(root, "geometry", {"earth_radius_km", "altitude_km", "gamma_km"});
    r.read(g, "geometry", "earth_radius_km", c.geometry.earth_radius_km);
    r.read(g, "geometry", "altitude_km", c.geometry.altitude_km);
    r.read(g, "geometry", "gamma_km", c.geometry.gamma_km);

    const YAML::Node cox = r.block(root, "cox", {"lambda", "mu"});
    r.read(cox, "cox", "lambda", c.cox.lambda);
    r.read(cox, "cox", "mu", c.cox.mu);

    const YAML::Node polar = r.block(root, "polar", {"n_orbits", "n_sats_per_orbit", "spacing"});
    r.read(polar, "polar", "n_orbits", c.polar.n_orbits);
    r.read(polar, "polar", "n_sats_per_orbit", c.polar.n_sats_per_orbit);
    if (present(polar) && polar["spacing"].IsDefined()) {
        const std::string s = r.convert<std::string>(polar["spacing"], "polar.spacing");
        if (s == "even") {
            c.polar.spacing = PolarSpacing::even;
        } else if (s == "poisson") {
            c.polar.spacing = PolarSpacing::poisson;
        } else {
            r.fail(polar["spacing"], "polar.spacing", "expected 'even' or 'poisson', got '" + s + "'");
        }
    }

    const YAML::Node link = r.block(root, "link", {"p_dbm", "g_db", "alpha", "noise_density_dbm_hz",
                                                   "bandwidth_hz", "nakagami_m"});
    r.read(link, "link", "p_dbm", c.link.p_dbm);
    r.read(link, "link", "g_db", c.link.g_db);
    r.read(link, "link", "alpha", c.link.alpha);
    r.read(link, "link", "noise_density_dbm_hz", c.link.noise_density_dbm_hz);
    r.read(link, "link", "bandwidth_hz", c.link.bandwidth_hz);
    r.read(link, "link", "nakagami_m", c.link.nakagami_m);

    const YAML::Node motion = r.block(root, "motion", {"omega_s", "omega_e", "include_earth_rotation"});
    if (present(motion) && motion["omega_s"].IsDefined() && !motion["omega_s"].IsNull()) {
        const YAML::Node n = motion["omega_s"];
        if (n.IsScalar() && n.Scalar() == "kepler") {
            c.motion.omega_s.reset();
        } else {
            c.motion.omega_s = r.convert<double>(n, "motion.omega_s");
        }
    }
    r.read(motion, "motion", "omega_e", c.motion.omega_e);
    r.read(motion, "motion", "include_earth_rotation", c.motion.include_earth_rotation);

    const YAML::Node scheme = r.block(root, "scheme", {"type", "bits_per_symbol", "tau_db"});
    if (present(scheme) && scheme["type"].IsDefined()) {
        const std::string t = r.convert<std::string>(scheme["type"], "scheme.type");
        if (t == "fixed" || t == "adaptive") {
            c.scheme.adaptive = t == "adaptive";
        } else {
            r.fail(scheme["type"], "scheme.type", "expected 'fixed' or 'adaptive', got '" + t + "'");
        }
    }
    r.read(scheme, "scheme", "bits_per_symbol", c.scheme.bits_per_symbol);
    r.read(scheme, "scheme", "tau_db", c.scheme.tau_db);

    const YAML::Node pass = r.block(root, "pass", {"inclination"});
    if (present(pass) && pass["inclination"].IsDefined()) {
        const std::string a = r.convert<std::string>(pass["inclination"], "pass.inclination");
        try {
            c.inclination = parse_angle(a);
        } catch (const ConfigError& e) {
            r.fail(pass["inclination"], "pass.inclination", e.what());
        }
    }

    const YAML::Node delay = r.block(root, "delay", {"d_grid_s"});
    if (present(delay) && delay["d_grid_s"].IsDefined()) {
        const YAML::Node list = delay["d_grid_s"];
        if (!list.IsSequence()) {
            r.fail(list, "delay.d_grid_s", "expected a list of durations in seconds");
        }
        for (const auto& item : list) {
            c.d_grid_s.push_back(r.convert<double>(item, "delay.d_grid_s"));
        }
    }

    const YAML::Node sim = r.block(root, "sim", {"trials", "seed", "time_step_s", "confidence_level", "threads"});
    if (present(sim) && sim["trials"].IsDefined()) {
        c.sim.trials = r.convert<std::int64_t>(sim["trials"], "sim.trials");
    }
    r.read(sim, "sim", "seed", c.sim.seed);
    if (present(sim) && sim["time_step_s"].IsDefined() && !sim["time_step_s"].IsNull()) {
        c.sim.time_step_s = r.convert<double>(sim["time_step_s"], "sim.time_step_s");
    }
    r.read(sim, "sim", "confidence_level", c.sim.confidence_level);
    r.read(sim, "sim", "threads", c.sim.threads);

    const YAML::Node quad = r.block(root, "quadrature", {"abs_tol", "rel_tol", "max_subdivisions", "tail_cutoff"});
    r.read(quad, "quadrature", "abs_tol", c.quadrature.abs_tol);
    r.read(quad, "quadrature", "rel_tol", c.quadrature.rel_tol);
    r.read(quad, "quadrature", "max_subdivisions", c.quadrature.max_subdivisions);
    r.read(quad, "quadrature", "tail_cutoff", c.quadrature.tail_cutoff);

    const YAML::Node sweep = r.block(root, "sweep", {"parameter", "values"});
    if (present(sweep)) {
        SweepConfig s;
        if (!sweep["parameter"].IsDefined()) {
            r.fail(sweep, "sweep.parameter", "missing");
        }
        s.parameter = r.convert<std::string>(sweep["parameter"], "sweep.parameter");
        const YAML::Node values = sweep["values"];
        if (!values.IsDefined() || !values.IsSequence()) {
            r.fail(values.IsDefined() ? values : sweep, "sweep.values", "expected a list of numbers");
        }
        for (const auto& item : values) {
            s.values.push_back(r.convert<double>(item, "sweep.values"));
        }
        c.sweep = s;
    }

    const YAML::Node output = r.block(root, "output", {"path", "format"});
    r.read(output, "output", "path", c.output.path);
    r.read(output, "output", "format", c.output.format);

    const YAML::Node compare = r.block(root, "compare", {"z_threshold"});
    r.read(compare, "compare", "z_threshold", c.z_threshold);

    validate(c, source);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path);
}

namespace {

std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string emit_config(const ExperimentConfig& c) {
    YAML::Emitter out;
    auto num = [&](const char* key, double v) { out << YAML::Key << key << YAML::Value << exact(v); };
    out << YAML::BeginMap;

    out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
    num("earth_radius_km", c.geometry.earth_radius_km);
    num("altitude_km", c.geometry.altitude_km);
    num("gamma_km", c.geometry.gamma_km);
    out << YAML::EndMap;

    out << YAML::Key << "cox" << YAML::Value << YAML::BeginMap;
    num("lambda", c.cox.lambda);
    num("mu", c.cox.mu);
    out << YAML::EndMap;

    out << YAML::Key << "polar" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n_orbits" << YAML::Value << c.polar.n_orbits;
    out << YAML::Key << "n_sats_per_orbit" << YAML::Value << c.polar.n_sats_per_orbit;
    out << YAML::Key << "spacing" << YAML::Value << (c.polar.spacing == PolarSpacing::even ? "even" : "poisson");
    out << YAML::EndMap;

    out << YAML::Key << "link" << YAML::Value << YAML::BeginMap;
    num("p_dbm", c.link.p_dbm);
    num("g_db", c.link.g_db);
    num("alpha", c.link.alpha);
    num("noise_density_dbm_hz", c.link.noise_density_dbm_hz);
    num("bandwidth_hz", c.link.bandwidth_hz);
    out << YAML::Key << "nakagami_m" << YAML::Value << c.link.nakagami_m;
    out << YAML::EndMap;

    out << YAML::Key << "motion" << YAML::Value << YAML::BeginMap;
    if (c.motion.omega_s) {
        num("omega_s", *c.motion.omega_s);
    } else {
        out << YAML::Key << "omega_s" << YAML::Value << "kepler";
    }
    num("omega_e", c.motion.omega_e);
    out << YAML::Key << "include_earth_rotation" << YAML::Value << c.motion.include_earth_rotation;
    out << YAML::EndMap;

    out << YAML::Key << "scheme" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "type" << YAML::Value << (c.scheme.adaptive ? "adaptive" : "fixed");
    out << YAML::Key << "bits_per_symbol" << YAML::Value << c.scheme.bits_per_symbol;
    num("tau_db", c.scheme.tau_db);
    out << YAML::EndMap;

    out << YAML::Key << "pass" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "inclination" << YAML::Value << exact(c.inclination) + "rad";
    out << YAML::EndMap;

    out << YAML::Key << "delay" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "d_grid_s" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double d : c.d_grid_s) {
        out << exact(d);
    }
    out << YAML::EndSeq << YAML::EndMap;

    out << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
    if (c.sim.trials) {
        out << YAML::Key << "trials" << YAML::Value << *c.sim.trials;
    }
    out << YAML::Key << "seed" << YAML::Value << c.sim.seed;
    if (c.sim.time_step_s) {
        num("time_step_s", *c.sim.time_step_s);
    }
    num("confidence_level", c.sim.confidence_level);
    out << YAML::Key << "threads" << YAML::Value << c.sim.threads;
    out << YAML::EndMap;

    out << YAML::Key << "quadrature" << YAML::Value << YAML::BeginMap;
    num("abs_tol", c.quadrature.abs_tol);
    num("rel_tol", c.quadrature.rel_tol);
    out << YAML::Key << "max_subdivisions" << YAML::Value << c.quadrature.max_subdivisions;
    num("tail_cutoff", c.quadrature.tail_cutoff);
    out << YAML::EndMap;

    if (c.sweep) {
        out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "parameter" << YAML::Value << c.sweep->parameter;
        out << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (double v : c.sweep->values) {
            out << exact(v);
        }
        out << YAML::EndSeq << YAML::EndMap;
    }

    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "path" << YAML::Value << YAML::DoubleQuoted << c.output.path;
    out << YAML::Key << "format" << YAML::Value << c.output.format;
    out << YAML::EndMap;

    out << YAML::Key << "compare" << YAML::Value << YAML::BeginMap;
    num("z_threshold", c.z_threshold);
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

} // namespace leoh
