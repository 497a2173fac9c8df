// Copyright 2026 The qdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qdsim/errors.hpp"

namespace qdsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': cannot parse number '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': cannot parse integer '" + value + "'");
    }
}

uint64_t parse_uint64(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': cannot parse seed '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError("field '" + key + "': expected boolean, got '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("field '" + key + "': empty list");
    return out;
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        kv[key] = value;
    }
    return kv;
}

KeyValues parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "n_osc",        "omega0",         "omega_r",       "kappa",
        "squeezing_r",  "omega_s",        "omega_s_values", "omega_s_min",
        "omega_s_max",  "omega_s_points", "t_max",         "dt",
        "delta",        "fraction_min",   "fraction_max",  "fraction_step",
        "n_samples",    "master_seed",    "f_delta_stride", "nm_displaced",
        "nm_squeezed",  "nm_resolution_check",             "output_dir"};
    return keys;
}

std::vector<double> ExperimentConfig::time_grid() const {
    const int n = static_cast<int>(std::llround(t_max / dt)) + 1;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = i * dt;
    return grid;
}

std::vector<double> ExperimentConfig::fraction_grid() const {
    std::vector<double> grid;
    const int steps = static_cast<int>(std::llround((fraction_max - fraction_min) / fraction_step));
    for (int i = 0; i <= steps; ++i) {
        const double f = fraction_min + i * fraction_step;
        if (f <= fraction_max + 1e-12) grid.push_back(std::min(f, fraction_max));
    }
    return grid;
}

std::vector<int> ExperimentConfig::trace_indices() const {
    const int n = static_cast<int>(std::llround(t_max / dt)) + 1;
    std::vector<int> idx;
    for (int i = 0; i < n; i += f_delta_stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);
    return idx;
}

ExperimentConfig build_config(const KeyValues& kv) {
    for (const auto& [key, value] : kv) {
        (void)value;
        if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
            throw ConfigError("unknown config key '" + key + "'");
    }
    ExperimentConfig cfg;
    auto get = [&kv](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("n_osc")) cfg.n_osc = static_cast<int>(parse_int("n_osc", *v));
    if (const auto* v = get("omega0")) cfg.omega0 = parse_double("omega0", *v);
    if (const auto* v = get("omega_r")) cfg.omega_r = parse_double("omega_r", *v);
    if (const auto* v = get("kappa")) cfg.kappa = parse_double("kappa", *v);
    if (const auto* v = get("squeezing_r")) cfg.squeezing_r = parse_double("squeezing_r", *v);
    if (const auto* v = get("t_max")) cfg.t_max = parse_double("t_max", *v);
    if (const auto* v = get("dt")) cfg.dt = parse_double("dt", *v);
    if (const auto* v = get("delta")) cfg.delta = parse_double("delta", *v);
    if (const auto* v = get("fraction_min")) cfg.fraction_min = parse_double("fraction_min", *v);
    if (const auto* v = get("fraction_max")) cfg.fraction_max = parse_double("fraction_max", *v);
    if (const auto* v = get("fraction_step")) cfg.fraction_step = parse_double("fraction_step", *v);
    if (const auto* v = get("n_samples")) cfg.n_samples = static_cast<int>(parse_int("n_samples", *v));
    if (const auto* v = get("master_seed")) cfg.master_seed = parse_uint64("master_seed", *v);
    if (const auto* v = get("f_delta_stride"))
        cfg.f_delta_stride = static_cast<int>(parse_int("f_delta_stride", *v));
    if (const auto* v = get("nm_displaced")) cfg.nm_displaced = parse_bool("nm_displaced", *v);
    if (const auto* v = get("nm_squeezed")) cfg.nm_squeezed = parse_bool("nm_squeezed", *v);
    if (const auto* v = get("nm_resolution_check"))
        cfg.nm_resolution_check = parse_bool("nm_resolution_check", *v);
    if (const auto* v = get("output_dir")) cfg.output_dir = *v;

    const bool has_single = kv.count("omega_s") > 0;
    const bool has_list = kv.count("omega_s_values") > 0;
    const bool has_range =
        kv.count("omega_s_min") || kv.count("omega_s_max") || kv.count("omega_s_points");
    if (has_single + has_list + has_range != 1)
        throw ConfigError(
            "exactly one of omega_s | omega_s_values | omega_s_min/max/points is required");
    if (has_single) {
        cfg.omega_s_values = {parse_double("omega_s", *get("omega_s"))};
    } else if (has_list) {
        cfg.omega_s_values = parse_double_list("omega_s_values", *get("omega_s_values"));
    } else {
        if (!get("omega_s_min") || !get("omega_s_max") || !get("omega_s_points"))
            throw ConfigError("omega_s_min, omega_s_max and omega_s_points must appear together");
        const double lo = parse_double("omega_s_min", *get("omega_s_min"));
        const double hi = parse_double("omega_s_max", *get("omega_s_max"));
        const int n = static_cast<int>(parse_int("omega_s_points", *get("omega_s_points")));
        if (n < 1) throw ConfigError("field 'omega_s_points': must be >= 1");
        if (!(lo < hi) && n > 1) throw ConfigError("field 'omega_s_min': must be < omega_s_max");
        for (int i = 0; i < n; ++i)
            cfg.omega_s_values.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n_osc < 1) throw ConfigError("field 'n_osc': bath needs at least one oscillator");
    if (!(cfg.omega0 >= 0.0)) throw ConfigError("field 'omega0': must be >= 0");
    if (!(cfg.omega0 < cfg.omega_r))
        throw ConfigError("field 'omega0': must be strictly below omega_r");
    if (!(cfg.kappa >= 0.0)) throw ConfigError("field 'kappa': must be nonnegative");
    if (!(cfg.t_max > 0.0)) throw ConfigError("field 't_max': must be positive");
    if (!(cfg.dt > 0.0)) throw ConfigError("field 'dt': must be positive");
    const double steps = cfg.t_max / cfg.dt;
    if (std::abs(steps - std::llround(steps)) > 1e-6)
        throw ConfigError("field 'dt': t_max must be an integer multiple of dt");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("field 'delta': must lie in (0,1)");
    if (!(cfg.fraction_min > 0.0)) throw ConfigError("field 'fraction_min': must be positive");
    if (!(cfg.fraction_max <= 1.0)) throw ConfigError("field 'fraction_max': must be <= 1");
    if (!(cfg.fraction_min <= cfg.fraction_max))
        throw ConfigError("field 'fraction_min': must be <= fraction_max");
    if (!(cfg.fraction_step > 0.0)) throw ConfigError("field 'fraction_step': must be positive");
    if (cfg.n_samples < 1) throw ConfigError("field 'n_samples': must be >= 1");
    if (cfg.f_delta_stride < 1) throw ConfigError("field 'f_delta_stride': must be >= 1");
    if (cfg.omega_s_values.empty()) throw ConfigError("field 'omega_s': no sweep points");
    for (double w : cfg.omega_s_values)
        if (!(w > 0.0)) throw ConfigError("field 'omega_s': frequencies must be positive");

    // stability of every swept frequency, cheapest first (Schur bound equals
    // the exact positivity condition for the arrow matrix)
    const SpectralDensityParams p = cfg.spectral();
    const BathDiscretization bath = discretize(p, cfg.n_osc);
    double schur = 0.0;
    for (int k = 0; k < bath.n_osc; ++k)
        schur += bath.couplings[k] * bath.couplings[k] / (bath.omegas[k] * bath.omegas[k]);
    for (double w : cfg.omega_s_values) {
        if (w * w - schur <= 0.0)
            throw ConfigError("unstable configuration: omega_s=" + std::to_string(w) +
                              " with kappa=" + std::to_string(cfg.kappa) +
                              " makes the potential indefinite");
    }
}

}  // namespace qdsim
