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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "qdsim/config.hpp"
#include "qdsim/errors.hpp"
#include "qdsim/experiments.hpp"
#include "qdsim/linalg.hpp"

namespace {

void print_usage() {
    std::cout <<
        "usage: qdsim <subcommand> --config <path> [--seed N] [--out <dir>] [--workers K]\n"
        "             [--<key> <value> ...]\n"
        "\n"
        "subcommands:\n"
        "  redundancy    f_delta over the (omega_s, t) grid  -> redundancy.csv\n"
        "  partial-info  I(S:f) curves at t = t_max          -> partial_info.csv\n"
        "  sweep         N, f_delta, N_f vs omega_s          -> sweep.csv\n"
        "  oracle        propagator vs step-halved RK4 (n_osc <= 4)\n"
        "  validate      parse and validate the config, no computation\n"
        "\n"
        "Any config key can be overridden with a flag of the same name,\n"
        "e.g. --omega_s 0.5 --n_samples 10. Exit codes: 0 success,\n"
        "2 config validation failure, 3 numerical-consistency failure.\n";
}

struct CliArgs {
    std::string subcommand;
    std::string config_path;
    std::string out_dir;  // empty: use config's output_dir
    int workers = 0;      // 0: hardware concurrency
    qdsim::KeyValues overrides;
};

CliArgs parse_cli(int argc, char** argv) {
    CliArgs args;
    if (argc < 2) throw qdsim::ConfigError("missing subcommand (try --help)");
    args.subcommand = argv[1];
    for (int i = 2; i < argc; ++i) {
        std::string flag = argv[i];
        if (flag.rfind("--", 0) != 0) throw qdsim::ConfigError("unexpected argument '" + flag + "'");
        flag = flag.substr(2);
        if (i + 1 >= argc) throw qdsim::ConfigError("flag '--" + flag + "' needs a value");
        const std::string value = argv[++i];
        if (flag == "config") {
            args.config_path = value;
        } else if (flag == "seed") {
            args.overrides["master_seed"] = value;
        } else if (flag == "out") {
            args.out_dir = value;
        } else if (flag == "workers") {
            args.workers = std::atoi(value.c_str());
            if (args.workers < 1) throw qdsim::ConfigError("flag '--workers' must be >= 1");
        } else {
            const auto& keys = qdsim::config_keys();
            if (std::find(keys.begin(), keys.end(), flag) == keys.end())
                throw qdsim::ConfigError("unknown flag '--" + flag + "'");
            args.overrides[flag] = value;
        }
    }
    if (args.config_path.empty()) throw qdsim::ConfigError("--config is required");
    return args;
}

int run(int argc, char** argv) {
    if (argc >= 2 && (std::string(argv[1]) == "--help" || std::string(argv[1]) == "-h")) {
        print_usage();
        return 0;
    }
    const CliArgs args = parse_cli(argc, argv);
    qdsim::KeyValues kv = qdsim::parse_config_file(args.config_path);
    // an omega_s override in one form displaces the file's other forms
    static const std::vector<std::string> kOmegaForms[] = {
        {"omega_s"}, {"omega_s_values"}, {"omega_s_min", "omega_s_max", "omega_s_points"}};
    for (const auto& form : kOmegaForms) {
        bool overridden = false;
        for (const auto& key : form) overridden |= args.overrides.count(key) > 0;
        if (!overridden) continue;
        for (const auto& other : kOmegaForms)
            if (&other != &form)
                for (const auto& key : other) kv.erase(key);
    }
    for (const auto& [k, v] : args.overrides) kv[k] = v;
    const qdsim::ExperimentConfig cfg = qdsim::build_config(kv);
    const std::string out_dir = args.out_dir.empty() ? cfg.output_dir : args.out_dir;
    const int workers =
        args.workers > 0 ? args.workers
                         : std::max(1u, std::thread::hardware_concurrency());

    if (args.subcommand == "validate") {
        std::cout << "config ok: " << cfg.omega_s_values.size() << " omega_s point(s), "
                  << cfg.time_grid().size() << " time point(s), N=" << cfg.n_osc << "\n";
        return 0;
    }
    if (args.subcommand == "redundancy") {
        const auto result = qdsim::run_redundancy_dynamics(cfg, workers);
        qdsim::write_csv(out_dir + "/redundancy.csv", result.csv(), "redundancy");
        std::cout << "wrote " << out_dir << "/redundancy.csv (" << result.csv().rows.size()
                  << " rows)\n";
        return 0;
    }
    if (args.subcommand == "partial-info") {
        const auto result = qdsim::run_partial_info(cfg, workers);
        qdsim::write_csv(out_dir + "/partial_info.csv", result.csv(), "partial-info");
        std::cout << "wrote " << out_dir << "/partial_info.csv (" << result.csv().rows.size()
                  << " rows)\n";
        return 0;
    }
    if (args.subcommand == "sweep") {
        const auto result = qdsim::run_spectrum_sweep(cfg, workers);
        qdsim::write_csv(out_dir + "/sweep.csv", result.csv(), "sweep");
        std::cout << "wrote " << out_dir << "/sweep.csv (" << result.csv().rows.size()
                  << " rows)\n";
        return 0;
    }
    if (args.subcommand == "oracle") {
        const auto report = qdsim::run_oracle_check(cfg);
        std::cout << report.text();
        if (!report.pass) throw qdsim::ConsistencyError("oracle deviation above tolerance");
        return 0;
    }
    throw qdsim::ConfigError("unknown subcommand '" + args.subcommand + "'");
}

}  // namespace

int main(int argc, char** argv) {
    qdsim::use_sequential_blas();
    try {
        return run(argc, argv);
    } catch (const qdsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qdsim::ConsistencyError& e) {
        std::cerr << "numerical-consistency error: " << e.what() << "\n";
        return 3;
    } catch (const qdsim::SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
