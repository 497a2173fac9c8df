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

#pragma once

#include <string>
#include <vector>

#include "qdsim/config.hpp"
#include "qdsim/darwinism.hpp"
#include "qdsim/memory.hpp"

namespace qdsim {

/// 12-significant-digit decimal, C locale; the CSV number format.
std::string fmt12(double x);

struct CsvDocument {
    std::string header;
    std::vector<std::string> rows;

    /// Header plus rows; the part that must be byte-identical across runs.
    std::string body() const;
};

/// Write with a leading timestamped '#' comment line.
void write_csv(const std::string& path, const CsvDocument& doc, const std::string& tool);

/// f_delta over the (omega_s, t) grid. CSV: omega_s,t,f_delta,h_system with
/// one row per grid point.
struct RedundancyResult {
    std::vector<double> omega_s;
    std::vector<double> times;
    std::vector<std::vector<double>> f_delta;   // [omega][time]
    std::vector<std::vector<double>> h_system;  // [omega][time]
    CsvDocument csv() const;
};

RedundancyResult run_redundancy_dynamics(const ExperimentConfig& cfg, int workers);

/// Mutual-information curves at t = t_max, one block per omega_s.
/// CSV: omega_s,f,mi_mean,mi_stderr,h_system.
struct PartialInfoResult {
    std::vector<double> omega_s;
    std::vector<MutualInfoCurve> curves;
    CsvDocument csv() const;
};

PartialInfoResult run_partial_info(const ExperimentConfig& cfg, int workers);

/// One row of the spectrum sweep (Fig. 3 analogue).
struct SweepRow {
    double omega_s = 0;
    double j_omega_s = 0;
    double n_measure = 0;
    double f_delta = 0;
    double nf_measure = 0;
    double h_system = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<RedundancyTrace> traces;  // per omega_s, on the strided grid
    CsvDocument csv() const;
};

SweepResult run_spectrum_sweep(const ExperimentConfig& cfg, int workers);

/// Probe ensemble selected by the config toggles.
std::vector<ProbePair> config_probe_ensemble(const ExperimentConfig& cfg, double omega_s);

/// 4th-order fixed-step integration of dS/dt = A S, A the Hamiltonian flow of
/// the coupled potential. The step-halved reference path for the normal-mode
/// propagator; production evolution never uses it.
Mat rk4_propagator(const Mat& v, double t, int steps);

struct OracleReport {
    std::vector<double> checkpoints;
    std::vector<double> max_deviation;  // covariance entries, per checkpoint
    double overall_max = 0;
    bool pass = false;
    std::string text() const;
};

/// Normal-mode vs step-halved RK4 comparison on a small model (N <= 4);
/// pass iff max covariance deviation < 1e-6 at all five checkpoints.
/// Throws ConsistencyError when RK4 refinement does not converge.
OracleReport run_oracle_check(const ExperimentConfig& cfg);

}  // namespace qdsim
