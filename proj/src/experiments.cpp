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

#include "qdsim/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "qdsim/errors.hpp"
#include "qdsim/evolution.hpp"
#include "qdsim/parallel.hpp"

namespace qdsim {

namespace {

ModelParams model_for(const ExperimentConfig& cfg, double omega_s) {
    return make_model(omega_s, cfg.squeezing_r, cfg.spectral(), cfg.n_osc);
}

std::vector<NormalModeBasis> bases_for(const ExperimentConfig& cfg, int workers) {
    std::vector<NormalModeBasis> bases(cfg.omega_s_values.size());
    parallel_for(static_cast<int>(bases.size()), workers, [&](int i) {
        bases[i] = normal_mode_decomposition(
            potential_matrix(model_for(cfg, cfg.omega_s_values[i])));
    });
    return bases;
}

std::vector<double> half_step_grid(const std::vector<double>& grid) {
    std::vector<double> half;
    half.reserve(2 * grid.size());
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        half.push_back(grid[i]);
        half.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    half.push_back(grid.back());
    return half;
}

}  // namespace

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string CsvDocument::body() const {
    std::string out = header + "\n";
    for (const auto& r : rows) {
        out += r;
        out += "\n";
    }
    return out;
}

void write_csv(const std::string& path, const CsvDocument& doc, const std::string& tool) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot open output file '" + path + "'");
    const std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# qdsim " << tool << " generated " << stamp << "\n";
    out << doc.body();
}

CsvDocument RedundancyResult::csv() const {
    CsvDocument doc;
    doc.header = "omega_s,t,f_delta,h_system";
    for (size_t wi = 0; wi < omega_s.size(); ++wi)
        for (size_t ti = 0; ti < times.size(); ++ti)
            doc.rows.push_back(fmt12(omega_s[wi]) + "," + fmt12(times[ti]) + "," +
                               fmt12(f_delta[wi][ti]) + "," + fmt12(h_system[wi][ti]));
    return doc;
}

RedundancyResult run_redundancy_dynamics(const ExperimentConfig& cfg, int workers) {
    validate_config(cfg);
    RedundancyResult result;
    result.omega_s = cfg.omega_s_values;
    result.times = cfg.time_grid();
    const int nw = static_cast<int>(result.omega_s.size());
    const int nt = static_cast<int>(result.times.size());
    result.f_delta.assign(nw, std::vector<double>(nt, 0.0));
    result.h_system.assign(nw, std::vector<double>(nt, 0.0));

    const auto bases = bases_for(cfg, workers);
    const auto fractions = cfg.fraction_grid();
    parallel_for(nw * nt, workers, [&](int item) {
        const int wi = item / nt;
        const int ti = item % nt;
        const ModelParams model = model_for(cfg, cfg.omega_s_values[wi]);
        const double t = result.times[ti];
        const Mat cov = evolved_pure_cov(bases[wi], initial_cov_diagonal(model), t);
        FragmentInfoEngine engine(cov, cfg.n_osc, /*global_is_pure=*/true);
        result.h_system[wi][ti] = engine.h_system();
        result.f_delta[wi][ti] = f_delta_from_cov(cov, cfg.n_osc, t, cfg.delta, fractions,
                                                  cfg.n_samples, cfg.master_seed,
                                                  /*global_is_pure=*/true);
    });
    return result;
}

CsvDocument PartialInfoResult::csv() const {
    CsvDocument doc;
    doc.header = "omega_s,f,mi_mean,mi_stderr,h_system";
    for (size_t wi = 0; wi < omega_s.size(); ++wi) {
        const MutualInfoCurve& c = curves[wi];
        for (size_t fi = 0; fi < c.fractions.size(); ++fi)
            doc.rows.push_back(fmt12(omega_s[wi]) + "," + fmt12(c.fractions[fi]) + "," +
                               fmt12(c.mi_mean[fi]) + "," + fmt12(c.mi_stderr[fi]) + "," +
                               fmt12(c.h_system));
    }
    return doc;
}

PartialInfoResult run_partial_info(const ExperimentConfig& cfg, int workers) {
    validate_config(cfg);
    PartialInfoResult result;
    result.omega_s = cfg.omega_s_values;
    const int nw = static_cast<int>(result.omega_s.size());
    result.curves.resize(nw);
    const double t_snap = cfg.t_max;
    const auto bases = bases_for(cfg, workers);
    const auto fractions = cfg.fraction_grid();
    const int nf = static_cast<int>(fractions.size());

    // one covariance per omega_s, then independent (omega_s, fraction) items
    std::vector<Mat> covs(nw);
    parallel_for(nw, workers, [&](int wi) {
        const ModelParams model = model_for(cfg, cfg.omega_s_values[wi]);
        covs[wi] = evolved_pure_cov(bases[wi], initial_cov_diagonal(model), t_snap);
        result.curves[wi].time = t_snap;
        result.curves[wi].n_samples = cfg.n_samples;
        result.curves[wi].fractions = fractions;
        result.curves[wi].mi_mean.assign(nf, 0.0);
        result.curves[wi].mi_stderr.assign(nf, 0.0);
        result.curves[wi].h_system =
            FragmentInfoEngine(covs[wi], cfg.n_osc, true).h_system();
        if (result.curves[wi].h_system < 1e-6)
            std::fprintf(stderr,
                         "warning: omega_s=%g has degenerate H_S=%g nats at t=%g; raw I "
                         "emitted\n",
                         cfg.omega_s_values[wi], result.curves[wi].h_system, t_snap);
    });
    parallel_for(nw * nf, workers, [&](int item) {
        const int wi = item / nf;
        const int fi = item % nf;
        FragmentInfoEngine engine(covs[wi], cfg.n_osc, /*global_is_pure=*/true);
        const double f = fractions[fi];
        const auto samples = sample_fragments(cfg.n_osc, f, cfg.n_samples,
                                              fragment_point_seed(cfg.master_seed, t_snap, f));
        std::vector<double> values;
        values.reserve(samples.size());
        for (const auto& s : samples) values.push_back(engine.mi(s.fragment));
        const int n = static_cast<int>(values.size());
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        result.curves[wi].mi_mean[fi] = mean;
        result.curves[wi].mi_stderr[fi] = n > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    });
    return result;
}

CsvDocument SweepResult::csv() const {
    CsvDocument doc;
    doc.header = "omega_s,j_omega_s,n_measure,f_delta,nf_measure,h_system";
    for (const SweepRow& r : rows)
        doc.rows.push_back(fmt12(r.omega_s) + "," + fmt12(r.j_omega_s) + "," +
                           fmt12(r.n_measure) + "," + fmt12(r.f_delta) + "," +
                           fmt12(r.nf_measure) + "," + fmt12(r.h_system));
    return doc;
}

std::vector<ProbePair> config_probe_ensemble(const ExperimentConfig& cfg, double omega_s) {
    if (!cfg.nm_displaced && !cfg.nm_squeezed)
        throw ConfigError("field 'nm_displaced': probe ensemble must not be empty");
    std::vector<ProbePair> all = default_probe_ensemble(omega_s);
    std::vector<ProbePair> selected;
    for (auto& p : all) {
        const bool displaced = p.label.rfind("disp", 0) == 0;
        if ((displaced && cfg.nm_displaced) || (!displaced && cfg.nm_squeezed))
            selected.push_back(std::move(p));
    }
    return selected;
}

SweepResult run_spectrum_sweep(const ExperimentConfig& cfg, int workers) {
    validate_config(cfg);
    SweepResult result;
    const int nw = static_cast<int>(cfg.omega_s_values.size());
    result.rows.resize(nw);
    result.traces.resize(nw);
    const auto bases = bases_for(cfg, workers);
    const auto grid = cfg.time_grid();
    const auto trace_idx = cfg.trace_indices();
    const int ntr = static_cast<int>(trace_idx.size());
    const auto fractions = cfg.fraction_grid();

    // N measure per omega_s; the half-step grid guards against an
    // under-resolved dt before anything downstream consumes N
    parallel_for(nw, workers, [&](int wi) {
        const ModelParams model = model_for(cfg, cfg.omega_s_values[wi]);
        const auto pairs = config_probe_ensemble(cfg, model.omega_s);
        const NMResult nm = nm_measure_with_basis(model, bases[wi], pairs, grid);
        if (cfg.nm_resolution_check) {
            const NMResult nm_half =
                nm_measure_with_basis(model, bases[wi], pairs, half_step_grid(grid));
            const double diff = std::abs(nm_half.n_measure - nm.n_measure);
            const double scale = std::max(nm.n_measure, nm_half.n_measure);
            if (diff >= 0.05 * scale + 1e-10)
                throw ConsistencyError(
                    "N measure changes by more than 5% under half-step refinement at omega_s=" +
                    std::to_string(model.omega_s) + "; time grid under-resolved");
        }
        result.rows[wi].omega_s = model.omega_s;
        result.rows[wi].j_omega_s = rubin_spectral_density(model.omega_s, cfg.spectral());
        result.rows[wi].n_measure = nm.n_measure;
        result.traces[wi].delta = cfg.delta;
        result.traces[wi].times.resize(ntr);
        result.traces[wi].f_delta.resize(ntr);
    });

    std::vector<std::vector<double>> h_end(nw, std::vector<double>(ntr, 0.0));
    parallel_for(nw * ntr, workers, [&](int item) {
        const int wi = item / ntr;
        const int ki = item % ntr;
        const double t = grid[trace_idx[ki]];
        const ModelParams model = model_for(cfg, cfg.omega_s_values[wi]);
        const Mat cov = evolved_pure_cov(bases[wi], initial_cov_diagonal(model), t);
        FragmentInfoEngine engine(cov, cfg.n_osc, true);
        result.traces[wi].times[ki] = t;
        result.traces[wi].f_delta[ki] = f_delta_from_cov(
            cov, cfg.n_osc, t, cfg.delta, fractions, cfg.n_samples, cfg.master_seed, true);
        h_end[wi][ki] = engine.h_system();
    });

    for (int wi = 0; wi < nw; ++wi) {
        result.rows[wi].f_delta = result.traces[wi].f_delta.back();
        result.rows[wi].nf_measure = non_monotonicity_nf(result.traces[wi]);
        result.rows[wi].h_system = h_end[wi].back();
    }
    return result;
}

Mat rk4_propagator(const Mat& v, double t, int steps) {
    const int n = v.rows();
    const int dim = 2 * n;
    // A s: x-rows pick up p-rows, p-rows pick up -V x-rows
    auto flow = [&](const Mat& s) {
        Mat out(dim, dim);
        for (int j = 0; j < dim; ++j) {
            for (int i = 0; i < n; ++i) out(2 * i, j) = s(2 * i + 1, j);
            for (int i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k) acc -= v(i, k) * s(2 * k, j);
                out(2 * i + 1, j) = acc;
            }
        }
        return out;
    };
    Mat s = Mat::identity(dim);
    const double h = t / steps;
    for (int step = 0; step < steps; ++step) {
        const Mat k1 = flow(s);
        Mat tmp = s;
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) tmp(i, j) = s(i, j) + 0.5 * h * k1(i, j);
        const Mat k2 = flow(tmp);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) tmp(i, j) = s(i, j) + 0.5 * h * k2(i, j);
        const Mat k3 = flow(tmp);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) tmp(i, j) = s(i, j) + h * k3(i, j);
        const Mat k4 = flow(tmp);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i)
                s(i, j) += h / 6.0 * (k1(i, j) + 2.0 * k2(i, j) + 2.0 * k3(i, j) + k4(i, j));
    }
    return s;
}

std::string OracleReport::text() const {
    std::string out = "oracle check: normal-mode propagation vs step-halved RK4\n";
    for (size_t i = 0; i < checkpoints.size(); ++i)
        out += "  t = " + fmt12(checkpoints[i]) + ": max |dcov| = " + fmt12(max_deviation[i]) +
               "\n";
    out += std::string("result: ") + (pass ? "PASS" : "FAIL") +
           " (max deviation " + fmt12(overall_max) + ", tolerance 1e-06)\n";
    return out;
}

OracleReport run_oracle_check(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.n_osc > 4) throw ConfigError("field 'n_osc': oracle check requires n_osc <= 4");
    if (cfg.omega_s_values.size() != 1)
        throw ConfigError("field 'omega_s': oracle check requires a single frequency");
    const ModelParams model = model_for(cfg, cfg.omega_s_values[0]);
    const Mat v = potential_matrix(model);
    const NormalModeBasis basis = normal_mode_decomposition(v);
    const GaussianState init = initial_state(model);

    OracleReport report;
    report.overall_max = 0.0;
    for (int c = 1; c <= 5; ++c) {
        const double t = cfg.t_max * c / 5.0;
        // refine RK4 until self-converged well below the comparison tolerance
        int steps = std::max(64, static_cast<int>(std::ceil(t / 0.05)));
        Mat coarse = rk4_propagator(v, t, steps);
        Mat fine;
        bool converged = false;
        for (int iter = 0; iter < 16; ++iter) {
            steps *= 2;
            fine = rk4_propagator(v, t, steps);
            if (max_abs_diff(coarse, fine) < 1e-8) {
                converged = true;
                break;
            }
            coarse = fine;
        }
        if (!converged)
            throw ConsistencyError("oracle inconclusive: RK4 refinement did not converge at t=" +
                                   std::to_string(t));
        const GaussianState ref = evolve_covariance({fine}, init);
        const Mat cov_nm = evolved_pure_cov(basis, initial_cov_diagonal(model), t);
        const double dev = max_abs_diff(ref.cov(), cov_nm);
        report.checkpoints.push_back(t);
        report.max_deviation.push_back(dev);
        report.overall_max = std::max(report.overall_max, dev);
    }
    report.pass = report.overall_max < 1e-6;
    return report;
}

}  // namespace qdsim
