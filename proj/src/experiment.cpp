// Copyright 2026 The qrc Authors
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

#include "qrc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qrc/dynamics.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/signal.hpp"

namespace qrc {

namespace {

using json = nlohmann::json;

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_measurements(const std::optional<std::uint64_t>& m) { return m ? std::to_string(*m) : "inf"; }

// ---------------------------------------------------------------------------
// Config parsing

template <typename T>
std::vector<T> scalar_or_list(const json& node, const char* key) {
    if (node.is_array()) return node.get<std::vector<T>>();
    if (node.is_number()) return {node.get<T>()};
    throw ConfigError(std::string("'") + key + "' must be a number or a list of numbers");
}

std::optional<std::uint64_t> parse_measurements(const json& node) {
    if (node.is_string()) {
        if (node.get<std::string>() == "unlimited") return std::nullopt;
        throw ConfigError("measurement counts must be positive integers or \"unlimited\"");
    }
    if (node.is_null()) return std::nullopt;
    if (node.is_number_integer() || node.is_number_unsigned()) {
        const auto v = node.get<std::int64_t>();
        if (v < 1) throw ConfigError("measurement counts must be >= 1");
        return static_cast<std::uint64_t>(v);
    }
    if (node.is_number_float()) {
        const double v = node.get<double>();
        if (v >= 1.0 && v == std::floor(v) && v < 1e18) return static_cast<std::uint64_t>(v);
    }
    throw ConfigError("measurement counts must be positive integers or \"unlimited\"");
}

BipartitionSet parse_bipartitions(const std::string& s) {
    if (s == "all") return BipartitionSet::kAll;
    if (s == "single") return BipartitionSet::kSingleQubit;
    throw ConfigError("bipartitions must be \"all\" or \"single\", got \"" + s + "\"");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end()) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

}  // namespace

std::string PointParams::describe() const {
    std::ostringstream os;
    os << "N=" << n_qubits << " J_s=" << j_scale << " h=" << h << " gamma=" << gamma << " dt=" << dt_injection
       << " V=" << v_virtual << " f=" << f;
    return os.str();
}

void ExperimentConfig::validate() const {
    if (n_qubits < 2 || n_qubits > 8) throw ConfigError("n_qubits must lie in 2..8");
    if (j_scale.empty()) throw ConfigError("j_scale grid is empty");
    if (h.empty()) throw ConfigError("h grid is empty");
    if (gamma.empty()) throw ConfigError("gamma grid is empty");
    if (f.empty()) throw ConfigError("f grid is empty");
    if (n_measurements.empty()) throw ConfigError("noise grid is empty");
    if (seeds.empty()) throw ConfigError("seed list is empty");
    for (double j : j_scale) {
        if (!(j >= 0.0) || !std::isfinite(j)) throw ConfigError("j_scale values must be finite and >= 0");
    }
    for (double v : h) {
        if (!std::isfinite(v)) throw ConfigError("h values must be finite");
    }
    for (double g : gamma) {
        if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("gamma values must be finite and >= 0");
    }
    for (double v : f) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("f values must be finite and > 0");
    }
    if (!(dt_injection > 0.0)) throw ConfigError("dt_injection must be > 0");
    if (v_virtual < 1) throw ConfigError("v_virtual must be >= 1");
    if (n_components < 1) throw ConfigError("n_components must be >= 1");
    if (train_sequences < 1) throw ConfigError("train_sequences must be >= 1");
    if (train_length <= washout + 1) throw ConfigError("train_length must exceed washout + 1");
    if (test_length <= washout + 1) throw ConfigError("test_length must exceed washout + 1");
    if (training.tau_max >= test_length - washout) throw ConfigError("tau_max must be shorter than the test window");
    try {
        training.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("training: ") + e.what());
    }
    if (csv_name.empty()) throw ConfigError("output csv name is empty");
}

std::vector<PointParams> ExperimentConfig::points() const {
    std::vector<PointParams> out;
    for (double fv : f) {
        for (double g : gamma) {
            for (double hv : h) {
                for (double j : j_scale) {
                    PointParams p;
                    p.n_qubits = n_qubits;
                    p.j_scale = j;
                    p.h = hv;
                    p.gamma = g;
                    p.dt_injection = dt_injection;
                    p.v_virtual = v_virtual;
                    p.washout = washout;
                    p.f = fv;
                    p.n_components = n_components;
                    p.train_sequences = train_sequences;
                    p.train_length = train_length;
                    p.test_length = test_length;
                    p.bipartitions = bipartitions;
                    out.push_back(p);
                }
            }
        }
    }
    return out;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(root, {"name", "reservoir", "signal", "noise", "seeds", "training", "output"}, "config");

    ExperimentConfig c;
    try {
        c.name = root.value("name", c.name);

        if (!root.contains("reservoir")) throw ConfigError("missing section 'reservoir'");
        const json& res = root.at("reservoir");
        reject_unknown(res,
                       {"n_qubits", "j_scale", "h", "gamma", "dt_injection", "v_virtual", "washout", "bipartitions"},
                       "reservoir");
        c.n_qubits = res.value("n_qubits", c.n_qubits);
        if (!res.contains("j_scale")) throw ConfigError("missing reservoir.j_scale");
        c.j_scale = scalar_or_list<double>(res.at("j_scale"), "j_scale");
        if (res.contains("h")) c.h = scalar_or_list<double>(res.at("h"), "h");
        if (!res.contains("gamma")) throw ConfigError("missing reservoir.gamma");
        c.gamma = scalar_or_list<double>(res.at("gamma"), "gamma");
        c.dt_injection = res.value("dt_injection", c.dt_injection);
        c.v_virtual = res.value("v_virtual", c.v_virtual);
        c.washout = res.value("washout", c.washout);
        if (res.contains("bipartitions")) c.bipartitions = parse_bipartitions(res.at("bipartitions").get<std::string>());

        if (!root.contains("signal")) throw ConfigError("missing section 'signal'");
        const json& sig = root.at("signal");
        reject_unknown(sig, {"f", "n_components", "train_sequences", "train_length", "test_length"}, "signal");
        if (!sig.contains("f")) throw ConfigError("missing signal.f");
        c.f = scalar_or_list<double>(sig.at("f"), "f");
        c.n_components = sig.value("n_components", c.n_components);
        c.train_sequences = sig.value("train_sequences", c.train_sequences);
        c.train_length = sig.value("train_length", c.train_length);
        c.test_length = sig.value("test_length", c.test_length);

        if (!root.contains("noise")) throw ConfigError("missing section 'noise'");
        const json& noise = root.at("noise");
        reject_unknown(noise, {"n_measurements"}, "noise");
        if (!noise.contains("n_measurements") || !noise.at("n_measurements").is_array()) {
            throw ConfigError("noise.n_measurements must be a list");
        }
        for (const auto& m : noise.at("n_measurements")) c.n_measurements.push_back(parse_measurements(m));

        if (!root.contains("seeds")) throw ConfigError("missing section 'seeds'");
        const json& seeds = root.at("seeds");
        reject_unknown(seeds, {"connectivity", "signal", "noise"}, "seeds");
        const auto conn = seeds.value("connectivity", std::vector<std::uint64_t>{});
        const auto sigs = seeds.value("signal", std::vector<std::uint64_t>{});
        const auto noises = seeds.value("noise", std::vector<std::uint64_t>{});
        if (conn.size() != sigs.size() || conn.size() != noises.size()) {
            throw ConfigError("seeds.connectivity, seeds.signal and seeds.noise must have equal length");
        }
        for (std::size_t i = 0; i < conn.size(); ++i) c.seeds.push_back({conn[i], sigs[i], noises[i]});

        if (root.contains("training")) {
            const json& tr = root.at("training");
            reject_unknown(tr, {"lambda_grid", "validation_fraction", "tau_max"}, "training");
            if (tr.contains("lambda_grid")) c.training.lambda_grid = tr.at("lambda_grid").get<std::vector<double>>();
            c.training.validation_fraction = tr.value("validation_fraction", c.training.validation_fraction);
            c.training.tau_max = tr.value("tau_max", c.training.tau_max);
        }
        if (root.contains("output")) {
            const json& out = root.at("output");
            reject_unknown(out, {"csv"}, "output");
            c.csv_name = out.value("csv", c.csv_name);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Single point

std::vector<ExperimentResult> run_point(const PointParams& point, const SeedTriple& seeds,
                                        const std::vector<std::optional<std::uint64_t>>& n_measurements,
                                        const TrainingSpec& training) {
    try {
        const auto start = std::chrono::steady_clock::now();

        LindbladSpec spec;
        spec.hamiltonian.connectivity = sample_connectivity(point.n_qubits, point.j_scale, seeds.connectivity);
        spec.hamiltonian.h = point.h;
        spec.gamma = point.gamma;
        const SamplingSpec sampling{point.dt_injection, point.v_virtual, point.washout};
        const Reservoir reservoir(spec, sampling);

        auto signal_spec = [&](std::size_t length, std::uint32_t substream) {
            InputSignalSpec s;
            s.f = point.f;
            s.n_components = point.n_components;
            s.k_steps = length;
            s.dt_injection = point.dt_injection;
            s.seed = seeds.signal;
            s.substream = substream;
            return s;
        };

        std::vector<InputSignal> train_signals;
        std::vector<FeatureMatrix> train_clean;
        for (std::size_t i = 0; i < point.train_sequences; ++i) {
            train_signals.push_back(generate_signal(signal_spec(point.train_length, static_cast<std::uint32_t>(i))));
            train_clean.push_back(reservoir.run(train_signals.back()).features);
        }
        const auto test_substream = static_cast<std::uint32_t>(point.train_sequences);
        const InputSignal test_signal = generate_signal(signal_spec(point.test_length, test_substream));
        RunOptions metered;
        metered.meter = true;
        const ReservoirRun test_run = reservoir.run(test_signal, metered);
        const QuantumnessSample quantumness = time_average(*test_run.trajectory, point.bipartitions);

        const double shared_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::vector<ExperimentResult> out;
        for (const auto& m : n_measurements) {
            const auto noise_start = std::chrono::steady_clock::now();
            std::vector<FeatureMatrix> train_noisy;
            for (std::size_t i = 0; i < train_clean.size(); ++i) {
                train_noisy.push_back(apply_noise(train_clean[i], NoiseSpec{m, seeds.noise, static_cast<std::uint32_t>(i)}));
            }
            const FeatureMatrix test_noisy = apply_noise(test_run.features, NoiseSpec{m, seeds.noise, test_substream});

            std::vector<LabelledRun> train_runs;
            for (std::size_t i = 0; i < train_noisy.size(); ++i) {
                train_runs.push_back({&train_noisy[i], &train_signals[i], point.washout});
            }
            const LabelledRun test_labelled{&test_noisy, &test_signal, point.washout};

            ExperimentResult r;
            r.seeds = seeds;
            r.point = point;
            r.n_measurements = m;
            r.sigma = sigma_from_measurements(m);
            r.tau_max = training.tau_max;
            r.capacity = capacity_profile(train_runs, test_labelled, training);
            r.ent_mean = quantumness.log_negativity_mean;
            r.coh_mean = quantumness.coherence_normalized;
            r.wall_clock_seconds =
                shared_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - noise_start).count();
            out.push_back(std::move(r));
        }
        return out;
    } catch (const PointError&) {
        throw;
    } catch (const std::exception& e) {
        throw PointError("[" + point.describe() + " seeds=" + std::to_string(seeds.connectivity) + "/" +
                         std::to_string(seeds.signal) + "/" + std::to_string(seeds.noise) + "] " + e.what());
    }
}

ExperimentResult run_point(const PointParams& point, const SeedTriple& seeds,
                           std::optional<std::uint64_t> n_measurements, const TrainingSpec& training) {
    return std::move(run_point(point, seeds, std::vector{n_measurements}, training).front());
}

// ---------------------------------------------------------------------------
// CSV

std::vector<std::string> csv_header(std::size_t tau_max) {
    std::vector<std::string> cols{"seed_conn", "seed_sig", "seed_noise",   "n_qubits", "j_scale",
                                  "h",         "gamma",    "dt_injection", "v_virtual", "f",
                                  "sigma",     "n_meas",   "tau_max",      "c_total"};
    for (std::size_t t = 0; t <= tau_max; ++t) cols.push_back("c_tau_" + std::to_string(t));
    cols.insert(cols.end(), {"ent_mean", "coh_mean", "status"});
    return cols;
}

std::string csv_row(const ExperimentResult& r, std::size_t tau_max) {
    std::vector<std::string> cells{std::to_string(r.seeds.connectivity),
                                   std::to_string(r.seeds.signal),
                                   std::to_string(r.seeds.noise),
                                   std::to_string(r.point.n_qubits),
                                   fmt_double(r.point.j_scale),
                                   fmt_double(r.point.h),
                                   fmt_double(r.point.gamma),
                                   fmt_double(r.point.dt_injection),
                                   std::to_string(r.point.v_virtual),
                                   fmt_double(r.point.f),
                                   fmt_double(r.sigma),
                                   fmt_measurements(r.n_measurements),
                                   std::to_string(tau_max)};
    const bool ok = !r.error.has_value();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    cells.push_back(fmt_double(ok ? r.capacity.total : nan));
    for (std::size_t t = 0; t <= tau_max; ++t) {
        cells.push_back(fmt_double(ok && t < r.capacity.per_tau.size() ? r.capacity.per_tau[t] : nan));
    }
    cells.push_back(fmt_double(ok ? r.ent_mean : nan));
    cells.push_back(fmt_double(ok ? r.coh_mean : nan));
    if (ok) {
        cells.push_back("ok");
    } else {
        std::string msg = "error: " + *r.error;
        std::replace_if(msg.begin(), msg.end(), [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ' ');
        cells.push_back(msg);
    }

    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

namespace {

std::string join_header(std::size_t tau_max) {
    std::string line;
    for (const auto& c : csv_header(tau_max)) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line;
}

}  // namespace

void write_csv(std::ostream& os, const SweepOutcome& outcome, std::size_t tau_max) {
    os << join_header(tau_max) << '\n';
    for (const auto& r : outcome.results) os << csv_row(r, tau_max) << '\n';
}

// ---------------------------------------------------------------------------
// Sweep

SweepOutcome run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
    config.validate();
    const auto points = config.points();
    const std::size_t n_noise = config.n_measurements.size();
    const std::size_t n_units = points.size() * config.seeds.size();
    const std::size_t tau_max = config.training.tau_max;

    std::vector<std::vector<ExperimentResult>> slots(n_units);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};
    std::mutex sink;

    if (options.stream) *options.stream << join_header(tau_max) << '\n' << std::flush;

    auto worker = [&] {
        for (std::size_t unit = next++; unit < n_units; unit = next++) {
            const PointParams& point = points[unit / config.seeds.size()];
            const SeedTriple& seeds = config.seeds[unit % config.seeds.size()];
            std::vector<ExperimentResult> rows;
            try {
                rows = run_point(point, seeds, config.n_measurements, config.training);
            } catch (const std::exception& e) {
                failures += n_noise;
                for (const auto& m : config.n_measurements) {
                    ExperimentResult r;
                    r.seeds = seeds;
                    r.point = point;
                    r.n_measurements = m;
                    r.sigma = sigma_from_measurements(m);
                    r.tau_max = tau_max;
                    r.error = e.what();
                    rows.push_back(std::move(r));
                }
            }
            if (options.stream) {
                std::lock_guard lock(sink);
                for (const auto& r : rows) *options.stream << csv_row(r, tau_max) << '\n';
                options.stream->flush();
            }
            slots[unit] = std::move(rows);
        }
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(n_units)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    }

    SweepOutcome outcome;
    outcome.failures = failures;
    for (auto& rows : slots) {
        for (auto& r : rows) outcome.results.push_back(std::move(r));
    }
    return outcome;
}

}  // namespace qrc
