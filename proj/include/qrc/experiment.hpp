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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrc/learning.hpp"
#include "qrc/quantumness.hpp"

namespace qrc {

/// Raised for malformed or inconsistent experiment configurations.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A failure inside one grid point, tagged with that point's description.
class PointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SeedTriple {
    std::uint64_t connectivity = 0;
    std::uint64_t signal = 0;
    std::uint64_t noise = 0;

    auto operator<=>(const SeedTriple&) const = default;
};

/// Everything that defines one reservoir simulation, noise excluded.
struct PointParams {
    int n_qubits = 4;
    double j_scale = 1.0;
    double h = 2.0;
    double gamma = 0.01;
    double dt_injection = 2.5;
    int v_virtual = 10;
    std::size_t washout = 100;
    double f = 1.0;
    int n_components = 20;
    std::size_t train_sequences = 5;
    std::size_t train_length = 1000;
    std::size_t test_length = 500;
    BipartitionSet bipartitions = BipartitionSet::kAll;

    std::string describe() const;
};

struct ExperimentConfig {
    std::string name = "experiment";
    int n_qubits = 4;
    std::vector<double> j_scale;
    std::vector<double> h{2.0};
    std::vector<double> gamma;
    double dt_injection = 2.5;
    int v_virtual = 10;
    std::size_t washout = 100;
    BipartitionSet bipartitions = BipartitionSet::kAll;

    std::vector<double> f;
    int n_components = 20;
    std::size_t train_sequences = 5;
    std::size_t train_length = 1000;
    std::size_t test_length = 500;

    /// Empty entries mean unlimited measurements (sigma = 0).
    std::vector<std::optional<std::uint64_t>> n_measurements;
    std::vector<SeedTriple> seeds;
    TrainingSpec training;
    std::string csv_name = "results.csv";

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;

    /// Grid points in canonical order: f, gamma, h, j_scale (outer to inner).
    std::vector<PointParams> points() const;
};

/// JSON config; see configs/ and the README for the schema.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ExperimentResult {
    SeedTriple seeds;
    PointParams point;
    std::optional<std::uint64_t> n_measurements;
    double sigma = 0.0;
    std::size_t tau_max = 0;
    CapacityProfile capacity;
    double ent_mean = 0.0;
    double coh_mean = 0.0;
    double wall_clock_seconds = 0.0;
    /// Set on error rows; capacity and quantumness fields are then meaningless.
    std::optional<std::string> error;
};

/// Composes dynamics -> reservoir -> quantumness -> learning for one point
/// and one seed triple, once per measurement budget. The clean simulation is
/// shared; each budget only adds its own readout noise. Errors are rethrown
/// as PointError with the point attached.
std::vector<ExperimentResult> run_point(const PointParams& point, const SeedTriple& seeds,
                                        const std::vector<std::optional<std::uint64_t>>& n_measurements,
                                        const TrainingSpec& training);

ExperimentResult run_point(const PointParams& point, const SeedTriple& seeds,
                           std::optional<std::uint64_t> n_measurements, const TrainingSpec& training);

// CSV -----------------------------------------------------------------------

std::vector<std::string> csv_header(std::size_t tau_max);
std::string csv_row(const ExperimentResult& r, std::size_t tau_max);

struct SweepOutcome {
    std::vector<ExperimentResult> results;  ///< canonical grid order
    std::size_t failures = 0;
};

struct SweepOptions {
    unsigned jobs = 1;
    /// Receives rows in completion order while the sweep runs (header first).
    std::ostream* stream = nullptr;
};

/// Cartesian product of the grids and seed triples. Failing work units
/// become error rows; the sweep always runs to completion.
SweepOutcome run_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

/// Header plus rows in canonical grid order.
void write_csv(std::ostream& os, const SweepOutcome& outcome, std::size_t tau_max);

}  // namespace qrc
