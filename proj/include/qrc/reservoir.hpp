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
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qrc/dynamics.hpp"
#include "qrc/quantum_core.hpp"
#include "qrc/signal.hpp"

namespace qrc {

struct SamplingSpec {
    double dt_injection = 2.5;
    int v_virtual = 10;
    std::size_t washout = 100;

    void validate() const;
    double readout_dt() const { return dt_injection / v_virtual; }
};

/// Measurement budget. An empty count means unlimited measurements (no noise).
struct NoiseSpec {
    std::optional<std::uint64_t> n_measurements;
    std::uint64_t seed = 0;
    std::uint32_t substream = 0;

    double sigma() const;
};

/// sigma = m^(-1/2); unlimited -> 0. Rejects m = 0.
double sigma_from_measurements(std::optional<std::uint64_t> m);

/// Readout record: one row per post-washout injection step. Column
/// v * N + (q - 1) holds <sigma_z> of qubit q at virtual node v; the last
/// column is the constant bias.
class FeatureMatrix {
public:
    enum class Provenance { kClean, kNoisy };

    FeatureMatrix(RealMatrix values, int n_qubits, int v_virtual);

    const RealMatrix& values() const { return values_; }
    Eigen::Index rows() const { return values_.rows(); }
    Eigen::Index cols() const { return values_.cols(); }
    Eigen::Index bias_column() const { return values_.cols() - 1; }
    int n_qubits() const { return n_qubits_; }
    int v_virtual() const { return v_virtual_; }

    Provenance provenance() const { return provenance_; }
    std::optional<std::uint64_t> noise_seed() const { return noise_seed_; }

    /// Row-wise concatenation; all parts must share shape and provenance.
    static FeatureMatrix concat(const std::vector<FeatureMatrix>& parts);

    friend FeatureMatrix apply_noise(const FeatureMatrix& features, const NoiseSpec& noise);

private:
    RealMatrix values_;
    int n_qubits_;
    int v_virtual_;
    Provenance provenance_ = Provenance::kClean;
    std::optional<std::uint64_t> noise_seed_;
};

/// Adds i.i.d. N(0, sigma^2) to every non-bias entry. No clipping. Throws if
/// the input already carries noise.
FeatureMatrix apply_noise(const FeatureMatrix& features, const NoiseSpec& noise);

/// Density matrices at post-washout readout instants.
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<DensityMatrix> states;

    bool empty() const { return states.empty(); }
    std::size_t size() const { return states.size(); }
};

/// CSV dump: header `time,re_0,im_0,...` then one row per readout instant
/// with the column-stacked density matrix.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& traj);

/// Replaces qubit 1 by |psi_s> = sqrt(1-s)|0> + sqrt(s)|1>:
///   rho -> |psi_s><psi_s| (x) Tr_1[rho]
DensityMatrix inject(const DensityMatrix& rho, double s);

struct RunOptions {
    bool meter = false;
    /// Defaults to the maximally mixed state.
    std::optional<DensityMatrix> initial_state;
    /// Invoked with the state right after each injection (all steps, washout included).
    std::function<void(std::size_t step, const DensityMatrix&)> on_injection;
};

struct ReservoirRun {
    FeatureMatrix features;
    std::optional<TrajectoryRecord> trajectory;
};

/// A fixed reservoir: dynamics plus sampling schedule, with the readout
/// propagator exp(L * dt/V) computed once.
class Reservoir {
public:
    Reservoir(LindbladSpec spec, SamplingSpec sampling);

    const LindbladSpec& spec() const { return spec_; }
    const SamplingSpec& sampling() const { return sampling_; }
    const Propagator& propagator() const { return propagator_; }
    int n_qubits() const { return spec_.n_qubits(); }

    ReservoirRun run(const InputSignal& signal, const RunOptions& options = {}) const;

private:
    LindbladSpec spec_;
    SamplingSpec sampling_;
    Propagator propagator_;
    RealMatrix real_propagator_;  // propagator_ in Hermitian coordinates
};

ReservoirRun run_reservoir(const LindbladSpec& spec, const SamplingSpec& sampling, const InputSignal& signal,
                           bool meter);

}  // namespace qrc
