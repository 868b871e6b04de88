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

#include <vector>

#include "qrc/quantum_core.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

enum class BipartitionSet {
    kAll,           ///< every unordered bipartition, 2^(N-1) - 1 of them
    kSingleQubit,   ///< only the N cuts isolating one qubit
};

/// One representative side per unordered bipartition: single-qubit cuts
/// first (qubit 1..N), then larger sides by size. For N = 4 the order is
/// {1},{2},{3},{4},{1,2},{1,3},{1,4}.
std::vector<QubitSubset> bipartitions(int n_qubits, BipartitionSet set = BipartitionSet::kAll);

struct LogNegativity {
    double mean = 0.0;
    std::vector<double> by_bipartition;  ///< same order as bipartitions()
};

/// log2 || rho^{T_A} ||_1 for a single cut, clamped at 0.
double log_negativity(const DensityMatrix& rho, const QubitSubset& side);

LogNegativity log_negativity(const DensityMatrix& rho, BipartitionSet set = BipartitionSet::kAll);

/// Sum of |rho_ij| over i != j in the sigma_z product basis, divided by 2^N - 1.
double l1_coherence(const DensityMatrix& rho);

struct QuantumnessSample {
    double time = 0.0;  ///< for aggregates: mean time of the window
    double log_negativity_mean = 0.0;
    std::vector<double> log_negativity_by_bipartition;
    double coherence_normalized = 0.0;
};

QuantumnessSample measure(const DensityMatrix& rho, double time, BipartitionSet set = BipartitionSet::kAll);

/// Arithmetic mean over every instant of the trajectory.
QuantumnessSample time_average(const TrajectoryRecord& traj, BipartitionSet set = BipartitionSet::kAll);

}  // namespace qrc
