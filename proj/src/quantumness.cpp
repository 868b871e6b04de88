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

#include "qrc/quantumness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qrc {

std::vector<QubitSubset> bipartitions(int n_qubits, BipartitionSet set) {
    if (n_qubits < 2) throw std::invalid_argument("bipartitions need at least 2 qubits");
    std::vector<QubitSubset> out;
    for (int q = 1; q <= n_qubits; ++q) {
        // For N = 2 the cuts {1} and {2} coincide.
        if (n_qubits == 2 && q == 2) break;
        out.push_back(QubitSubset(n_qubits, {q}));
    }
    if (set == BipartitionSet::kSingleQubit) return out;

    // Representative side: the smaller one; for an even split, the side holding qubit 1.
    const std::uint32_t full = (std::uint32_t{1} << n_qubits) - 1;
    const std::uint32_t top = qubit_bit(n_qubits, 1);
    for (int size = 2; 2 * size <= n_qubits; ++size) {
        std::vector<QubitSubset> level;
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            if (std::popcount(mask) != size) continue;
            if (2 * size == n_qubits && !(mask & top)) continue;
            level.push_back(QubitSubset::from_mask(n_qubits, mask));
        }
        std::sort(level.begin(), level.end(),
                  [](const QubitSubset& a, const QubitSubset& b) { return a.members() < b.members(); });
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

double log_negativity(const DensityMatrix& rho, const QubitSubset& side) {
    const double norm = trace_norm(partial_transpose(rho, side));
    return std::max(0.0, std::log2(norm));
}

LogNegativity log_negativity(const DensityMatrix& rho, BipartitionSet set) {
    LogNegativity out;
    for (const auto& side : bipartitions(rho.n_qubits(), set)) out.by_bipartition.push_back(log_negativity(rho, side));
    double acc = 0.0;
    for (double e : out.by_bipartition) acc += e;
    out.mean = acc / static_cast<double>(out.by_bipartition.size());
    return out;
}

double l1_coherence(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    const double total = m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
    return std::clamp(total / static_cast<double>(m.rows() - 1), 0.0, 1.0);
}

QuantumnessSample measure(const DensityMatrix& rho, double time, BipartitionSet set) {
    auto ln = log_negativity(rho, set);
    return QuantumnessSample{time, ln.mean, std::move(ln.by_bipartition), l1_coherence(rho)};
}

QuantumnessSample time_average(const TrajectoryRecord& traj, BipartitionSet set) {
    if (traj.empty()) throw std::invalid_argument("cannot average an empty trajectory");
    QuantumnessSample acc;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto s = measure(traj.states[i], traj.times[i], set);
        if (acc.log_negativity_by_bipartition.empty()) acc.log_negativity_by_bipartition.assign(s.log_negativity_by_bipartition.size(), 0.0);
        acc.time += s.time;
        acc.log_negativity_mean += s.log_negativity_mean;
        acc.coherence_normalized += s.coherence_normalized;
        for (std::size_t b = 0; b < s.log_negativity_by_bipartition.size(); ++b) {
            acc.log_negativity_by_bipartition[b] += s.log_negativity_by_bipartition[b];
        }
    }
    const auto n = static_cast<double>(traj.size());
    acc.time /= n;
    acc.log_negativity_mean /= n;
    acc.coherence_normalized /= n;
    for (auto& e : acc.log_negativity_by_bipartition) e /= n;
    return acc;
}

}  // namespace qrc
