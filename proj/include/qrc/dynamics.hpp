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
#include <vector>

#include "qrc/quantum_core.hpp"

namespace qrc {

/// Random Ising couplings J_ij (i > j), drawn i.i.d. from U[-J_s/2, J_s/2].
struct ConnectivitySpec {
    int n_qubits = 0;
    double j_scale = 0.0;
    std::uint64_t seed = 0;
    /// Row-major over pairs (i, j) with i > j, 1-based: (2,1), (3,1), (3,2), ...
    std::vector<double> couplings;

    /// J_ij for i != j (symmetric lookup).
    double coupling(int i, int j) const;
};

ConnectivitySpec sample_connectivity(int n_qubits, double j_scale, std::uint64_t seed);

struct HamiltonianSpec {
    ConnectivitySpec connectivity;
    double h = 0.0;
};

/// H = sum_{i>j} J_ij sx_i sx_j + h sum_i sz_i
ComplexMatrix build_hamiltonian(const HamiltonianSpec& spec);

/// sigma^+ and sigma^- at every site, ordered (+_1, -_1, +_2, -_2, ...).
std::vector<ComplexMatrix> build_jump_operators(int n_qubits);

struct LindbladSpec {
    HamiltonianSpec hamiltonian;
    double gamma = 0.0;
    /// Leave empty for the default raising/lowering set of build_jump_operators.
    std::vector<ComplexMatrix> jump_operators;

    int n_qubits() const { return hamiltonian.connectivity.n_qubits; }
    std::vector<ComplexMatrix> resolved_jumps() const;
};

/// Superoperator of the master equation acting on column-stacked vec(rho):
///   L = -i (I (x) H - H^T (x) I)
///       + gamma * sum_k [ conj(L_k) (x) L_k - 1/2 (I (x) L_k^dag L_k + (L_k^dag L_k)^T (x) I) ]
ComplexMatrix build_liouvillian(const LindbladSpec& spec);

/// Right-hand side of the master equation evaluated directly on a matrix.
ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian, const std::vector<ComplexMatrix>& jumps,
                           double gamma, const ComplexMatrix& rho);

/// Exact solution operator exp(L dt) for a time-independent generator.
class Propagator {
public:
    Propagator(const ComplexMatrix& liouvillian, double dt);

    static Propagator identity(int n_qubits);

    double dt() const { return dt_; }
    int n_qubits() const { return n_qubits_; }
    const ComplexMatrix& superoperator() const { return exp_; }

    /// out = P in, for column-stacked state vectors. `out` must not alias `in`.
    void apply(const ComplexVector& in, ComplexVector& out) const;

private:
    Propagator() = default;
    double dt_ = 0.0;
    int n_qubits_ = 0;
    ComplexMatrix exp_;
};

inline Propagator build_propagator(const ComplexMatrix& liouvillian, double dt) { return Propagator(liouvillian, dt); }

/// unvec(P vec(rho)), re-symmetrized.
DensityMatrix evolve(const DensityMatrix& rho, const Propagator& p);

}  // namespace qrc
