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

#include "qrc/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qrc/rng.hpp"

namespace qrc {

double ConnectivitySpec::coupling(int i, int j) const {
    if (i == j || i < 1 || j < 1 || i > n_qubits || j > n_qubits) {
        throw std::invalid_argument("coupling indices must be distinct and in 1..N");
    }
    if (i < j) std::swap(i, j);
    // pairs with first index i start after the (i-1)(i-2)/2 pairs of smaller i
    const auto offset = static_cast<std::size_t>((i - 1) * (i - 2) / 2 + (j - 1));
    return couplings.at(offset);
}

ConnectivitySpec sample_connectivity(int n_qubits, double j_scale, std::uint64_t seed) {
    if (n_qubits < 2) throw std::invalid_argument("connectivity needs at least 2 qubits");
    if (!(j_scale >= 0.0) || !std::isfinite(j_scale)) throw std::invalid_argument("j_scale must be finite and >= 0");

    ConnectivitySpec spec{n_qubits, j_scale, seed, {}};
    auto rng = make_rng(seed, SeedStream::kConnectivity);
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    spec.couplings.reserve(static_cast<std::size_t>(n_qubits * (n_qubits - 1) / 2));
    for (int i = 2; i <= n_qubits; ++i) {
        for (int j = 1; j < i; ++j) spec.couplings.push_back(j_scale * unit(rng));
    }
    return spec;
}

ComplexMatrix build_hamiltonian(const HamiltonianSpec& spec) {
    const auto& conn = spec.connectivity;
    const int n = conn.n_qubits;
    if (n < 2) throw std::invalid_argument("Hamiltonian needs at least 2 qubits");
    if (!std::isfinite(spec.h)) throw std::invalid_argument("transverse field must be finite");
    if (conn.couplings.size() != static_cast<std::size_t>(n * (n - 1) / 2)) {
        throw std::invalid_argument("coupling count does not match N(N-1)/2");
    }

    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<ComplexMatrix> sx;
    sx.reserve(static_cast<std::size_t>(n));
    ComplexMatrix hamiltonian = ComplexMatrix::Zero(dim, dim);
    for (int i = 1; i <= n; ++i) {
        sx.push_back(embed_single(pauli::x(), i, n));
        hamiltonian += spec.h * embed_single(pauli::z(), i, n);
    }
    for (int i = 2; i <= n; ++i) {
        for (int j = 1; j < i; ++j) {
            hamiltonian += conn.coupling(i, j) * (sx[i - 1] * sx[j - 1]);
        }
    }
    return hamiltonian;
}

std::vector<ComplexMatrix> build_jump_operators(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("jump operators need at least 1 qubit");
    std::vector<ComplexMatrix> jumps;
    jumps.reserve(static_cast<std::size_t>(2 * n_qubits));
    for (int i = 1; i <= n_qubits; ++i) {
        jumps.push_back(embed_single(pauli::raising(), i, n_qubits));
        jumps.push_back(embed_single(pauli::lowering(), i, n_qubits));
    }
    return jumps;
}

std::vector<ComplexMatrix> LindbladSpec::resolved_jumps() const {
    return jump_operators.empty() ? build_jump_operators(n_qubits()) : jump_operators;
}

ComplexMatrix build_liouvillian(const LindbladSpec& spec) {
    if (!(spec.gamma >= 0.0) || !std::isfinite(spec.gamma)) throw std::invalid_argument("gamma must be finite and >= 0");
    const ComplexMatrix hamiltonian = build_hamiltonian(spec.hamiltonian);
    const Eigen::Index dim = hamiltonian.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    const Complex minus_i(0.0, -1.0);

    ComplexMatrix generator = minus_i * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
    if (spec.gamma > 0.0) {
        for (const auto& jump : spec.resolved_jumps()) {
            if (jump.rows() != dim || jump.cols() != dim) throw std::invalid_argument("jump operator dimension mismatch");
            const ComplexMatrix ldl = jump.adjoint() * jump;
            generator += spec.gamma * (kron(jump.conjugate(), jump) - 0.5 * (kron(id, ldl) + kron(ldl.transpose(), id)));
        }
    }
    return generator;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian, const std::vector<ComplexMatrix>& jumps, double gamma,
                           const ComplexMatrix& rho) {
    const Complex minus_i(0.0, -1.0);
    ComplexMatrix out = minus_i * (hamiltonian * rho - rho * hamiltonian);
    for (const auto& jump : jumps) {
        const ComplexMatrix ldl = jump.adjoint() * jump;
        out += gamma * (jump * rho * jump.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

Propagator::Propagator(const ComplexMatrix& liouvillian, double dt) : dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("propagator time step must be > 0");
    if (liouvillian.rows() != liouvillian.cols()) throw std::invalid_argument("Liouvillian must be square");
    Eigen::Index d = liouvillian.rows();
    while (d > 1 && d % 4 == 0) {
        d /= 4;
        ++n_qubits_;
    }
    if (d != 1 || n_qubits_ == 0) throw std::invalid_argument("Liouvillian dimension is not 4^N");
    exp_ = matrix_exp(liouvillian * dt);
}

Propagator Propagator::identity(int n_qubits) {
    Propagator p;
    p.n_qubits_ = n_qubits;
    const Eigen::Index d = Eigen::Index{1} << (2 * n_qubits);
    p.exp_ = ComplexMatrix::Identity(d, d);
    return p;
}

void Propagator::apply(const ComplexVector& in, ComplexVector& out) const {
    if (in.size() != exp_.cols()) throw std::invalid_argument("state vector does not match the propagator dimension");
    out.noalias() = exp_ * in;
}

DensityMatrix evolve(const DensityMatrix& rho, const Propagator& p) {
    if (rho.n_qubits() != p.n_qubits()) {
        throw std::invalid_argument("state has " + std::to_string(rho.n_qubits()) + " qubits, propagator has " +
                                    std::to_string(p.n_qubits()));
    }
    ComplexVector out;
    p.apply(vec(rho.matrix()), out);
    return DensityMatrix::trusted(rho.n_qubits(), unvec(out, rho.dim()));
}

}  // namespace qrc
