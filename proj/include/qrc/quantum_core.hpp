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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace qrc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Tensor-factor convention: qubit 1 is the leftmost (most significant)
/// factor, so basis index bit (N - q) holds the state of qubit q.
inline std::uint32_t qubit_bit(int n_qubits, int qubit) {
    return std::uint32_t{1} << (n_qubits - qubit);
}

/// Nonempty proper subset of the qubits {1..N}. Stored as a bitmask over
/// basis-index bits so that partial operations can test membership directly.
class QubitSubset {
public:
    QubitSubset(int n_qubits, std::initializer_list<int> members);
    QubitSubset(int n_qubits, const std::vector<int>& members);

    /// Subset from a bitmask in basis-index bit order (see qubit_bit).
    static QubitSubset from_mask(int n_qubits, std::uint32_t mask);

    int n_qubits() const { return n_qubits_; }
    std::uint32_t mask() const { return mask_; }
    std::vector<int> members() const;
    int size() const;
    bool contains(int qubit) const;
    QubitSubset complement() const;

    bool operator==(const QubitSubset&) const = default;

private:
    QubitSubset(int n_qubits, std::uint32_t mask, bool);
    int n_qubits_;
    std::uint32_t mask_;
};

/// Hermitian, unit-trace, positive semidefinite 2^N x 2^N matrix.
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kEigenTol = 1e-9;

    /// Validates all three invariants; throws std::invalid_argument otherwise.
    DensityMatrix(int n_qubits, ComplexMatrix matrix);

    /// Skips the eigenvalue check. For hot paths whose output is known to be
    /// a state up to round-off (propagation, injection); the matrix is still
    /// symmetrized and dimension-checked.
    static DensityMatrix trusted(int n_qubits, ComplexMatrix matrix);

    static DensityMatrix maximally_mixed(int n_qubits);
    static DensityMatrix pure(int n_qubits, const ComplexVector& psi);
    /// |b><b| for a computational basis index b.
    static DensityMatrix basis_state(int n_qubits, std::size_t index);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

    double purity() const;
    /// <sigma_z> of the given qubit (1-based).
    double expectation_z(int qubit) const;

private:
    struct Unchecked {};
    DensityMatrix(int n_qubits, ComplexMatrix matrix, Unchecked);
    int n_qubits_;
    ComplexMatrix matrix_;
};

/// Single-qubit Pauli and ladder matrices in the basis where sigma_z|0> = +|0>.
namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// sigma^+ = |0><1|
ComplexMatrix raising();
/// sigma^- = |1><0|
ComplexMatrix lowering();
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Embeds a single-qubit operator at `qubit` (1-based) in an N-qubit register.
ComplexMatrix embed_single(const ComplexMatrix& op, int qubit, int n_qubits);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_defect(const ComplexMatrix& m);

/// Reduced state on the complement of `traced`.
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& traced);

ComplexMatrix partial_transpose(const ComplexMatrix& m, const QubitSubset& subsystem,
                                int n_qubits);
inline ComplexMatrix partial_transpose(const DensityMatrix& rho, const QubitSubset& subsystem) {
    return partial_transpose(rho.matrix(), subsystem, rho.n_qubits());
}

/// Eigenvalues (ascending) of (m + m^dagger)/2.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix. Rejects inputs whose
/// Hermiticity defect exceeds 1e-10.
double trace_norm(const ComplexMatrix& m);

/// exp(a) by Pade-13 scaling and squaring.
ComplexMatrix matrix_exp(const ComplexMatrix& a);

/// Column-stacking vectorization and its inverse.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index dim);

}  // namespace qrc
