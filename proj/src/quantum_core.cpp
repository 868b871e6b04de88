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

#include "qrc/quantum_core.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace qrc {

namespace {

std::uint32_t full_mask(int n_qubits) { return (std::uint32_t{1} << n_qubits) - 1; }

void check_register(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 16) {
        throw std::invalid_argument("qubit count out of range: " + std::to_string(n_qubits));
    }
}

// Packs the bits of `index` selected by `mask` into a contiguous integer,
// preserving their relative order.
std::uint32_t compress_bits(std::uint32_t index, std::uint32_t mask) {
    std::uint32_t out = 0;
    int pos = 0;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
        const std::uint32_t bit = m & (~m + 1);
        if (index & bit) out |= std::uint32_t{1} << pos;
        ++pos;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// QubitSubset

QubitSubset::QubitSubset(int n_qubits, std::uint32_t mask, bool) : n_qubits_(n_qubits), mask_(mask) {
    check_register(n_qubits);
    if (mask == 0) throw std::invalid_argument("qubit subset must be nonempty");
    if ((mask & ~full_mask(n_qubits)) != 0) throw std::invalid_argument("qubit subset has out-of-range members");
    if (mask == full_mask(n_qubits)) throw std::invalid_argument("qubit subset must be a proper subset");
}

QubitSubset::QubitSubset(int n_qubits, const std::vector<int>& members) : n_qubits_(n_qubits), mask_(0) {
    check_register(n_qubits);
    for (int q : members) {
        if (q < 1 || q > n_qubits) {
            throw std::invalid_argument("qubit index " + std::to_string(q) + " outside 1.." + std::to_string(n_qubits));
        }
        const std::uint32_t bit = qubit_bit(n_qubits, q);
        if (mask_ & bit) throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
        mask_ |= bit;
    }
    *this = QubitSubset(n_qubits, mask_, true);
}

QubitSubset::QubitSubset(int n_qubits, std::initializer_list<int> members)
    : QubitSubset(n_qubits, std::vector<int>(members)) {}

QubitSubset QubitSubset::from_mask(int n_qubits, std::uint32_t mask) { return QubitSubset(n_qubits, mask, true); }

std::vector<int> QubitSubset::members() const {
    std::vector<int> out;
    for (int q = 1; q <= n_qubits_; ++q) {
        if (contains(q)) out.push_back(q);
    }
    return out;
}

int QubitSubset::size() const { return std::popcount(mask_); }

bool QubitSubset::contains(int qubit) const {
    return qubit >= 1 && qubit <= n_qubits_ && (mask_ & qubit_bit(n_qubits_, qubit)) != 0;
}

QubitSubset QubitSubset::complement() const { return QubitSubset(n_qubits_, full_mask(n_qubits_) & ~mask_, true); }

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix matrix, Unchecked)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
    check_register(n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw std::invalid_argument("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
}

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix matrix)
    : DensityMatrix(n_qubits, std::move(matrix), Unchecked{}) {
    if (hermiticity_defect(matrix_) > kHermitianTol) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
        throw std::invalid_argument("density matrix trace deviates from 1");
    }
    if (hermitian_eigenvalues(matrix_).minCoeff() < -kEigenTol) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::trusted(int n_qubits, ComplexMatrix matrix) {
    ComplexMatrix sym = 0.5 * (matrix + matrix.adjoint());
    return DensityMatrix(n_qubits, std::move(sym), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    check_register(n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    return DensityMatrix(n_qubits, ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), Unchecked{});
}

DensityMatrix DensityMatrix::pure(int n_qubits, const ComplexVector& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw std::invalid_argument("cannot build a pure state from a zero vector");
    const ComplexVector unit = psi / norm;
    return DensityMatrix(n_qubits, unit * unit.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::basis_state(int n_qubits, std::size_t index) {
    check_register(n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    if (static_cast<Eigen::Index>(index) >= dim) throw std::invalid_argument("basis index out of range");
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return DensityMatrix(n_qubits, std::move(m), Unchecked{});
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityMatrix::expectation_z(int qubit) const {
    if (qubit < 1 || qubit > n_qubits_) throw std::invalid_argument("qubit index out of range");
    const std::uint32_t bit = qubit_bit(n_qubits_, qubit);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
        const double p = matrix_(i, i).real();
        acc += (static_cast<std::uint32_t>(i) & bit) ? -p : p;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Single-qubit operators

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}
ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
ComplexMatrix raising() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}
ComplexMatrix lowering() {
    ComplexMatrix m(2, 2);
    m << 0.0, 0.0, 1.0, 0.0;
    return m;
}
}  // namespace pauli

// ---------------------------------------------------------------------------
// Linear algebra

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix embed_single(const ComplexMatrix& op, int qubit, int n_qubits) {
    if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("embed_single expects a 2x2 operator");
    if (qubit < 1 || qubit > n_qubits) throw std::invalid_argument("qubit index out of range");
    const Eigen::Index left = Eigen::Index{1} << (qubit - 1);
    const Eigen::Index right = Eigen::Index{1} << (n_qubits - qubit);
    return kron(kron(ComplexMatrix::Identity(left, left), op), ComplexMatrix::Identity(right, right));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& traced) {
    const int n = rho.n_qubits();
    if (traced.n_qubits() != n) throw std::invalid_argument("subset register size does not match the state");
    const std::uint32_t traced_mask = traced.mask();
    const std::uint32_t kept_mask = full_mask(n) & ~traced_mask;
    const int n_kept = n - traced.size();
    const Eigen::Index dim_kept = Eigen::Index{1} << n_kept;

    ComplexMatrix out = ComplexMatrix::Zero(dim_kept, dim_kept);
    const ComplexMatrix& m = rho.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const auto ui = static_cast<std::uint32_t>(i);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const auto uj = static_cast<std::uint32_t>(j);
            if ((ui & traced_mask) != (uj & traced_mask)) continue;
            out(compress_bits(ui, kept_mask), compress_bits(uj, kept_mask)) += m(i, j);
        }
    }
    return DensityMatrix::trusted(n_kept, std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const QubitSubset& subsystem, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("matrix does not match register size");
    if (subsystem.n_qubits() != n_qubits) throw std::invalid_argument("subset register size does not match");
    const std::uint32_t mask = subsystem.mask();
    ComplexMatrix out(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto ui = static_cast<std::uint32_t>(i);
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto uj = static_cast<std::uint32_t>(j);
            const std::uint32_t ti = (ui & ~mask) | (uj & mask);
            const std::uint32_t tj = (uj & ~mask) | (ui & mask);
            out(ti, tj) = m(i, j);
        }
    }
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues need a square matrix");
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

double trace_norm(const ComplexMatrix& m) {
    if (hermiticity_defect(m) > 1e-10) throw std::invalid_argument("trace_norm requires a Hermitian matrix");
    return hermitian_eigenvalues(m).cwiseAbs().sum();
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exp requires a square matrix");
    return a.exp();
}

ComplexVector vec(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index dim) {
    if (v.size() != dim * dim) throw std::invalid_argument("vector length does not match dim^2");
    return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

}  // namespace qrc
