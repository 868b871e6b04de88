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


#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

#include "oracles.hpp"
#include "qrc/dynamics.hpp"

using namespace qrc;

namespace {

LindbladSpec make_spec(int n, double j_scale, double h, double gamma, std::uint64_t seed) {
    LindbladSpec spec;
    spec.hamiltonian.connectivity = sample_connectivity(n, j_scale, seed);
    spec.hamiltonian.h = h;
    spec.gamma = gamma;
    return spec;
}

ComplexVector apply_superop(const ComplexMatrix& s, const ComplexMatrix& rho) { return s * vec(rho); }

}  // namespace

TEST_CASE("connectivity sampling") {
    const ConnectivitySpec zero = sample_connectivity(4, 0.0, 7);
    CHECK(zero.couplings.size() == 6);
    for (double j : zero.couplings) CHECK(j == 0.0);

    const ConnectivitySpec c = sample_connectivity(5, 3.0, 1);
    CHECK(c.couplings.size() == 10);
    for (double j : c.couplings) {
        CHECK(j >= -1.5);
        CHECK(j <= 1.5);
    }
    CHECK(c.coupling(2, 1) == c.couplings[0]);
    CHECK(c.coupling(3, 2) == c.couplings[2]);
    CHECK(c.coupling(1, 4) == c.coupling(4, 1));
    CHECK(c.coupling(5, 4) == c.couplings.back());
    CHECK_THROWS_AS(c.coupling(2, 2), std::invalid_argument);

    CHECK(sample_connectivity(5, 3.0, 1).couplings == c.couplings);
    CHECK(sample_connectivity(5, 3.0, 2).couplings != c.couplings);
    CHECK_THROWS_AS(sample_connectivity(1, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_connectivity(4, -1.0, 0), std::invalid_argument);
}

TEST_CASE("coupling draws are uniform on [-1/2, 1/2] at unit scale") {
    // 142 qubits give 10011 pairs
    const ConnectivitySpec c = sample_connectivity(142, 1.0, 99);
    const auto n = static_cast<double>(c.couplings.size());
    CHECK(n >= 1e4);
    double lo = 1.0, hi = -1.0, mean = 0.0;
    for (double j : c.couplings) {
        lo = std::min(lo, j);
        hi = std::max(hi, j);
        mean += j;
    }
    mean /= n;
    CHECK(lo >= -0.5);
    CHECK(hi <= 0.5);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("Hamiltonian") {
    SUBCASE("two qubits written out") {
        HamiltonianSpec spec;
        spec.connectivity = sample_connectivity(2, 1.0, 4);
        spec.h = 0.7;
        const double j = spec.connectivity.couplings[0];
        const ComplexMatrix expected = j * kron(pauli::x(), pauli::x()) +
                                       0.7 * (kron(pauli::z(), pauli::identity()) + kron(pauli::identity(), pauli::z()));
        CHECK(max_abs_diff(build_hamiltonian(spec), expected) < 1e-15);
    }
    SUBCASE("no couplings: diagonal with eigenvalues h(N - 2k)") {
        HamiltonianSpec spec;
        spec.connectivity = sample_connectivity(4, 0.0, 0);
        spec.h = 2.0;
        const ComplexMatrix h = build_hamiltonian(spec);
        CHECK(max_abs_diff(h, ComplexMatrix(h.diagonal().asDiagonal())) == 0.0);
        for (Eigen::Index b = 0; b < 16; ++b) {
            const int down = std::popcount(static_cast<unsigned>(b));
            CHECK(h(b, b).real() == doctest::Approx(2.0 * (4 - 2 * down)));
        }
    }
    SUBCASE("random specs are Hermitian") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            HamiltonianSpec spec;
            spec.connectivity = sample_connectivity(4, 3.0, seed);
            spec.h = 1.3;
            const ComplexMatrix h = build_hamiltonian(spec);
            CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
    SUBCASE("rejects non-finite field") {
        HamiltonianSpec spec;
        spec.connectivity = sample_connectivity(2, 1.0, 0);
        spec.h = std::nan("");
        CHECK_THROWS_AS(build_hamiltonian(spec), std::invalid_argument);
    }
}

TEST_CASE("jump operators") {
    const auto one = build_jump_operators(1);
    REQUIRE(one.size() == 2);
    ComplexMatrix up(2, 2), down(2, 2);
    up << 0, 1, 0, 0;
    down << 0, 0, 1, 0;
    CHECK(max_abs_diff(one[0], up) == 0.0);
    CHECK(max_abs_diff(one[1], down) == 0.0);

    const int n = 3;
    const auto jumps = build_jump_operators(n);
    REQUIRE(jumps.size() == 2 * n);
    const ComplexMatrix id = ComplexMatrix::Identity(8, 8);
    for (int site = 0; site < n; ++site) {
        const ComplexMatrix& lp = jumps[2 * site];
        const ComplexMatrix& lm = jumps[2 * site + 1];
        CHECK(max_abs_diff(lp * lp, ComplexMatrix::Zero(8, 8)) == 0.0);
        CHECK(max_abs_diff(lm, lp.adjoint()) == 0.0);
        CHECK(max_abs_diff(lp.adjoint() * lp + lm.adjoint() * lm, id) < 1e-15);
        CHECK(max_abs_diff(lp, embed_single(pauli::raising(), site + 1, n)) == 0.0);
    }
}

TEST_CASE("Liouvillian") {
    std::mt19937_64 rng(21);

    SUBCASE("unitary part is the commutator") {
        const LindbladSpec spec = make_spec(3, 1.0, 2.0, 0.0, 3);
        const ComplexMatrix l = build_liouvillian(spec);
        const ComplexMatrix h = build_hamiltonian(spec.hamiltonian);
        const Complex i(0.0, 1.0);
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix rho = oracle::random_density(3, rng);
            const ComplexVector expected = vec(-i * (h * rho - rho * h));
            CHECK((apply_superop(l, rho) - expected).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SUBCASE("matches the master equation written term by term") {
        const LindbladSpec spec = make_spec(3, 1.0, 2.0, 0.3, 5);
        const ComplexMatrix l = build_liouvillian(spec);
        const ComplexMatrix h = build_hamiltonian(spec.hamiltonian);
        const auto jumps = spec.resolved_jumps();
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix rho = oracle::random_density(3, rng);
            const ComplexMatrix expected = oracle::MasterRhs(h, jumps, 0.3)(rho);
            CHECK((apply_superop(l, rho) - vec(expected)).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(max_abs_diff(lindblad_rhs(h, jumps, 0.3, rho), expected) < 1e-12);
        }
    }
    SUBCASE("trace functional annihilates the generator") {
        const LindbladSpec spec = make_spec(4, 1.0, 2.0, 0.01, 1);
        const ComplexMatrix l = build_liouvillian(spec);
        // row vector vec(I)^T picks out the trace
        const ComplexVector id = vec(ComplexMatrix::Identity(16, 16));
        CHECK((id.transpose() * l).cwiseAbs().maxCoeff() < 1e-12);
        for (int trial = 0; trial < 5; ++trial) {
            const ComplexMatrix rho = oracle::random_density(4, rng);
            CHECK(std::abs(unvec(apply_superop(l, rho), 16).trace()) < 1e-12);
        }
    }
    SUBCASE("maximally mixed state is stationary") {
        const LindbladSpec spec = make_spec(4, 5.0, 0.4, 0.2, 9);
        const ComplexMatrix l = build_liouvillian(spec);
        CHECK(apply_superop(l, DensityMatrix::maximally_mixed(4).matrix()).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("rejects negative rates") {
        CHECK_THROWS_AS(build_liouvillian(make_spec(2, 1.0, 1.0, -0.1, 0)), std::invalid_argument);
    }
}

TEST_CASE("propagator") {
    const LindbladSpec spec = make_spec(3, 1.0, 2.0, 0.05, 2);
    const ComplexMatrix l = build_liouvillian(spec);

    SUBCASE("composition") {
        const Propagator p1(l, 0.25);
        const Propagator p2(l, 0.5);
        CHECK(max_abs_diff(p2.superoperator(), p1.superoperator() * p1.superoperator()) < 1e-10);
    }
    SUBCASE("small steps approach the identity") {
        const double norm = l.cwiseAbs().colwise().sum().maxCoeff();  // induced 1-norm
        for (double dt : {1e-3, 1e-4, 1e-5}) {
            const Propagator p(l, dt);
            const ComplexMatrix diff = p.superoperator() - ComplexMatrix::Identity(l.rows(), l.cols());
            CHECK(diff.cwiseAbs().colwise().sum().maxCoeff() <= norm * dt * (1.0 + norm * dt));
        }
    }
    SUBCASE("rejects bad arguments") {
        CHECK_THROWS_AS(Propagator(l, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(Propagator(l, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(Propagator(ComplexMatrix::Identity(8, 8), 1.0), std::invalid_argument);
    }
    SUBCASE("evolve refuses a mismatched register") {
        const Propagator p(l, 0.1);
        CHECK_THROWS_AS(evolve(DensityMatrix::maximally_mixed(2), p), std::invalid_argument);
    }
}

TEST_CASE("uncoupled qubits relax as the analytic two-level channel") {
    // With H = 0 each site decays independently: coherences as exp(-gamma t),
    // populations' imbalance as exp(-2 gamma t).
    const double gamma = 0.3;
    LindbladSpec spec = make_spec(2, 0.0, 0.0, gamma, 0);
    const ComplexMatrix l = build_liouvillian(spec);
    std::mt19937_64 rng(17);
    const ComplexMatrix a = oracle::random_density(1, rng);
    const ComplexMatrix b = oracle::random_density(1, rng);
    const DensityMatrix rho(2, kron(a, b));

    for (double t : {0.5, 2.0, 7.0}) {
        const DensityMatrix out = evolve(rho, Propagator(l, t));
        auto relax = [&](const ComplexMatrix& m) {
            ComplexMatrix r(2, 2);
            const double z = (m(0, 0) - m(1, 1)).real() * std::exp(-2.0 * gamma * t);
            r(0, 0) = 0.5 * (1.0 + z);
            r(1, 1) = 0.5 * (1.0 - z);
            r(0, 1) = m(0, 1) * std::exp(-gamma * t);
            r(1, 0) = std::conj(r(0, 1));
            return r;
        };
        CHECK(max_abs_diff(out.matrix(), kron(relax(a), relax(b))) < 1e-12);
    }
    const DensityMatrix late = evolve(rho, Propagator(l, 200.0));
    CHECK(max_abs_diff(late.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-12);
}

TEST_CASE("evolution agrees with an independent RK4 integration") {
    std::mt19937_64 rng(33);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const LindbladSpec spec = make_spec(4, 1.0, 2.0, 0.01, seed);
        const ComplexMatrix h = build_hamiltonian(spec.hamiltonian);
        const auto jumps = spec.resolved_jumps();
        const ComplexMatrix rho0 = oracle::random_density(4, rng);
        const ComplexMatrix rk = oracle::rk4(rho0, 2.5, 5000, oracle::MasterRhs(h, jumps, spec.gamma));
        const DensityMatrix exact = evolve(DensityMatrix(4, rho0), Propagator(build_liouvillian(spec), 2.5));
        CHECK(max_abs_diff(exact.matrix(), rk) < 1e-8);
    }
}

TEST_CASE("long-run stability at the reference parameters") {
    const LindbladSpec spec = make_spec(4, 1.0, 2.0, 0.01, 0);
    const Propagator p(build_liouvillian(spec), 0.25);
    std::mt19937_64 rng(1);
    DensityMatrix rho(4, oracle::random_density(4, rng));
    for (int step = 0; step < 1000; ++step) rho = evolve(rho, p);
    CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-9);
    CHECK(hermitian_eigenvalues(rho.matrix()).minCoeff() >= -1e-9);

    const DensityMatrix same = evolve(rho, Propagator::identity(4));
    CHECK(max_abs_diff(same.matrix(), rho.matrix()) == 0.0);
}

TEST_CASE("maximally mixed state is a fixed point of every propagator") {
    const ComplexMatrix mixed = DensityMatrix::maximally_mixed(4).matrix();
    for (auto [j, h, g] : {std::tuple{0.01, 2.0, 0.0}, {1.0, 2.0, 0.01}, {100.0, 0.3, 1.0}, {3.0, 0.0, 0.2}}) {
        const LindbladSpec spec = make_spec(4, j, h, g, 4);
        const DensityMatrix out = evolve(DensityMatrix::maximally_mixed(4), Propagator(build_liouvillian(spec), 2.5));
        CHECK(max_abs_diff(out.matrix(), mixed) < 1e-10);
    }
}

TEST_CASE("complete positivity surrogate") {
    const LindbladSpec spec = make_spec(4, 1.0, 2.0, 0.01, 6);
    const ComplexMatrix l = build_liouvillian(spec);
    const Propagator short_step(l, 0.25);
    const Propagator long_step(l, 2.5);
    std::mt19937_64 rng(12);
    double worst = 1.0;
    for (int trial = 0; trial < 200; ++trial) {
        // rank-deficient inputs sit on the boundary of the state space
        ComplexMatrix rho;
        if (trial % 2 == 0) {
            rho = oracle::random_density(4, rng);
        } else {
            const ComplexMatrix g = oracle::random_matrix(16, 2, rng);
            rho = g * g.adjoint();
            rho /= rho.trace();
        }
        const DensityMatrix in = DensityMatrix::trusted(4, rho);
        for (const Propagator* p : {&short_step, &long_step}) {
            worst = std::min(worst, hermitian_eigenvalues(evolve(in, *p).matrix()).minCoeff());
        }
    }
    CHECK(worst >= -1e-9);
}

TEST_CASE("unitary evolution preserves the spectrum") {
    const LindbladSpec spec = make_spec(4, 1.0, 2.0, 0.0, 8);
    const Propagator p(build_liouvillian(spec), 2.5);
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 5; ++trial) {
        const DensityMatrix rho(4, oracle::random_density(4, rng));
        const RealVector before = hermitian_eigenvalues(rho.matrix());
        const RealVector after = hermitian_eigenvalues(evolve(rho, p).matrix());
        CHECK((before - after).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(evolve(rho, p).purity() == doctest::Approx(rho.purity()).epsilon(1e-10));
    }
}
