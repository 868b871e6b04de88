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
#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "qrc/quantumness.hpp"

using namespace qrc;

namespace {

ComplexMatrix phi_plus() {
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return psi * psi.adjoint();
}

double direct_log_negativity(const ComplexMatrix& rho, int n, std::initializer_list<int> side) {
    return std::log2(trace_norm(partial_transpose(rho, QubitSubset(n, side), n)));
}

double direct_coherence(const ComplexMatrix& rho) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
            if (i != j) acc += std::abs(rho(i, j));
    return acc / static_cast<double>(rho.rows() - 1);
}

}  // namespace

TEST_CASE("bipartition enumeration") {
    const auto four = bipartitions(4);
    REQUIRE(four.size() == 7);
    const std::vector<std::vector<int>> expected{{1}, {2}, {3}, {4}, {1, 2}, {1, 3}, {1, 4}};
    for (std::size_t i = 0; i < 7; ++i) CHECK(four[i].members() == expected[i]);

    CHECK(bipartitions(4, BipartitionSet::kSingleQubit).size() == 4);
    CHECK(bipartitions(3).size() == 3);
    CHECK(bipartitions(2).size() == 1);
    CHECK(bipartitions(5).size() == 15);
    CHECK(bipartitions(6).size() == 31);
    CHECK_THROWS_AS(bipartitions(1), std::invalid_argument);

    // no bipartition appears twice, counting a side and its complement as one
    const auto six = bipartitions(6);
    for (std::size_t i = 0; i < six.size(); ++i)
        for (std::size_t j = i + 1; j < six.size(); ++j) {
            CHECK_FALSE(six[i] == six[j]);
            CHECK_FALSE(six[i] == six[j].complement());
        }
}

TEST_CASE("log-negativity of reference states") {
    const DensityMatrix bell(2, phi_plus());
    CHECK(std::abs(log_negativity(bell, QubitSubset(2, {1})) - 1.0) < 1e-10);
    CHECK(std::abs(log_negativity(bell).mean - 1.0) < 1e-10);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        ComplexMatrix prod = oracle::random_density(1, rng);
        for (int q = 1; q < 4; ++q) prod = kron(prod, oracle::random_density(1, rng));
        const LogNegativity ln = log_negativity(DensityMatrix(4, prod));
        REQUIRE(ln.by_bipartition.size() == 7);
        for (double e : ln.by_bipartition) CHECK(std::abs(e) < 1e-10);
    }
}

TEST_CASE("Bell pair plus a spectator") {
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    const ComplexMatrix m = kron(phi_plus(), zero);
    const DensityMatrix rho(3, m);
    const LogNegativity ln = log_negativity(rho);
    REQUIRE(ln.by_bipartition.size() == 3);
    CHECK(ln.by_bipartition[0] == doctest::Approx(direct_log_negativity(m, 3, {1})));
    CHECK(ln.by_bipartition[1] == doctest::Approx(direct_log_negativity(m, 3, {2})));
    CHECK(ln.by_bipartition[2] == doctest::Approx(direct_log_negativity(m, 3, {3})).epsilon(1e-12));
    CHECK(ln.by_bipartition[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ln.by_bipartition[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ln.by_bipartition[2]) < 1e-12);
    CHECK(ln.mean == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("Werner states follow the closed form") {
    // p Phi+ + (1 - p) I/4 has one negative partial-transpose eigenvalue
    // (1 - 3p)/4 when p > 1/3, giving E_N = log2((1 + 3p)/2).
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        const ComplexMatrix m = p * phi_plus() + (1.0 - p) * 0.25 * ComplexMatrix::Identity(4, 4);
        const double expected = p > 1.0 / 3.0 ? std::log2((1.0 + 3.0 * p) / 2.0) : 0.0;
        CHECK(log_negativity(DensityMatrix(2, m), QubitSubset(2, {2})) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("input cut is disentangled right after injection") {
    LindbladSpec spec;
    spec.hamiltonian.connectivity = sample_connectivity(4, 1.0, 2);
    spec.hamiltonian.h = 2.0;
    spec.gamma = 0.01;
    SamplingSpec sampling;
    sampling.washout = 10;
    InputSignalSpec sig;
    sig.k_steps = 60;
    sig.seed = 2;
    const QubitSubset input(4, {1});
    double worst = 0.0, entangled_before = 0.0;
    RunOptions opt;
    opt.on_injection = [&](std::size_t, const DensityMatrix& rho) {
        worst = std::max(worst, log_negativity(rho, input));
    };
    opt.meter = true;
    const ReservoirRun run = Reservoir(spec, sampling).run(generate_signal(sig), opt);
    for (const auto& rho : run.trajectory->states) entangled_before = std::max(entangled_before, log_negativity(rho, input));
    CHECK(worst < 1e-10);
    CHECK(entangled_before > 1e-3);  // the cut does build entanglement between injections
}

TEST_CASE("l1 coherence") {
    SUBCASE("diagonal states") {
        std::mt19937_64 rng(3);
        ComplexMatrix d = ComplexMatrix::Zero(16, 16);
        double total = 0.0;
        for (int i = 0; i < 16; ++i) {
            d(i, i) = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            total += d(i, i).real();
        }
        CHECK(l1_coherence(DensityMatrix(4, d / total)) == 0.0);
    }
    SUBCASE("uniform superposition saturates the bound") {
        for (int n = 1; n <= 4; ++n) {
            const auto dim = Eigen::Index{1} << n;
            const ComplexVector plus = ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
            CHECK(std::abs(l1_coherence(DensityMatrix::pure(n, plus)) - 1.0) < 1e-12);
        }
    }
    SUBCASE("fully dephased plus state") {
        ComplexVector plus(2);
        plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        ComplexMatrix m = plus * plus.adjoint();
        m(0, 1) = m(1, 0) = 0.0;
        CHECK(l1_coherence(DensityMatrix(1, m)) == 0.0);
    }
    SUBCASE("random states match the defining sum and stay in [0, 1]") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix m = oracle::random_density(3, rng);
            const double c = l1_coherence(DensityMatrix(3, m));
            CHECK(c == doctest::Approx(direct_coherence(m)).epsilon(1e-12));
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
        }
    }
}

TEST_CASE("time averaging") {
    const DensityMatrix bell(2, phi_plus());
    TrajectoryRecord constant;
    for (int i = 0; i < 5; ++i) {
        constant.times.push_back(i);
        constant.states.push_back(bell);
    }
    const QuantumnessSample c = time_average(constant);
    CHECK(c.log_negativity_mean == doctest::Approx(1.0));
    CHECK(c.coherence_normalized == doctest::Approx(l1_coherence(bell)));
    CHECK(c.time == doctest::Approx(2.0));

    TrajectoryRecord two;
    two.times = {0.0, 1.0};
    two.states = {bell, DensityMatrix::maximally_mixed(2)};
    const QuantumnessSample t = time_average(two);
    CHECK(t.log_negativity_mean == doctest::Approx(0.5));
    CHECK(t.coherence_normalized == doctest::Approx(0.5 * l1_coherence(bell)));
    REQUIRE(t.log_negativity_by_bipartition.size() == 1);
    CHECK(t.log_negativity_by_bipartition[0] == doctest::Approx(0.5));

    CHECK_THROWS_AS(time_average(TrajectoryRecord{}), std::invalid_argument);

    const QuantumnessSample single = measure(bell, 3.0, BipartitionSet::kSingleQubit);
    CHECK(single.time == 3.0);
    CHECK(single.log_negativity_by_bipartition.size() == 1);
}

TEST_CASE("uncoupled dynamics never entangles") {
    for (double gamma : {0.0, 0.01, 0.5}) {
        LindbladSpec spec;
        spec.hamiltonian.connectivity = sample_connectivity(4, 0.0, 0);
        spec.hamiltonian.h = 2.0;
        spec.gamma = gamma;
        SamplingSpec sampling;
        sampling.washout = 20;
        InputSignalSpec sig;
        sig.k_steps = 80;
        RunOptions opt;
        opt.meter = true;
        const ReservoirRun run = Reservoir(spec, sampling).run(generate_signal(sig), opt);
        const QuantumnessSample avg = time_average(*run.trajectory);
        CHECK(avg.log_negativity_mean < 1e-8);
        CHECK(avg.coherence_normalized >= 0.0);
        CHECK(avg.coherence_normalized <= 1.0);
    }
}
