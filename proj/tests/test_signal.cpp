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
#include <complex>
#include <numbers>
#include <stdexcept>

#include "qrc/signal.hpp"

using namespace qrc;

namespace {

/// |sum_k x_k exp(-2 pi i nu t_k)| / K
double spectral_amplitude(const std::vector<double>& x, double nu, double dt) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        acc += x[k] * std::polar(1.0, -2.0 * std::numbers::pi * nu * static_cast<double>(k) * dt);
    }
    return std::abs(acc) / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("component frequencies span [f/5000, f/50] evenly") {
    const auto fr = component_frequencies(5.0, 20);
    REQUIRE(fr.size() == 20);
    CHECK(fr.front() == doctest::Approx(0.001).epsilon(1e-14));
    CHECK(fr.back() == doctest::Approx(0.1).epsilon(1e-14));
    const double step = (0.1 - 0.001) / 19.0;
    for (std::size_t i = 1; i < fr.size(); ++i) CHECK(fr[i] - fr[i - 1] == doctest::Approx(step).epsilon(1e-10));

    CHECK(component_frequencies(0.2, 20).back() == doctest::Approx(0.004));
    CHECK_THROWS_AS(component_frequencies(0.0, 20), std::invalid_argument);
    CHECK_THROWS_AS(component_frequencies(1.0, 0), std::invalid_argument);
}

TEST_CASE("single zero-phase component is a sampled sine") {
    InputSignalSpec spec;
    spec.f = 50.0;  // f_1 = 0.01, one period = 40 steps of 2.5
    spec.n_components = 1;
    spec.k_steps = 40;
    spec.zero_phases = true;
    const auto raw = raw_signal(spec);
    REQUIRE(raw.size() == 40);
    for (std::size_t k = 0; k < raw.size(); ++k) {
        CHECK(raw[k] == doctest::Approx(std::sin(2.0 * std::numbers::pi * 0.01 * 2.5 * static_cast<double>(k))));
    }
}

TEST_CASE("normalized signal") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        InputSignalSpec spec;
        spec.f = 1.0;
        spec.k_steps = 1000;
        spec.seed = seed;
        const InputSignal s = generate_signal(spec);
        REQUIRE(s.size() == 1000);
        const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
        CHECK(*lo == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(*hi == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("signal generation is deterministic and stream-separated") {
    InputSignalSpec spec;
    spec.f = 1.0;
    spec.k_steps = 300;
    spec.seed = 42;
    const auto a = generate_signal(spec).values;
    CHECK(generate_signal(spec).values == a);
    spec.substream = 1;
    CHECK(generate_signal(spec).values != a);
    spec.substream = 0;
    spec.seed = 43;
    CHECK(generate_signal(spec).values != a);
}

TEST_CASE("spectrum concentrates on the component frequencies") {
    InputSignalSpec spec;
    spec.f = 1.0;
    spec.k_steps = 40000;  // resolution 1e-5, well below the 1.04e-3 spacing
    spec.seed = 3;
    const auto raw = raw_signal(spec);
    const auto fr = component_frequencies(1.0, 20);
    for (std::size_t i = 0; i + 1 < fr.size(); ++i) {
        // each unit-amplitude sinusoid contributes 1/2 at its own frequency
        CHECK(spectral_amplitude(raw, fr[i], 2.5) == doctest::Approx(0.5).epsilon(0.05));
        CHECK(spectral_amplitude(raw, 0.5 * (fr[i] + fr[i + 1]), 2.5) < 0.05);
    }
}

TEST_CASE("delayed targets") {
    InputSignal s;
    s.values = {0.1, 0.2, 0.3, 0.4, 0.5};

    const auto same = target_series(s, 0);
    for (std::size_t k = 0; k < 5; ++k) CHECK(same[k] == s[k]);

    const auto t3 = target_series(s, 3);
    REQUIRE(t3.size() == 5);
    CHECK_FALSE(t3[0].has_value());
    CHECK_FALSE(t3[1].has_value());
    CHECK_FALSE(t3[2].has_value());
    CHECK(*t3[3] == 0.1);
    CHECK(*t3[4] == 0.2);

    CHECK_THROWS_AS(target_series(s, 5), std::invalid_argument);
}

TEST_CASE("target at lag tau reproduces the shifted signal") {
    InputSignalSpec spec;
    spec.f = 1.0;
    spec.k_steps = 500;
    spec.seed = 9;
    const InputSignal s = generate_signal(spec);
    for (std::size_t tau : {1u, 7u, 30u}) {
        const auto t = target_series(s, tau);
        // mean of the source window s_0 .. s_{K-tau-1}
        double m = 0.0;
        for (std::size_t k = tau; k < s.size(); ++k) m += s[k - tau];
        m /= static_cast<double>(s.size() - tau);
        double cross = 0.0, var = 0.0;
        for (std::size_t k = tau; k < s.size(); ++k) {
            REQUIRE(t[k].has_value());
            cross += (s.values[k - tau] - m) * (*t[k] - m);
            var += (s.values[k - tau] - m) * (s.values[k - tau] - m);
        }
        CHECK(cross == doctest::Approx(var).epsilon(1e-14));
    }
}

TEST_CASE("signal argument checks") {
    InputSignalSpec spec;
    spec.k_steps = 1;
    CHECK_THROWS_AS(raw_signal(spec), std::invalid_argument);
    spec.k_steps = 10;
    spec.dt_injection = 0.0;
    CHECK_THROWS_AS(raw_signal(spec), std::invalid_argument);
}
