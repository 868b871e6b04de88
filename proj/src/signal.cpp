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

#include "qrc/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qrc/rng.hpp"

namespace qrc {

std::vector<double> component_frequencies(double f, int n_components) {
    if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("frequency scale must be > 0");
    if (n_components < 1) throw std::invalid_argument("need at least one frequency component");
    const double lo = f / 5000.0;
    const double hi = f / 50.0;
    std::vector<double> out(static_cast<std::size_t>(n_components));
    if (n_components == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < n_components; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n_components - 1);
    }
    return out;
}

std::vector<double> raw_signal(const InputSignalSpec& spec) {
    if (spec.k_steps < 2) throw std::invalid_argument("signal needs at least 2 steps");
    if (!(spec.dt_injection > 0.0)) throw std::invalid_argument("injection period must be > 0");
    const auto freqs = component_frequencies(spec.f, spec.n_components);

    std::vector<double> phases(freqs.size(), 0.0);
    if (!spec.zero_phases) {
        auto rng = make_rng(spec.seed, SeedStream::kSignal, spec.substream);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (auto& z : phases) z = unit(rng);
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> values(spec.k_steps, 0.0);
    for (std::size_t k = 0; k < spec.k_steps; ++k) {
        const double t = static_cast<double>(k) * spec.dt_injection;
        double acc = 0.0;
        for (std::size_t i = 0; i < freqs.size(); ++i) acc += std::sin(two_pi * freqs[i] * t + two_pi * phases[i]);
        values[k] = acc;
    }
    return values;
}

InputSignal generate_signal(const InputSignalSpec& spec) {
    auto values = raw_signal(spec);
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    if (!(span > 0.0)) throw std::runtime_error("signal is constant and cannot be normalized");
    for (auto& v : values) v = std::clamp((v - lo) / span, 0.0, 1.0);
    return InputSignal{std::move(values), spec};
}

std::vector<std::optional<double>> target_series(const InputSignal& s, std::size_t tau) {
    if (tau >= s.size()) throw std::invalid_argument("delay must be shorter than the signal");
    std::vector<std::optional<double>> out(s.size());
    for (std::size_t k = tau; k < s.size(); ++k) out[k] = s[k - tau];
    return out;
}

}  // namespace qrc
