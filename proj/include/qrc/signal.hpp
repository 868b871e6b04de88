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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qrc {

struct InputSignalSpec {
    double f = 1.0;           ///< frequency scale
    int n_components = 20;
    std::size_t k_steps = 0;  ///< sequence length K
    double dt_injection = 2.5;
    std::uint64_t seed = 0;
    std::uint32_t substream = 0;  ///< distinguishes sequences drawn under one seed
    /// Forces every phase to zero; used for analytic checks.
    bool zero_phases = false;
};

/// The n_components frequencies, linearly spaced over [f/5000, f/50].
std::vector<double> component_frequencies(double f, int n_components);

/// Unnormalized multi-sine sum_i sin(2 pi f_i t_k + 2 pi zeta_i) at t_k = k dt.
std::vector<double> raw_signal(const InputSignalSpec& spec);

struct InputSignal {
    std::vector<double> values;  ///< min-max normalized to [0, 1]
    InputSignalSpec spec;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }
};

InputSignal generate_signal(const InputSignalSpec& spec);

/// ybar_k = s_{k - tau}; the first tau slots are empty.
std::vector<std::optional<double>> target_series(const InputSignal& s, std::size_t tau);

}  // namespace qrc
