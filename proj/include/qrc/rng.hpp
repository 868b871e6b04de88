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
#include <random>

namespace qrc {

/// Stream identifiers keep the connectivity, signal and noise generators
/// statistically independent even when the user reuses a seed value.
enum class SeedStream : std::uint32_t {
    kConnectivity = 0x436f6e6e,  // "Conn"
    kSignal = 0x5369676e,        // "Sign"
    kNoise = 0x4e6f6973,         // "Nois"
};

/// Generator for (seed, stream, substream). Substreams separate e.g. the
/// individual training sequences drawn under one signal seed.
inline std::mt19937_64 make_rng(std::uint64_t seed, SeedStream stream, std::uint32_t substream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), substream};
    return std::mt19937_64(seq);
}

}  // namespace qrc
