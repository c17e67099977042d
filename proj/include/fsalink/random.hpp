// SPDX-License-Identifier: Apache-2.0
//
// fsalink: frequency-scanning antenna link and localization simulator
// Copyright (C) 2026 The fsalink authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <initializer_list>

// Counter-based random numbers.
//
// Every draw is a pure function of (key, counter), so results never depend on
// evaluation order or thread scheduling. Keys are derived hierarchically from
// a master seed, e.g. derive_key(master, {device_id, trial, stream_tag}).
// Gaussian draws use an explicit Box-Muller transform so that sample values
// are identical across standard library implementations.

namespace fsalink::rng
{
    // SplitMix64 finalizer; a bijective 64-bit mixer.
    constexpr std::uint64_t mix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    constexpr std::uint64_t derive_key(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept
    {
        std::uint64_t key = mix64(parent);
        for (std::uint64_t p : path)
            key = mix64(key ^ mix64(p + 0x632BE59BD9B4E019ull));
        return key;
    }

    constexpr std::uint64_t bits(std::uint64_t key, std::uint64_t counter) noexcept
    {
        return mix64(key ^ mix64(counter ^ 0xD1B54A32D192ED03ull));
    }

    // Uniform in the open interval (0, 1).
    constexpr double uniform(std::uint64_t key, std::uint64_t counter) noexcept
    {
        return (static_cast<double>(bits(key, counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal; consumes counters 2*counter and 2*counter + 1.
    double normal(std::uint64_t key, std::uint64_t counter) noexcept;

    // Circularly-symmetric complex normal with unit total variance.
    struct ComplexSample
    {
        double re;
        double im;
    };
    ComplexSample complex_normal(std::uint64_t key, std::uint64_t counter) noexcept;

    // Stream tags used to separate independent draws for the same entity.
    enum class Stream : std::uint64_t
    {
        fading = 1,
        csi_noise = 2,
        rtt_jitter = 3,
        probe_noise = 4,
        placement = 5
    };
}
