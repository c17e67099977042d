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

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant compiled in a separate translation unit. The variant is
// chosen once at first use from CPUID; setting FSALINK_SIMD=scalar in the
// environment forces the reference path. All variants agree with the scalar
// reference to within a few ulps; for db_to_linear the bound grows with the
// magnitude of the exponent (see tests/test_kernels.cpp).
//
// Output spans must have the documented size; kernels do not allocate.

namespace fsalink::simd
{
    enum class Isa
    {
        scalar,
        avx2
    };

    std::string_view to_string(Isa isa) noexcept;

    struct KernelTable
    {
        Isa isa;

        // out[i] = |sum_{n=0}^{elements-1} exp(j n psi[i])|^2 / elements
        // out.size() == psi.size()
        void (*array_factor)(std::span<const double> psi, int elements, std::span<double> out);

        // out[i] = 10^(db[i] / 10); out.size() == db.size()
        void (*db_to_linear)(std::span<const double> db, std::span<double> out);

        // out[b] = mean(values[b*block, (b+1)*block)); values.size() == out.size() * block
        void (*block_mean)(std::span<const double> values, std::size_t block, std::span<double> out);

        // out[i] = sum_j taps[j] * x[i + j]; out.size() == x.size() - taps.size() + 1
        void (*correlate_valid)(std::span<const double> x, std::span<const double> taps, std::span<double> out);
    };

    const KernelTable &scalar_kernels() noexcept;

    // nullptr when the variant is not compiled in or the CPU lacks support.
    const KernelTable *avx2_kernels() noexcept;

    // Best ISA supported by this build on this CPU.
    Isa detected_isa() noexcept;

    // The table used by the library; fixed after the first call.
    const KernelTable &active_kernels() noexcept;

    inline void array_factor(std::span<const double> psi, int elements, std::span<double> out)
    {
        active_kernels().array_factor(psi, elements, out);
    }

    inline void db_to_linear(std::span<const double> db, std::span<double> out)
    {
        active_kernels().db_to_linear(db, out);
    }

    inline void block_mean(std::span<const double> values, std::size_t block, std::span<double> out)
    {
        active_kernels().block_mean(values, block, out);
    }

    inline void correlate_valid(std::span<const double> x, std::span<const double> taps, std::span<double> out)
    {
        active_kernels().correlate_valid(x, taps, out);
    }
}
