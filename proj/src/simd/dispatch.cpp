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

#include "fsalink/simd/kernels.hpp"

#include "kernels_impl.hpp"

#include <cstdlib>
#include <string_view>

namespace fsalink::simd
{
    namespace
    {
        constexpr KernelTable scalar_table{
            Isa::scalar,
            &detail::array_factor_scalar,
            &detail::db_to_linear_scalar,
            &detail::block_mean_scalar,
            &detail::correlate_valid_scalar};

#if defined(FSALINK_HAVE_AVX2)
        constexpr KernelTable avx2_table{
            Isa::avx2,
            &detail::array_factor_avx2,
            &detail::db_to_linear_avx2,
            &detail::block_mean_avx2,
            &detail::correlate_valid_avx2};

        bool cpu_has_avx2() noexcept
        {
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
        }
#endif

        const KernelTable &select() noexcept
        {
            const char *forced = std::getenv("FSALINK_SIMD");
            if (forced != nullptr && std::string_view(forced) == "scalar")
                return scalar_table;
            if (const KernelTable *t = avx2_kernels())
                return *t;
            return scalar_table;
        }
    }

    std::string_view to_string(Isa isa) noexcept
    {
        switch (isa)
        {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        }
        return "unknown";
    }

    const KernelTable &scalar_kernels() noexcept { return scalar_table; }

    const KernelTable *avx2_kernels() noexcept
    {
#if defined(FSALINK_HAVE_AVX2)
        static const bool supported = cpu_has_avx2();
        return supported ? &avx2_table : nullptr;
#else
        return nullptr;
#endif
    }

    Isa detected_isa() noexcept
    {
        return avx2_kernels() != nullptr ? Isa::avx2 : Isa::scalar;
    }

    const KernelTable &active_kernels() noexcept
    {
        static const KernelTable &table = select();
        return table;
    }
}
