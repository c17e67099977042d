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

namespace fsalink::simd::detail
{
    void array_factor_scalar(std::span<const double> psi, int elements, std::span<double> out);
    void db_to_linear_scalar(std::span<const double> db, std::span<double> out);
    void block_mean_scalar(std::span<const double> values, std::size_t block, std::span<double> out);
    void correlate_valid_scalar(std::span<const double> x, std::span<const double> taps, std::span<double> out);

#if defined(FSALINK_HAVE_AVX2)
    void array_factor_avx2(std::span<const double> psi, int elements, std::span<double> out);
    void db_to_linear_avx2(std::span<const double> db, std::span<double> out);
    void block_mean_avx2(std::span<const double> values, std::size_t block, std::span<double> out);
    void correlate_valid_avx2(std::span<const double> x, std::span<const double> taps, std::span<double> out);
#endif
}
