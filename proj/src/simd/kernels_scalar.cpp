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

#include "kernels_impl.hpp"

#include <cmath>

namespace fsalink::simd::detail
{
    void array_factor_scalar(std::span<const double> psi, int elements, std::span<double> out)
    {
        const double inv_n = 1.0 / static_cast<double>(elements);
        for (std::size_t i = 0; i < psi.size(); ++i)
        {
            double re = 0.0, im = 0.0;
            for (int n = 0; n < elements; ++n)
            {
                const double phase = static_cast<double>(n) * psi[i];
                re += std::cos(phase);
                im += std::sin(phase);
            }
            out[i] = (re * re + im * im) * inv_n;
        }
    }

    void db_to_linear_scalar(std::span<const double> db, std::span<double> out)
    {
        for (std::size_t i = 0; i < db.size(); ++i)
            out[i] = std::pow(10.0, db[i] / 10.0);
    }

    void block_mean_scalar(std::span<const double> values, std::size_t block, std::span<double> out)
    {
        const double inv = 1.0 / static_cast<double>(block);
        for (std::size_t b = 0; b < out.size(); ++b)
        {
            double acc = 0.0;
            for (std::size_t k = 0; k < block; ++k)
                acc += values[b * block + k];
            out[b] = acc * inv;
        }
    }

    void correlate_valid_scalar(std::span<const double> x, std::span<const double> taps, std::span<double> out)
    {
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            double acc = 0.0;
            for (std::size_t j = 0; j < taps.size(); ++j)
                acc += taps[j] * x[i + j];
            out[i] = acc;
        }
    }
}
