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

#include "fsalink/random.hpp"

#include "fsalink/constants.hpp"

#include <cmath>

namespace fsalink::rng
{
    double normal(std::uint64_t key, std::uint64_t counter) noexcept
    {
        const double u1 = uniform(key, 2 * counter);
        const double u2 = uniform(key, 2 * counter + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

    ComplexSample complex_normal(std::uint64_t key, std::uint64_t counter) noexcept
    {
        // Box-Muller pair, each component with variance 1/2
        const double u1 = uniform(key, 2 * counter);
        const double u2 = uniform(key, 2 * counter + 1);
        const double r = std::sqrt(-std::log(u1));
        return {r * std::cos(2.0 * pi * u2), r * std::sin(2.0 * pi * u2)};
    }
}
