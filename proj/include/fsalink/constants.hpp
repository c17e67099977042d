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

#include <numbers>

namespace fsalink
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double thermal_noise_dbm_per_hz = -174.0;
    inline constexpr double pi = std::numbers::pi;

    inline constexpr double deg_to_rad(double deg) noexcept { return deg * (pi / 180.0); }
    inline constexpr double rad_to_deg(double rad) noexcept { return rad * (180.0 / pi); }
}
