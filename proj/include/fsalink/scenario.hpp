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

#include "fsalink/antenna.hpp"
#include "fsalink/channel.hpp"
#include "fsalink/localization.hpp"
#include "fsalink/rate.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Declarative experiment description, loaded from a strict JSON file.
// The schema is documented in docs/scenario.md.

namespace fsalink
{
    enum class AntennaKind
    {
        fsa,
        omni,
        ideal_beams
    };

    enum class Evaluation
    {
        comm,
        localization,
        both
    };

    enum class AoaMethod
    {
        csi,
        probe
    };

    std::string_view to_string(AntennaKind kind) noexcept;

    struct Vec2
    {
        double x = 0.0;
        double y = 0.0;
        friend bool operator==(const Vec2 &, const Vec2 &) = default;
    };

    // Bearing of v: 0 deg along +y, positive towards +x (so x = r sin, y = r cos).
    double bearing_deg(Vec2 v) noexcept;

    // Maps any angle into [-180, 180).
    double wrap_deg(double a) noexcept;

    struct AccessPoint
    {
        Vec2 position_m;
        double orientation_deg = 0.0; // bearing of the antenna broadside
        AntennaKind antenna = AntennaKind::fsa;
        RadioParams radio;
    };

    struct Device
    {
        std::uint32_t id = 0;
        Vec2 position_m;
        double orientation_deg = 0.0;
        AntennaKind antenna = AntennaKind::omni;
    };

    struct LocalizationSettings
    {
        AoaMethod method = AoaMethod::csi;
        std::optional<double> csi_snr_db = 20.0;  // nullopt: noiseless CSI
        double probe_rssi_sigma_db = 0.0;         // Gaussian RSSI error per probe channel
        SmoothingConfig smoothing;
        RttTimingModel rtt;
    };

    struct Scenario
    {
        AccessPoint ap;
        std::vector<Device> devices;
        SubcarrierGrid channel;
        std::vector<double> ru_widths_hz{5e6, 10e6, 20e6};
        FadingKind fading = FadingKind::los;
        double k_factor_db = 6.0;
        std::size_t trials = 1;
        std::uint64_t seed = 1;
        Evaluation evaluation = Evaluation::comm;

        FsaModel fsa;
        OmniModel omni;
        IdealBeamModel ideal_beams;

        LocalizationSettings localization;
        std::optional<McsTable> mcs_table; // default table when empty

        // Throws Error(validation) naming the offending field.
        void validate() const;

        AntennaPattern pattern(AntennaKind kind) const;
        const McsTable &mcs() const { return mcs_table ? *mcs_table : McsTable::default_11ax(); }

        // Link from the AP to device i in both antenna frames.
        LinkGeometry geometry(const Device &device) const;
    };

    // Throws Error(parse) with line and column for malformed JSON or unknown
    // keys, Error(validation) naming the field for bad values. Relative
    // mcs_table paths are resolved against base_dir.
    Scenario parse_scenario(std::string_view json_text, const std::filesystem::path &base_dir = {});
    Scenario load_scenario(const std::filesystem::path &path);

    // Calibration file: {"f_ref_hz", "theta_ref_deg", "slope_deg_per_hz", "f_min_hz", "f_max_hz"}.
    BeamCalibration parse_calibration(std::string_view json_text);
    std::string calibration_to_json(const BeamCalibration &cal);
}
