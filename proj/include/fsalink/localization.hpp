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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

// Single-chain localization: angle of arrival from the frequency profile of
// the received power (CSI or per-channel probe RSSI) through the antenna's
// frequency-to-angle map, distance from DATA->ACK round-trip timing, and the
// fused position.

namespace fsalink
{
    struct SmoothingConfig
    {
        double points_per_mhz = 10.0; // dense interpolation grid density
        int window = 31;              // Savitzky-Golay window, dense-grid samples, odd
        int order = 2;                // Savitzky-Golay polynomial order

        // Add 20 log10(f) before peak search. This removes the free-space
        // path-loss slope across the channel, which otherwise drags the peak
        // of a wide beam towards lower frequencies.
        bool compensate_path_loss_slope = true;

        void validate() const;

        double grid_step_hz() const noexcept { return 1e6 / points_per_mhz; }
    };

    struct AoaEstimate
    {
        double angle_deg = 0.0;
        double peak_frequency_hz = 0.0;
        bool out_of_coverage = false; // peak sits on the edge of the measured span
    };

    // Interpolate, smooth, locate the peak and map it through the calibration.
    // Frequencies must be strictly increasing and lie inside the calibration band.
    AoaEstimate aoa_from_spectrum(std::span<const double> freq_hz, std::span<const double> power_dbm,
                                  const BeamCalibration &calibration, const SmoothingConfig &config = {});

    // Requires the CSI to span at least 40 MHz inside the calibration band.
    AoaEstimate aoa_from_csi(const CsiVector &csi, const BeamCalibration &calibration, const SmoothingConfig &config = {});

    struct RssiScan
    {
        std::vector<double> channel_hz;
        std::vector<double> rssi_dbm;

        // 17 channel centres 5.500, 5.520, ..., 5.820 GHz.
        static std::vector<double> default_channels();

        void validate() const; // >= 3 channels, strictly increasing
    };

    AoaEstimate aoa_from_probe_scan(const RssiScan &scan, const BeamCalibration &calibration,
                                    const SmoothingConfig &config = {});

    // ---- ranging --------------------------------------------------------

    inline constexpr double default_sifs_ns = 16000.0;

    struct RttSampleGroup
    {
        std::vector<double> intervals_ns; // DATA end -> ACK start as seen by the initiator
        double sifs_ns = default_sifs_ns;
    };

    // d = c * (median(intervals) - SIFS) / 2. Throws Error(domain) for an empty
    // group and Error(negative_distance) when the median is below SIFS.
    double rtt_distance(const RttSampleGroup &group);

    struct RttTimingModel
    {
        double jitter_sigma_ns = 6.0;
        double clock_resolution_ns = 1000.0 / 88.0; // one 88 MHz tick
        std::size_t group_size = 100;
        double sifs_ns = default_sifs_ns;

        void validate() const;
    };

    // intervals[i] = quantize(SIFS + 2 d / c + N(0, jitter^2)); quantization
    // rounds to the nearest clock tick (resolution 0 disables it).
    RttSampleGroup simulate_rtt_exchange(double distance_m, const RttTimingModel &model, std::uint64_t seed);

    // ---- fusion ---------------------------------------------------------

    struct PositionEstimate
    {
        double aoa_deg = 0.0;
        double distance_m = 0.0;
        double x_m = 0.0; // d sin(aoa)
        double y_m = 0.0; // d cos(aoa)
    };

    PositionEstimate fuse(double aoa_deg, double distance_m);

    struct Polar
    {
        double angle_deg;
        double distance_m;
    };
    Polar polar_from_cartesian(double x_m, double y_m);

    // ---- trace files ----------------------------------------------------

    // "subcarrier_freq_hz,power_dbm" rows; the grid is reconstructed from the
    // frequencies, which must be uniformly spaced.
    CsiVector parse_csi_csv(std::string_view text);
    // "channel_freq_hz,rssi_dbm" rows.
    RssiScan parse_rssi_csv(std::string_view text);
    // "interval_ns" rows.
    RttSampleGroup parse_rtt_csv(std::string_view text);

    std::string read_text_file(const std::filesystem::path &path);
}
