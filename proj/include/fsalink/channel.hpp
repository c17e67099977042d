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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fsalink
{
    // OFDM subcarrier layout of one channel. Subcarrier k sits at
    //   center - bandwidth/2 + (k + 0.5) * spacing.
    struct SubcarrierGrid
    {
        double center_hz = 5.58e9;
        double bandwidth_hz = 160e6;
        double spacing_hz = 78125.0;

        void validate() const;

        std::size_t count() const;
        double frequency(std::size_t k) const noexcept { return lower_edge_hz() + (static_cast<double>(k) + 0.5) * spacing_hz; }
        double lower_edge_hz() const noexcept { return center_hz - 0.5 * bandwidth_hz; }
        double upper_edge_hz() const noexcept { return center_hz + 0.5 * bandwidth_hz; }
        std::vector<double> frequencies() const;

        friend bool operator==(const SubcarrierGrid &, const SubcarrierGrid &) = default;
    };

    struct LinkGeometry
    {
        double distance_m = 1.0;
        double azimuth_at_a_deg = 0.0; // direction of B in A's antenna frame
        double azimuth_at_b_deg = 0.0; // direction of A in B's antenna frame

        void validate() const;
    };

    struct RadioParams
    {
        double tx_power_dbm = 15.0;
        double noise_figure_db = 7.0;

        void validate() const;
    };

    struct CsiVector
    {
        SubcarrierGrid grid;
        std::vector<double> power_dbm;
    };

    enum class FadingKind
    {
        los,
        rician
    };

    struct FadingModel
    {
        FadingKind kind = FadingKind::los;
        double k_factor_db = 6.0;
        std::uint64_t seed = 0;
        std::uint64_t link_id = 0;
    };

    // 20 log10(d) + 20 log10(f) + 20 log10(4 pi / c)
    double fspl_db(double distance_m, double f_hz);

    // -174 dBm/Hz + 10 log10(B) + NF
    double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

    inline double snr_db(double p_rx_dbm, double noise_dbm) noexcept { return p_rx_dbm - noise_dbm; }

    // Rician power gain in dB for one subcarrier; 0 for line-of-sight only.
    // A pure function of (seed, link_id, subcarrier).
    double fading_db(const FadingModel &fading, std::size_t subcarrier);

    // Per-subcarrier received power of a link from endpoint A (transmitter,
    // tx_pattern) to endpoint B (receiver, rx_pattern):
    //   P[k] = tx_power + G_tx(f_k, az_a) + G_rx(f_k, az_b) - FSPL(d, f_k) + fading_k
    CsiVector synthesize_csi(const LinkGeometry &geometry, const AntennaPattern &tx_pattern,
                             const AntennaPattern &rx_pattern, const SubcarrierGrid &grid, const RadioParams &radio,
                             const FadingModel &fading);

    // Adds complex Gaussian measurement noise: each sample becomes
    // |sqrt(P) + n|^2 with n ~ CN(0, mean(P) / 10^(snr/10)). The mean is taken
    // in linear units over all samples, so snr_db is the average per-sample SNR.
    void add_measurement_noise(std::span<double> power_dbm, double snr_db, std::uint64_t key);
}
