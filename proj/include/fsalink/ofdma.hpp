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

#include "fsalink/channel.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

// OFDMA resource units: partition, per-RU channel feedback, allocation and
// the best-RU SNR gain of one antenna over another.
//
// RU indices are 0-based throughout the C++ API (RU i of m covers subcarriers
// [i * subcarriers_per_ru, (i + 1) * subcarriers_per_ru)).

namespace fsalink
{
    using DeviceId = std::uint32_t;

    struct RuPlan
    {
        SubcarrierGrid grid;
        double ru_width_hz = 20e6;
        std::size_t ru_count = 0;
        std::size_t subcarriers_per_ru = 0;

        std::size_t first_subcarrier(std::size_t ru) const noexcept { return ru * subcarriers_per_ru; }
        double lower_edge_hz(std::size_t ru) const noexcept { return grid.lower_edge_hz() + static_cast<double>(ru) * ru_width_hz; }
        double upper_edge_hz(std::size_t ru) const noexcept { return lower_edge_hz(ru) + ru_width_hz; }
        bool contains(std::size_t ru, double f_hz) const noexcept { return f_hz >= lower_edge_hz(ru) && f_hz < upper_edge_hz(ru); }

        // RU whose band contains f; throws Error(band_range) outside the channel.
        std::size_t ru_for_frequency(double f_hz) const;
    };

    enum class AntennaLabel
    {
        fsa,
        omni
    };

    // Per-RU received power feedback from one device.
    struct RuReport
    {
        DeviceId device_id = 0;
        AntennaLabel antenna = AntennaLabel::fsa;
        std::vector<double> power_dbm; // one entry per RU

        // Strongest RU; ties resolve to the lowest index.
        std::size_t best_ru() const;
        double best_power_dbm() const { return power_dbm.at(best_ru()); }
    };

    // device -> RU index; injective.
    struct Allocation
    {
        std::map<DeviceId, std::size_t> ru_of_device;

        // Sum over allocated devices of their RU power in dB; the objective
        // maximised by optimal_allocation.
        double sum_power_db(std::span<const RuReport> reports) const;
    };

    // Throws Error(partition) unless ru_width divides bandwidth and the grid's
    // subcarrier count divides evenly into the resulting RUs.
    RuPlan partition_rus(double bandwidth_hz, double ru_width_hz, const SubcarrierGrid &grid);

    // P_i = 10 log10(mean of linear power over RU i).
    RuReport measure_ru_power(const CsiVector &csi, const RuPlan &plan, DeviceId device = 0,
                              AntennaLabel antenna = AntennaLabel::fsa);

    // Greedy best-channel allocation. Repeatedly, every unassigned device
    // proposes its strongest unassigned RU; the strongest proposal wins (ties:
    // lower RU index, then lower device id). Throws Error(capacity) when
    // there are more devices than RUs.
    Allocation allocate(std::span<const RuReport> reports, const RuPlan &plan);

    // Exhaustive max-sum-power assignment, used to quantify the greedy gap.
    // Limited to ru_count <= 8 and at most 8 devices.
    Allocation optimal_allocation(std::span<const RuReport> reports, const RuPlan &plan);

    // max_i P_fsa,i - max_j P_omni,j
    double delta_snr(const RuReport &report_fsa, const RuReport &report_omni);

    struct DeviceCsi
    {
        DeviceId device_id;
        CsiVector csi;
    };

    // SNR of every device on its allocated RU, against the thermal noise over
    // one RU width. Throws Error(allocation) for a device with no RU.
    std::map<DeviceId, double> evaluate_link(const Allocation &allocation, std::span<const DeviceCsi> devices,
                                             const RuPlan &plan, const RadioParams &radio);

    // Full-band preamble check: mean power over all subcarriers against the
    // full-channel noise floor must reach the MCS0 threshold.
    bool preamble_decodable(const CsiVector &csi, const RadioParams &radio, double mcs0_threshold_db);
}
