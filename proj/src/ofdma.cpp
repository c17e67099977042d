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

#include "fsalink/ofdma.hpp"

#include "fsalink/error.hpp"
#include "fsalink/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fsalink
{
    std::size_t RuPlan::ru_for_frequency(double f_hz) const
    {
        if (!(f_hz >= grid.lower_edge_hz() && f_hz < grid.upper_edge_hz()))
            throw Error(ErrorCode::band_range, "frequency " + std::to_string(f_hz) + " Hz outside the channel");
        const auto ru = static_cast<std::size_t>((f_hz - grid.lower_edge_hz()) / ru_width_hz);
        return std::min(ru, ru_count - 1);
    }

    std::size_t RuReport::best_ru() const
    {
        if (power_dbm.empty())
            throw Error(ErrorCode::shape, "empty RU report");
        // max_element returns the first maximum
        return static_cast<std::size_t>(std::max_element(power_dbm.begin(), power_dbm.end()) - power_dbm.begin());
    }

    double Allocation::sum_power_db(std::span<const RuReport> reports) const
    {
        double sum = 0.0;
        for (const RuReport &r : reports)
        {
            auto it = ru_of_device.find(r.device_id);
            if (it != ru_of_device.end())
                sum += r.power_dbm.at(it->second);
        }
        return sum;
    }

    RuPlan partition_rus(double bandwidth_hz, double ru_width_hz, const SubcarrierGrid &grid)
    {
        if (!(bandwidth_hz > 0.0) || !(ru_width_hz > 0.0))
            throw Error(ErrorCode::partition, "bandwidth and RU width must be positive");
        if (std::abs(bandwidth_hz - grid.bandwidth_hz) > 1e-6)
            throw Error(ErrorCode::shape, "RU plan bandwidth does not match the subcarrier grid");

        const double ratio = bandwidth_hz / ru_width_hz;
        const double rounded = std::round(ratio);
        if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio)
            throw Error(ErrorCode::partition, "RU width " + std::to_string(ru_width_hz) + " Hz does not divide bandwidth " +
                                                  std::to_string(bandwidth_hz) + " Hz");

        const auto m = static_cast<std::size_t>(rounded);
        const std::size_t n = grid.count();
        if (n % m != 0)
            throw Error(ErrorCode::partition, std::to_string(n) + " subcarriers do not split evenly into " + std::to_string(m) + " RUs");
        return RuPlan{grid, ru_width_hz, m, n / m};
    }

    RuReport measure_ru_power(const CsiVector &csi, const RuPlan &plan, DeviceId device, AntennaLabel antenna)
    {
        if (!(csi.grid == plan.grid) || csi.power_dbm.size() != plan.ru_count * plan.subcarriers_per_ru)
            throw Error(ErrorCode::shape, "CSI grid does not match the RU plan");

        std::vector<double> lin(csi.power_dbm.size());
        simd::db_to_linear(csi.power_dbm, lin);
        RuReport report{device, antenna, std::vector<double>(plan.ru_count)};
        simd::block_mean(lin, plan.subcarriers_per_ru, report.power_dbm);
        for (double &p : report.power_dbm)
            p = 10.0 * std::log10(p);
        return report;
    }

    namespace
    {
        void check_reports(std::span<const RuReport> reports, const RuPlan &plan)
        {
            for (const RuReport &r : reports)
                if (r.power_dbm.size() != plan.ru_count)
                    throw Error(ErrorCode::shape, "RU report length does not match the plan");
            if (reports.size() > plan.ru_count)
                throw Error(ErrorCode::capacity, std::to_string(reports.size()) + " devices exceed " +
                                                     std::to_string(plan.ru_count) + " RUs");
        }
    }

    Allocation allocate(std::span<const RuReport> reports, const RuPlan &plan)
    {
        check_reports(reports, plan);

        Allocation result;
        std::vector<bool> ru_taken(plan.ru_count, false);
        std::vector<bool> done(reports.size(), false);

        for (std::size_t round = 0; round < reports.size(); ++round)
        {
            std::size_t win_dev = 0, win_ru = 0;
            double win_power = -std::numeric_limits<double>::infinity();
            bool have = false;

            for (std::size_t d = 0; d < reports.size(); ++d)
            {
                if (done[d])
                    continue;
                // this device's strongest free RU (first maximum = lowest index)
                std::size_t best = plan.ru_count;
                for (std::size_t i = 0; i < plan.ru_count; ++i)
                    if (!ru_taken[i] && (best == plan.ru_count || reports[d].power_dbm[i] > reports[d].power_dbm[best]))
                        best = i;
                const double p = reports[d].power_dbm[best];

                const bool better = !have || p > win_power ||
                                    (p == win_power && (best < win_ru ||
                                                        (best == win_ru && reports[d].device_id < reports[win_dev].device_id)));
                if (better)
                {
                    have = true;
                    win_dev = d;
                    win_ru = best;
                    win_power = p;
                }
            }
            done[win_dev] = true;
            ru_taken[win_ru] = true;
            result.ru_of_device[reports[win_dev].device_id] = win_ru;
        }
        return result;
    }

    Allocation optimal_allocation(std::span<const RuReport> reports, const RuPlan &plan)
    {
        check_reports(reports, plan);
        if (plan.ru_count > 8)
            throw Error(ErrorCode::capacity, "optimal_allocation is limited to 8 RUs");

        std::vector<std::size_t> perm(plan.ru_count);
        std::iota(perm.begin(), perm.end(), 0);

        Allocation best;
        double best_sum = -std::numeric_limits<double>::infinity();
        do
        {
            double sum = 0.0;
            for (std::size_t d = 0; d < reports.size(); ++d)
                sum += reports[d].power_dbm[perm[d]];
            if (sum > best_sum)
            {
                best_sum = sum;
                best.ru_of_device.clear();
                for (std::size_t d = 0; d < reports.size(); ++d)
                    best.ru_of_device[reports[d].device_id] = perm[d];
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    double delta_snr(const RuReport &report_fsa, const RuReport &report_omni)
    {
        if (report_fsa.power_dbm.size() != report_omni.power_dbm.size() || report_fsa.power_dbm.empty())
            throw Error(ErrorCode::shape, "delta_snr: reports must be nonempty and of equal length");
        return report_fsa.best_power_dbm() - report_omni.best_power_dbm();
    }

    std::map<DeviceId, double> evaluate_link(const Allocation &allocation, std::span<const DeviceCsi> devices,
                                             const RuPlan &plan, const RadioParams &radio)
    {
        const double noise = noise_floor_dbm(plan.ru_width_hz, radio.noise_figure_db);
        std::map<DeviceId, double> snr;
        for (const DeviceCsi &dev : devices)
        {
            auto it = allocation.ru_of_device.find(dev.device_id);
            if (it == allocation.ru_of_device.end())
                throw Error(ErrorCode::allocation, "device " + std::to_string(dev.device_id) + " has no RU");
            const RuReport report = measure_ru_power(dev.csi, plan, dev.device_id);
            snr[dev.device_id] = snr_db(report.power_dbm.at(it->second), noise);
        }
        return snr;
    }

    bool preamble_decodable(const CsiVector &csi, const RadioParams &radio, double mcs0_threshold_db)
    {
        if (csi.power_dbm.empty())
            throw Error(ErrorCode::shape, "empty CSI");
        std::vector<double> lin(csi.power_dbm.size());
        simd::db_to_linear(csi.power_dbm, lin);
        const double mean = std::accumulate(lin.begin(), lin.end(), 0.0) / static_cast<double>(lin.size());
        const double noise = noise_floor_dbm(csi.grid.bandwidth_hz, radio.noise_figure_db);
        return snr_db(10.0 * std::log10(mean), noise) >= mcs0_threshold_db;
    }
}
