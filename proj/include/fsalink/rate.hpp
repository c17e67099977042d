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

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsalink
{
    // RU widths with a rate column in the MCS table.
    inline constexpr std::array<double, 3> mcs_ru_widths_hz{5e6, 10e6, 20e6};

    struct McsEntry
    {
        int index = 0;
        std::string modulation;
        std::string coding;
        double min_snr_db = 0.0;
        std::array<double, 3> rate_mbps{}; // aligned with mcs_ru_widths_hz
    };

    // Ordered MCS table. Thresholds and every rate column are strictly
    // increasing with the index; the constructor enforces it.
    class McsTable
    {
      public:
        explicit McsTable(std::vector<McsEntry> entries);

        // CSV with header
        //   index,modulation,coding,min_snr_db,rate_mbps_5mhz,rate_mbps_10mhz,rate_mbps_20mhz
        // Blank lines and lines starting with '#' are ignored.
        static McsTable parse_csv(std::string_view text);
        static McsTable load_csv(const std::filesystem::path &path);

        // The shipped data/mcs_11ax.csv, compiled in.
        static const McsTable &default_11ax();

        std::size_t size() const noexcept { return entries_.size(); }
        const McsEntry &entry(std::size_t index) const { return entries_.at(index); }
        double threshold_db(std::size_t index) const { return entries_.at(index).min_snr_db; }
        double rate_mbps(std::size_t index, double ru_width_hz) const;

      private:
        std::vector<McsEntry> entries_;
    };

    // Highest index whose threshold <= snr; nullopt is "no link".
    std::optional<std::size_t> select_mcs(const McsTable &table, double snr_db);

    struct RateImprovement
    {
        enum class Outcome
        {
            percent,  // both links up; value holds the relative gain in %
            new_link, // only the FSA link reaches MCS0; value holds its rate in Mbps
            no_link   // neither link reaches MCS0
        };
        Outcome outcome = Outcome::no_link;
        double value = 0.0;
    };

    // 100 * (rate(fsa) - rate(omni)) / rate(omni). A lost FSA link against a
    // working omni link is reported as -100 %.
    RateImprovement rate_improvement(const McsTable &table, double snr_fsa_db, double snr_omni_db, double ru_width_hz);

    // MCS0 range by free-space extrapolation: d0 * 10^((snr - threshold0) / 20).
    double range_at_mcs0(double snr_at_d0_db, double d0_m, const McsTable &table);

    // 100 * (10^(delta_snr / 20) - 1)
    double range_improvement_pct(double delta_snr_db);
}
