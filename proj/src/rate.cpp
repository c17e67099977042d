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

#include "fsalink/rate.hpp"

#include "fsalink/error.hpp"
#include "mcs_default.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fsalink
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string_view> split(std::string_view line)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            for (;;)
            {
                const auto comma = line.find(',', start);
                out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
                if (comma == std::string_view::npos)
                    return out;
                start = comma + 1;
            }
        }

        double to_double(std::string_view field, std::size_t line)
        {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
                throw Error(ErrorCode::parse, "MCS table line " + std::to_string(line) + ": invalid number '" + std::string(field) + "'");
            return v;
        }

        constexpr std::string_view expected_header =
            "index,modulation,coding,min_snr_db,rate_mbps_5mhz,rate_mbps_10mhz,rate_mbps_20mhz";

        std::size_t column_for(double ru_width_hz)
        {
            for (std::size_t c = 0; c < mcs_ru_widths_hz.size(); ++c)
                if (std::abs(ru_width_hz - mcs_ru_widths_hz[c]) < 1.0)
                    return c;
            throw Error(ErrorCode::config, "no MCS rate column for RU width " + std::to_string(ru_width_hz) + " Hz");
        }
    }

    McsTable::McsTable(std::vector<McsEntry> entries) : entries_(std::move(entries))
    {
        if (entries_.empty())
            throw Error(ErrorCode::validation, "MCS table is empty");
        for (std::size_t i = 0; i < entries_.size(); ++i)
        {
            if (entries_[i].index != static_cast<int>(i))
                throw Error(ErrorCode::validation, "MCS table indices must be 0, 1, 2, ... in order");
            for (double r : entries_[i].rate_mbps)
                if (!(r > 0.0))
                    throw Error(ErrorCode::validation, "MCS " + std::to_string(i) + ": rates must be positive");
            if (i == 0)
                continue;
            if (!(entries_[i].min_snr_db > entries_[i - 1].min_snr_db))
                throw Error(ErrorCode::validation, "MCS thresholds must increase strictly (index " + std::to_string(i) + ")");
            for (std::size_t c = 0; c < mcs_ru_widths_hz.size(); ++c)
                if (!(entries_[i].rate_mbps[c] > entries_[i - 1].rate_mbps[c]))
                    throw Error(ErrorCode::validation, "MCS rates must increase strictly (index " + std::to_string(i) + ")");
        }
    }

    McsTable McsTable::parse_csv(std::string_view text)
    {
        std::vector<McsEntry> entries;
        bool header_seen = false;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            const auto nl = text.find('\n', pos);
            const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            ++line_no;

            const std::string_view line = trim(raw);
            if (line.empty() || line.front() == '#')
                continue;
            if (!header_seen)
            {
                if (line != expected_header)
                    throw Error(ErrorCode::parse, "MCS table line " + std::to_string(line_no) + ": expected header '" +
                                                      std::string(expected_header) + "'");
                header_seen = true;
                continue;
            }
            const auto f = split(line);
            if (f.size() != 7)
                throw Error(ErrorCode::parse, "MCS table line " + std::to_string(line_no) + ": expected 7 fields");
            McsEntry e;
            const double idx = to_double(f[0], line_no);
            e.index = static_cast<int>(idx);
            if (static_cast<double>(e.index) != idx)
                throw Error(ErrorCode::parse, "MCS table line " + std::to_string(line_no) + ": index must be an integer");
            e.modulation = std::string(f[1]);
            e.coding = std::string(f[2]);
            e.min_snr_db = to_double(f[3], line_no);
            for (std::size_t c = 0; c < 3; ++c)
                e.rate_mbps[c] = to_double(f[4 + c], line_no);
            entries.push_back(std::move(e));
        }
        if (!header_seen)
            throw Error(ErrorCode::parse, "MCS table has no header");
        return McsTable(std::move(entries));
    }

    McsTable McsTable::load_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::io, "cannot open MCS table " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_csv(ss.str());
    }

    const McsTable &McsTable::default_11ax()
    {
        static const McsTable table = parse_csv(detail::default_mcs_csv);
        return table;
    }

    double McsTable::rate_mbps(std::size_t index, double ru_width_hz) const
    {
        return entries_.at(index).rate_mbps[column_for(ru_width_hz)];
    }

    std::optional<std::size_t> select_mcs(const McsTable &table, double snr_db)
    {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < table.size(); ++i)
            if (table.threshold_db(i) <= snr_db)
                best = i;
        return best;
    }

    RateImprovement rate_improvement(const McsTable &table, double snr_fsa_db, double snr_omni_db, double ru_width_hz)
    {
        const auto fsa = select_mcs(table, snr_fsa_db);
        const auto omni = select_mcs(table, snr_omni_db);
        if (!omni)
        {
            if (!fsa)
                return {RateImprovement::Outcome::no_link, 0.0};
            return {RateImprovement::Outcome::new_link, table.rate_mbps(*fsa, ru_width_hz)};
        }
        const double r_omni = table.rate_mbps(*omni, ru_width_hz);
        const double r_fsa = fsa ? table.rate_mbps(*fsa, ru_width_hz) : 0.0;
        return {RateImprovement::Outcome::percent, 100.0 * (r_fsa - r_omni) / r_omni};
    }

    double range_at_mcs0(double snr_at_d0_db, double d0_m, const McsTable &table)
    {
        if (!(d0_m > 0.0))
            throw Error(ErrorCode::domain, "reference distance must be > 0");
        const double margin = snr_at_d0_db - table.threshold_db(0);
        if (margin < 0.0)
            throw Error(ErrorCode::range, "SNR " + std::to_string(snr_at_d0_db) + " dB is below the MCS0 threshold at the reference distance");
        return d0_m * std::pow(10.0, margin / 20.0);
    }

    double range_improvement_pct(double delta_snr_db)
    {
        return 100.0 * (std::pow(10.0, delta_snr_db / 20.0) - 1.0);
    }
}
