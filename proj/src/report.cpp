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

#include "fsalink/report.hpp"

#include "fsalink/error.hpp"
#include "fsalink/localization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace fsalink
{
    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (v == 0.0)
            return "0"; // folds -0
        std::array<char, 64> buf{};
        const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
        return std::string(buf.data(), ptr);
    }

    namespace
    {
        std::string fixed(double v, int digits)
        {
            std::array<char, 64> buf{};
            const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
            std::string s(buf.data(), ptr);
            return s == "-0.000" ? "0.000" : s;
        }

        void write_file(const std::filesystem::path &path, const std::string &content)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error(ErrorCode::io, "cannot write " + path.string());
            out << content;
            out.close();
            if (!out)
                throw Error(ErrorCode::io, "write failed for " + path.string());
        }

        std::string pad(const std::string &s, std::size_t width, bool left)
        {
            if (s.size() >= width)
                return s;
            const std::string fill(width - s.size(), ' ');
            return left ? s + fill : fill + s;
        }
    }

    std::string raw_csv(const std::vector<Sample> &samples)
    {
        std::string out = "device_id,trial,value\n";
        for (const Sample &s : samples)
            out += std::to_string(s.device_id) + "," + std::to_string(s.trial) + "," + format_number(s.value) + "\n";
        return out;
    }

    std::string summary_csv(const SummaryStats &stats)
    {
        std::string out = "metric,n,mean,p10,p50,p90\n";
        for (const auto &[name, samples] : stats.metrics)
        {
            const MetricSummary m = summarize(samples);
            out += name + "," + std::to_string(m.n);
            if (m.n == 0)
                out += ",NA,NA,NA,NA\n";
            else
                out += "," + format_number(m.mean) + "," + format_number(m.p10) + "," + format_number(m.p50) + "," +
                       format_number(m.p90) + "\n";
        }
        return out;
    }

    std::string summary_text(const SummaryStats &stats)
    {
        std::size_t width = 6;
        for (const auto &[name, _] : stats.metrics)
            width = std::max(width, name.size());

        std::string out = pad("metric", width, true) + "  " + pad("n", 7, false);
        for (const char *h : {"mean", "p10", "p50", "p90"})
            out += "  " + pad(h, 12, false);
        out += "\n" + std::string(width + 9 + 4 * 14, '-') + "\n";

        for (const auto &[name, samples] : stats.metrics)
        {
            const MetricSummary m = summarize(samples);
            out += pad(name, width, true) + "  " + pad(std::to_string(m.n), 7, false);
            if (m.n == 0)
                out += "  (n=0: no samples, no percentiles)";
            else
                for (double v : {m.mean, m.p10, m.p50, m.p90})
                    out += "  " + pad(fixed(v, 3), 12, false);
            out += "\n";
        }
        return out;
    }

    void emit_report(const SummaryStats &stats, const std::filesystem::path &out_dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(out_dir / "raw", ec);
        if (ec)
            throw Error(ErrorCode::io, "cannot create " + (out_dir / "raw").string() + ": " + ec.message());

        for (const auto &[name, samples] : stats.metrics)
            write_file(out_dir / "raw" / (name + ".csv"), raw_csv(samples));
        write_file(out_dir / "summary.csv", summary_csv(stats));
        write_file(out_dir / "summary.txt", summary_text(stats));
    }

    SummaryStats load_raw(const std::filesystem::path &raw_dir)
    {
        std::filesystem::path dir = raw_dir;
        if (std::filesystem::is_directory(dir / "raw"))
            dir /= "raw";
        if (!std::filesystem::is_directory(dir))
            throw Error(ErrorCode::io, "not a directory: " + raw_dir.string());

        SummaryStats stats;
        for (const auto &entry : std::filesystem::directory_iterator(dir))
        {
            if (!entry.is_regular_file() || entry.path().extension() != ".csv")
                continue;
            const std::string metric = entry.path().stem().string();
            const std::string text = read_text_file(entry.path());
            auto &samples = stats.metrics[metric];

            std::size_t pos = 0, line_no = 0;
            while (pos < text.size())
            {
                auto nl = text.find('\n', pos);
                if (nl == std::string::npos)
                    nl = text.size();
                std::string_view line(text.data() + pos, nl - pos);
                pos = nl + 1;
                ++line_no;
                if (!line.empty() && line.back() == '\r')
                    line.remove_suffix(1);
                if (line.empty())
                    continue;
                if (line_no == 1)
                {
                    if (line != "device_id,trial,value")
                        throw Error(ErrorCode::parse, entry.path().string() + ": expected header 'device_id,trial,value'");
                    continue;
                }

                Sample s;
                const char *p = line.data();
                const char *end = line.data() + line.size();
                auto r1 = std::from_chars(p, end, s.device_id);
                auto r2 = r1.ec == std::errc() && r1.ptr < end && *r1.ptr == ',' ? std::from_chars(r1.ptr + 1, end, s.trial) : std::from_chars_result{r1.ptr, std::errc::invalid_argument};
                auto r3 = r2.ec == std::errc() && r2.ptr < end && *r2.ptr == ',' ? std::from_chars(r2.ptr + 1, end, s.value) : std::from_chars_result{r2.ptr, std::errc::invalid_argument};
                if (r3.ec != std::errc() || r3.ptr != end)
                    throw Error(ErrorCode::parse, entry.path().string() + ": line " + std::to_string(line_no) + " is not 'device_id,trial,value'");
                samples.push_back(s);
            }
        }
        return stats;
    }
}
