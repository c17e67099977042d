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

#include "fsalink/localization.hpp"

#include "fsalink/constants.hpp"
#include "fsalink/dsp.hpp"
#include "fsalink/error.hpp"
#include "fsalink/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace fsalink
{
    void SmoothingConfig::validate() const
    {
        if (!(points_per_mhz > 0.0) || !std::isfinite(points_per_mhz))
            throw Error(ErrorCode::config, "smoothing points_per_mhz must be > 0");
        if (window < 1 || window % 2 == 0)
            throw Error(ErrorCode::config, "smoothing window must be a positive odd integer");
        if (order < 1 || order >= window)
            throw Error(ErrorCode::config, "smoothing order must satisfy 1 <= order < window");
    }

    namespace
    {
        std::vector<double> dense_grid(double lo, double hi, double step)
        {
            const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step * (1.0 + 1e-12))) + 1;
            std::vector<double> grid(count);
            for (std::size_t i = 0; i < count; ++i)
                grid[i] = lo + static_cast<double>(i) * step;
            return grid;
        }

        std::vector<double> linear_interpolate(std::span<const double> xs, std::span<const double> ys, std::span<const double> q)
        {
            std::vector<double> out(q.size());
            std::size_t seg = 0;
            for (std::size_t i = 0; i < q.size(); ++i)
            {
                while (seg + 2 < xs.size() && q[i] > xs[seg + 1])
                    ++seg;
                const double t = (q[i] - xs[seg]) / (xs[seg + 1] - xs[seg]);
                out[i] = ys[seg] + t * (ys[seg + 1] - ys[seg]);
            }
            return out;
        }
    }

    AoaEstimate aoa_from_spectrum(std::span<const double> freq_hz, std::span<const double> power_dbm,
                                  const BeamCalibration &calibration, const SmoothingConfig &config)
    {
        config.validate();
        if (freq_hz.size() != power_dbm.size())
            throw Error(ErrorCode::shape, "frequency and power vectors differ in length");
        if (freq_hz.size() < 3)
            throw Error(ErrorCode::domain, "AoA estimation needs at least 3 samples");
        for (std::size_t i = 1; i < freq_hz.size(); ++i)
            if (!(freq_hz[i] > freq_hz[i - 1]))
                throw Error(ErrorCode::domain, "frequencies must be strictly increasing");
        if (!calibration.in_band(freq_hz.front()) || !calibration.in_band(freq_hz.back()))
            throw Error(ErrorCode::band_range, "spectrum [" + std::to_string(freq_hz.front()) + ", " +
                                                   std::to_string(freq_hz.back()) + "] Hz leaves the calibration band");
        const auto [lo, hi] = std::minmax_element(power_dbm.begin(), power_dbm.end());
        if (*lo == *hi)
            throw Error(ErrorCode::ambiguous_peak, "flat power profile; no unique peak");

        std::vector<double> power(power_dbm.begin(), power_dbm.end());
        if (config.compensate_path_loss_slope)
            for (std::size_t i = 0; i < power.size(); ++i)
                power[i] += 20.0 * std::log10(freq_hz[i] / freq_hz.front());

        const std::vector<double> grid = dense_grid(freq_hz.front(), freq_hz.back(), config.grid_step_hz());
        if (grid.size() < static_cast<std::size_t>(config.window))
            throw Error(ErrorCode::config, "smoothing window " + std::to_string(config.window) + " exceeds the " +
                                               std::to_string(grid.size()) + "-point dense grid");

        const std::vector<double> dense = power.size() >= 4 ? cubic_spline_interpolate(freq_hz, power, grid)
                                                            : linear_interpolate(freq_hz, power, grid);
        const std::vector<double> smooth = savitzky_golay(dense, config.window, config.order);
        const Peak peak = find_peak(grid, smooth);

        const double f_peak = std::clamp(peak.x, calibration.f_min_hz, calibration.f_max_hz);
        return AoaEstimate{beam_angle(calibration, f_peak), f_peak, peak.at_boundary};
    }

    AoaEstimate aoa_from_csi(const CsiVector &csi, const BeamCalibration &calibration, const SmoothingConfig &config)
    {
        csi.grid.validate();
        if (csi.power_dbm.size() != csi.grid.count())
            throw Error(ErrorCode::shape, "CSI length does not match its grid");
        if (csi.grid.bandwidth_hz < 40e6)
            throw Error(ErrorCode::domain, "CSI must span at least 40 MHz for AoA estimation");
        const std::vector<double> freqs = csi.grid.frequencies();
        return aoa_from_spectrum(freqs, csi.power_dbm, calibration, config);
    }

    std::vector<double> RssiScan::default_channels()
    {
        std::vector<double> ch(17);
        for (std::size_t i = 0; i < ch.size(); ++i)
            ch[i] = 5.500e9 + 20e6 * static_cast<double>(i);
        return ch;
    }

    void RssiScan::validate() const
    {
        if (channel_hz.size() != rssi_dbm.size())
            throw Error(ErrorCode::shape, "RSSI scan: channel and RSSI vectors differ in length");
        if (channel_hz.size() < 3)
            throw Error(ErrorCode::domain, "RSSI scan needs at least 3 channels");
        for (std::size_t i = 1; i < channel_hz.size(); ++i)
            if (!(channel_hz[i] > channel_hz[i - 1]))
                throw Error(ErrorCode::domain, "RSSI scan channels must be strictly increasing");
    }

    AoaEstimate aoa_from_probe_scan(const RssiScan &scan, const BeamCalibration &calibration, const SmoothingConfig &config)
    {
        scan.validate();
        return aoa_from_spectrum(scan.channel_hz, scan.rssi_dbm, calibration, config);
    }

    // ---- ranging --------------------------------------------------------

    double rtt_distance(const RttSampleGroup &group)
    {
        if (group.intervals_ns.empty())
            throw Error(ErrorCode::domain, "RTT sample group is empty");
        std::vector<double> v = group.intervals_ns;
        const std::size_t mid = v.size() / 2;
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
        double median = v[mid];
        if (v.size() % 2 == 0)
            median = 0.5 * (median + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));

        const double flight_ns = median - group.sifs_ns;
        if (flight_ns < 0.0)
            throw Error(ErrorCode::negative_distance, "median interval " + std::to_string(median) + " ns is below SIFS " +
                                                          std::to_string(group.sifs_ns) + " ns");
        return speed_of_light * flight_ns * 1e-9 / 2.0;
    }

    void RttTimingModel::validate() const
    {
        if (!(jitter_sigma_ns >= 0.0) || !(clock_resolution_ns >= 0.0) || !(sifs_ns >= 0.0))
            throw Error(ErrorCode::config, "RTT jitter, resolution and SIFS must be >= 0");
        if (group_size == 0)
            throw Error(ErrorCode::config, "RTT group_size must be >= 1");
    }

    RttSampleGroup simulate_rtt_exchange(double distance_m, const RttTimingModel &model, std::uint64_t seed)
    {
        if (!(distance_m > 0.0))
            throw Error(ErrorCode::domain, "RTT distance must be > 0");
        model.validate();

        const double flight_ns = 2.0 * distance_m / speed_of_light * 1e9;
        const std::uint64_t key = rng::derive_key(seed, {static_cast<std::uint64_t>(rng::Stream::rtt_jitter)});
        RttSampleGroup group{std::vector<double>(model.group_size), model.sifs_ns};
        for (std::size_t i = 0; i < model.group_size; ++i)
        {
            double t = model.sifs_ns + flight_ns;
            if (model.jitter_sigma_ns > 0.0)
                t += model.jitter_sigma_ns * rng::normal(key, i);
            if (model.clock_resolution_ns > 0.0)
                t = model.clock_resolution_ns * std::round(t / model.clock_resolution_ns);
            group.intervals_ns[i] = t;
        }
        return group;
    }

    // ---- fusion ---------------------------------------------------------

    PositionEstimate fuse(double aoa_deg, double distance_m)
    {
        if (!(distance_m > 0.0))
            throw Error(ErrorCode::domain, "fuse: distance must be > 0");
        const double a = deg_to_rad(aoa_deg);
        return PositionEstimate{aoa_deg, distance_m, distance_m * std::sin(a), distance_m * std::cos(a)};
    }

    Polar polar_from_cartesian(double x_m, double y_m)
    {
        return Polar{rad_to_deg(std::atan2(x_m, y_m)), std::hypot(x_m, y_m)};
    }

    // ---- trace files ----------------------------------------------------

    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        }

        double parse_number(std::string_view field, std::size_t line)
        {
            field = trim(field);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
                throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": invalid number '" + std::string(field) + "'");
            return v;
        }

        // Rows of numeric columns under a fixed header.
        std::vector<std::vector<double>> parse_table(std::string_view text, std::string_view header, std::size_t columns)
        {
            std::vector<std::vector<double>> rows;
            bool header_seen = false;
            std::size_t line_no = 0, pos = 0;
            while (pos <= text.size())
            {
                const auto nl = text.find('\n', pos);
                const std::string_view line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
                pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
                ++line_no;
                if (line.empty() || line.front() == '#')
                    continue;
                if (!header_seen)
                {
                    if (line != header)
                        throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected header '" + std::string(header) + "'");
                    header_seen = true;
                    continue;
                }
                std::vector<double> row;
                std::size_t start = 0;
                for (;;)
                {
                    const auto comma = line.find(',', start);
                    row.push_back(parse_number(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start), line_no));
                    if (comma == std::string_view::npos)
                        break;
                    start = comma + 1;
                }
                if (row.size() != columns)
                    throw Error(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields");
                rows.push_back(std::move(row));
            }
            if (!header_seen)
                throw Error(ErrorCode::parse, "missing header '" + std::string(header) + "'");
            return rows;
        }
    }

    CsiVector parse_csi_csv(std::string_view text)
    {
        const auto rows = parse_table(text, "subcarrier_freq_hz,power_dbm", 2);
        if (rows.size() < 2)
            throw Error(ErrorCode::validation, "CSI trace needs at least 2 subcarriers");
        const std::size_t n = rows.size();
        const double spacing = (rows.back()[0] - rows.front()[0]) / static_cast<double>(n - 1);
        if (!(spacing > 0.0))
            throw Error(ErrorCode::validation, "CSI subcarrier frequencies must increase");
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs((rows[i][0] - rows[i - 1][0]) - spacing) > 1e-6 * spacing)
                throw Error(ErrorCode::validation, "CSI subcarriers must be uniformly spaced (row " + std::to_string(i + 1) + ")");

        CsiVector csi;
        csi.grid.spacing_hz = spacing;
        csi.grid.bandwidth_hz = spacing * static_cast<double>(n);
        csi.grid.center_hz = 0.5 * (rows.front()[0] + rows.back()[0]);
        csi.power_dbm.reserve(n);
        for (const auto &r : rows)
            csi.power_dbm.push_back(r[1]);
        return csi;
    }

    RssiScan parse_rssi_csv(std::string_view text)
    {
        RssiScan scan;
        for (const auto &r : parse_table(text, "channel_freq_hz,rssi_dbm", 2))
        {
            scan.channel_hz.push_back(r[0]);
            scan.rssi_dbm.push_back(r[1]);
        }
        scan.validate();
        return scan;
    }

    RttSampleGroup parse_rtt_csv(std::string_view text)
    {
        RttSampleGroup group;
        for (const auto &r : parse_table(text, "interval_ns", 1))
            group.intervals_ns.push_back(r[0]);
        return group;
    }

    std::string read_text_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error(ErrorCode::io, "cannot open " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}
