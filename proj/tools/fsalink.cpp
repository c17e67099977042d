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

#include "fsalink/antenna.hpp"
#include "fsalink/error.hpp"
#include "fsalink/experiment.hpp"
#include "fsalink/localization.hpp"
#include "fsalink/report.hpp"
#include "fsalink/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace fsalink;

namespace
{
    // error: code=<code> message="<text>"   (quotes and backslashes escaped)
    int fail(std::string_view code, std::string_view message, int status)
    {
        std::string escaped;
        for (char c : message)
        {
            if (c == '"' || c == '\\')
                escaped += '\\';
            escaped += c == '\n' ? ' ' : c;
        }
        std::cerr << "error: code=" << code << " message=\"" << escaped << "\"\n";
        return status;
    }

    std::pair<double, double> split_pair(const std::string &text, const char *what)
    {
        const auto colon = text.find(':');
        try
        {
            if (colon == std::string::npos)
                throw std::invalid_argument(text);
            std::size_t used1 = 0, used2 = 0;
            const double a = std::stod(text.substr(0, colon), &used1);
            const double b = std::stod(text.substr(colon + 1), &used2);
            if (used1 != colon || used2 != text.size() - colon - 1)
                throw std::invalid_argument(text);
            return {a, b};
        }
        catch (const std::logic_error &)
        {
            throw Error(ErrorCode::parse, std::string(what) + " expects A:B, got '" + text + "'");
        }
    }

    bool is_probe_scan(std::string_view text)
    {
        std::size_t pos = 0;
        while (pos < text.size())
        {
            auto nl = text.find('\n', pos);
            std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() : nl + 1;
            while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
                line.remove_prefix(1);
            if (line.empty() || line.front() == '#' || line.front() == '\r')
                continue;
            return line.rfind("channel_freq_hz", 0) == 0;
        }
        return false;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Frequency-scanning antenna link and localization simulator"};
    app.require_subcommand(1);

    // simulate
    std::string scenario_path, out_dir = "fsalink-out";
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    auto *simulate = app.add_subcommand("simulate", "Run the evaluations of a scenario file and write a report");
    simulate->add_option("scenario", scenario_path, "Scenario JSON")->required();
    simulate->add_option("--out", out_dir, "Report directory")->capture_default_str();
    simulate->add_option("--seed", seed, "Override the scenario's master seed");
    simulate->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();

    // aoa
    std::string trace_path, calibration_path;
    SmoothingConfig smoothing;
    bool no_slope = false;
    auto *aoa = app.add_subcommand("aoa", "Estimate the angle of arrival from a CSI trace or probe RSSI scan");
    aoa->add_option("trace", trace_path, "CSV: subcarrier_freq_hz,power_dbm or channel_freq_hz,rssi_dbm")->required();
    aoa->add_option("--calibration", calibration_path, "Calibration JSON (see 'calibrate')");
    aoa->add_option("--points-per-mhz", smoothing.points_per_mhz, "Dense grid density")->capture_default_str();
    aoa->add_option("--window", smoothing.window, "Savitzky-Golay window, dense-grid samples")->capture_default_str();
    aoa->add_option("--order", smoothing.order, "Savitzky-Golay order")->capture_default_str();
    aoa->add_flag("--no-slope-compensation", no_slope, "Do not remove the path-loss slope before the peak search");

    // range
    std::string rtt_path;
    double sifs_ns = default_sifs_ns;
    auto *range = app.add_subcommand("range", "Distance from a group of DATA->ACK intervals");
    range->add_option("rtt", rtt_path, "CSV with an interval_ns column")->required();
    range->add_option("--sifs-ns", sifs_ns, "SIFS in ns")->capture_default_str();

    // calibrate
    std::string anchor, band;
    double slope = 0.0;
    auto *calibrate = app.add_subcommand("calibrate", "Build a calibration file from one anchor and the scan rate");
    calibrate->add_option("--anchor", anchor, "F_HZ:THETA_DEG, one measured frequency/angle pair")->required();
    calibrate->add_option("--span", slope, "Scan rate in degrees per Hz")->required();
    calibrate->add_option("--band", band, "F_MIN_HZ:F_MAX_HZ (default 5.5e9:5.825e9)");

    // report
    std::string raw_dir;
    bool as_csv = false;
    auto *report = app.add_subcommand("report", "Summarise raw per-sample CSVs");
    report->add_option("raw-dir", raw_dir, "Directory of <metric>.csv files (or a report directory)")->required();
    report->add_flag("--csv", as_csv, "Print summary CSV instead of the text table");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return fail("usage", e.what(), 2);
    }

    try
    {
        if (*simulate)
        {
            Scenario s = load_scenario(scenario_path);
            if (seed)
                s.seed = *seed;
            const SummaryStats stats = run_scenario(s, RunOptions{threads});
            emit_report(stats, out_dir);
            std::cout << summary_text(stats);
        }
        else if (*aoa)
        {
            const BeamCalibration cal = calibration_path.empty() ? BeamCalibration{} : parse_calibration(read_text_file(calibration_path));
            cal.validate();
            smoothing.compensate_path_loss_slope = !no_slope;
            const std::string text = read_text_file(trace_path);
            const AoaEstimate e = is_probe_scan(text) ? aoa_from_probe_scan(parse_rssi_csv(text), cal, smoothing)
                                                      : aoa_from_csi(parse_csi_csv(text), cal, smoothing);
            std::cout << "angle_deg=" << format_number(e.angle_deg) << "\n"
                      << "peak_frequency_hz=" << format_number(e.peak_frequency_hz) << "\n"
                      << "out_of_coverage=" << (e.out_of_coverage ? "true" : "false") << "\n";
        }
        else if (*range)
        {
            RttSampleGroup group = parse_rtt_csv(read_text_file(rtt_path));
            group.sifs_ns = sifs_ns;
            const double d = rtt_distance(group);
            std::cout << "distance_m=" << format_number(d) << "\n"
                      << "samples=" << group.intervals_ns.size() << "\n";
        }
        else if (*calibrate)
        {
            BeamCalibration cal;
            std::tie(cal.f_ref_hz, cal.theta_ref_deg) = split_pair(anchor, "--anchor");
            cal.slope_deg_per_hz = slope;
            if (!band.empty())
                std::tie(cal.f_min_hz, cal.f_max_hz) = split_pair(band, "--band");
            cal.validate();
            std::cout << calibration_to_json(cal);
        }
        else if (*report)
        {
            const SummaryStats stats = load_raw(raw_dir);
            std::cout << (as_csv ? summary_csv(stats) : summary_text(stats));
        }
    }
    catch (const Error &e)
    {
        return fail(to_string(e.code()), e.what(), 1);
    }
    catch (const std::exception &e)
    {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
