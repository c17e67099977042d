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

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "fsalink/error.hpp"
#include "fsalink/localization.hpp"
#include "fsalink/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

// Covered tests:
// - Noiseless AoA from CSI: accuracy, monotonicity, edge flag, slope compensation
// - AoA from a 17-channel probe scan
// - Input checks (span, band, flat spectrum)
// - RTT distance: worked example, SIFS boundary, median, noiseless round trip,
//   quantization bound, Monte Carlo spread
// - Position fusion and its inverse
// - Trace CSV parsing

using namespace fsalink;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    CsiVector csi_at(double theta, double center_hz = 5.58e9)
    {
        SubcarrierGrid g;
        g.center_hz = center_hz;
        return synthesize_csi(LinkGeometry{6.0, theta, 0.0}, FsaModel{}, OmniModel{}, g, RadioParams{}, FadingModel{});
    }

    ErrorCode code_of(const std::function<void()> &fn)
    {
        try
        {
            fn();
        }
        catch (const Error &e)
        {
            return e.code();
        }
        return ErrorCode::io;
    }
}

TEST_CASE("Localization - noiseless AoA from CSI")
{
    const BeamCalibration cal;
    const SmoothingConfig cfg;
    const double step_deg = cfg.grid_step_hz() * cal.slope_deg_per_hz;
    CHECK_THAT(step_deg, WithinAbs(0.1e6 * 50.0 / 325e6, 1e-15));

    // angles whose beam frequency lies at least 10 MHz inside 5.50-5.66 GHz
    for (double theta = 7.0; theta <= 28.0; theta += 0.5)
    {
        const AoaEstimate e = aoa_from_csi(csi_at(theta), cal);
        REQUIRE(std::abs(e.angle_deg - theta) <= step_deg);
        REQUIRE_FALSE(e.out_of_coverage);
        REQUIRE_THAT(e.peak_frequency_hz, WithinAbs(frequency_for_angle(cal, theta), 0.1e6));
    }

    double prev = -1e9;
    for (double theta = 6.0; theta <= 29.0; theta += 0.25)
    {
        const double est = aoa_from_csi(csi_at(theta), cal).angle_deg;
        REQUIRE(est > prev);
        prev = est;
    }

    // a target just beyond the channel's beams peaks on the span edge
    for (double theta : {31.0, 35.0, 40.0})
        CHECK(aoa_from_csi(csi_at(theta), cal).out_of_coverage);
}

TEST_CASE("Localization - path-loss slope compensation")
{
    const BeamCalibration cal;
    SmoothingConfig raw;
    raw.compensate_path_loss_slope = false;
    // without it the 20 log10(f) tilt drags a wide beam's peak downwards
    const AoaEstimate tilted = aoa_from_csi(csi_at(18.0), cal, raw);
    CHECK(tilted.angle_deg < 18.0 - 0.05);
    CHECK(std::abs(aoa_from_csi(csi_at(18.0), cal).angle_deg - 18.0) < 0.016);
}

TEST_CASE("Localization - probe scan")
{
    const FsaModel fsa;
    // 20 MHz sampling of the beam leaves a few tenths of a degree of
    // interpolation error
    for (double theta = 8.0; theta <= 52.0; theta += 1.0)
    {
        RssiScan scan{RssiScan::default_channels(), {}};
        for (double f : scan.channel_hz)
            scan.rssi_dbm.push_back(15.0 + fsa_gain(fsa, f, theta) + 3.0 - oracle::fspl(9.0, f));
        const AoaEstimate e = aoa_from_probe_scan(scan, fsa.calibration);
        CHECK(std::abs(e.angle_deg - theta) < 0.4);
        CHECK_FALSE(e.out_of_coverage);
    }
    CHECK(RssiScan::default_channels().size() == 17);
    CHECK(RssiScan::default_channels().back() == 5.82e9);
    CHECK(code_of([] { RssiScan{{5.5e9, 5.52e9}, {-50, -49}}.validate(); }) == ErrorCode::domain);
}

TEST_CASE("Localization - AoA input checks")
{
    const BeamCalibration cal;
    CsiVector narrow = csi_at(20.0);
    narrow.grid.bandwidth_hz = 20e6;
    narrow.grid.center_hz = 5.6e9;
    narrow.power_dbm.resize(narrow.grid.count());
    CHECK(code_of([&] { aoa_from_csi(narrow, cal); }) == ErrorCode::domain);

    CsiVector out_of_band = csi_at(20.0);
    out_of_band.grid.center_hz = 5.9e9;
    CHECK(code_of([&] { aoa_from_csi(out_of_band, cal); }) == ErrorCode::band_range);

    CsiVector flat = csi_at(20.0);
    std::fill(flat.power_dbm.begin(), flat.power_dbm.end(), -60.0);
    CHECK(code_of([&] { aoa_from_csi(flat, cal); }) == ErrorCode::ambiguous_peak);

    SmoothingConfig bad;
    bad.window = 30;
    CHECK(code_of([&] { aoa_from_csi(csi_at(20.0), cal, bad); }) == ErrorCode::config);
}

TEST_CASE("Localization - RTT distance")
{
    CHECK_THAT(rtt_distance(RttSampleGroup{{16000.0 + 100.0692285594456}}), WithinRel(15.0, 1e-12));
    CHECK(rtt_distance(RttSampleGroup{{16000.0}}) == 0.0);
    CHECK(code_of([] { rtt_distance(RttSampleGroup{{15999.0}}); }) == ErrorCode::negative_distance);
    CHECK(code_of([] { rtt_distance(RttSampleGroup{}); }) == ErrorCode::domain);
    // the median ignores a wild outlier; even groups average the middle pair
    CHECK_THAT(rtt_distance(RttSampleGroup{{16010.0, 16020.0, 16030.0, 99999.0}}),
               WithinRel(oracle::c0 * 25e-9 / 2.0, 1e-12));

    RttTimingModel ideal{0.0, 0.0, 16, default_sifs_ns};
    for (double d : {0.5, 3.0, 15.0, 120.0})
    {
        const RttSampleGroup g = simulate_rtt_exchange(d, ideal, 1);
        CHECK(std::adjacent_find(g.intervals_ns.begin(), g.intervals_ns.end(), std::not_equal_to<>()) == g.intervals_ns.end());
        CHECK_THAT(rtt_distance(g), WithinRel(d, 1e-9));
    }

    RttTimingModel quantized{0.0, 1000.0 / 88.0, 10, default_sifs_ns};
    const double bound = oracle::c0 * (1000.0 / 88.0) * 1e-9 / 4.0;
    CHECK_THAT(bound, WithinAbs(0.8516, 1e-4));
    for (double d = 1.0; d <= 30.0; d += 0.173)
        REQUIRE(std::abs(rtt_distance(simulate_rtt_exchange(d, quantized, 3)) - d) <= bound + 1e-9);

    const RttTimingModel model;
    const RttSampleGroup a = simulate_rtt_exchange(10.0, model, 1), b = simulate_rtt_exchange(10.0, model, 2);
    CHECK(a.intervals_ns != b.intervals_ns);
    CHECK(a.intervals_ns == simulate_rtt_exchange(10.0, model, 1).intervals_ns);
    CHECK(a.intervals_ns.size() == 100);
    CHECK(std::abs(rtt_distance(a) - rtt_distance(b)) < 2.0);
    CHECK(code_of([&] { simulate_rtt_exchange(0.0, model, 1); }) == ErrorCode::domain);

    // 100 samples with 6 ns jitter at 10 m: the median lands within 0.9 m in >= 95 % of trials
    RttTimingModel jitter_only{6.0, 0.0, 100, default_sifs_ns};
    int within = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
        within += std::abs(rtt_distance(simulate_rtt_exchange(10.0, jitter_only, seed)) - 10.0) <= 0.9;
    CHECK(within >= 950);
}

TEST_CASE("Localization - position fusion")
{
    PositionEstimate p = fuse(0.0, 5.0);
    CHECK(p.x_m == 0.0);
    CHECK(p.y_m == 5.0);
    p = fuse(90.0, 3.0);
    CHECK_THAT(p.x_m, WithinAbs(3.0, 1e-15));
    CHECK_THAT(p.y_m, WithinAbs(0.0, 1e-15));
    p = fuse(23.6, 15.0);
    CHECK_THAT(p.x_m, WithinAbs(6.005235488353424, 1e-12));
    CHECK_THAT(p.y_m, WithinAbs(13.745440943433595, 1e-12));
    CHECK_THROWS_AS(fuse(10.0, 0.0), Error);

    oracle::Rng rng(53);
    for (int i = 0; i < 1000; ++i)
    {
        const double a = rng.uniform(-89.0, 89.0), d = rng.uniform(0.1, 100.0);
        const PositionEstimate e = fuse(a, d);
        const Polar back = polar_from_cartesian(e.x_m, e.y_m);
        REQUIRE_THAT(back.angle_deg, WithinRel(a, 1e-9));
        REQUIRE_THAT(back.distance_m, WithinRel(d, 1e-9));
    }
}

TEST_CASE("Localization - trace files")
{
    const CsiVector csi = csi_at(15.0);
    std::string text = "# exported trace\nsubcarrier_freq_hz,power_dbm\n";
    for (std::size_t k = 0; k < csi.power_dbm.size(); ++k)
    {
        char line[96];
        std::snprintf(line, sizeof line, "%.3f,%.17g\n", csi.grid.frequency(k), csi.power_dbm[k]);
        text += line;
    }
    const CsiVector back = parse_csi_csv(text);
    CHECK(back.grid.count() == csi.grid.count());
    CHECK_THAT(back.grid.center_hz, WithinAbs(csi.grid.center_hz, 1e-3));
    CHECK_THAT(back.grid.spacing_hz, WithinAbs(csi.grid.spacing_hz, 1e-6));
    CHECK(back.power_dbm == csi.power_dbm);
    CHECK_THAT(aoa_from_csi(back, BeamCalibration{}).angle_deg, WithinAbs(15.0, 0.016));

    CHECK(code_of([] { parse_csi_csv("freq,power\n1,2\n"); }) == ErrorCode::parse);
    CHECK(code_of([] { parse_csi_csv("subcarrier_freq_hz,power_dbm\n1,2\n2,x\n"); }) == ErrorCode::parse);
    CHECK(code_of([] { parse_csi_csv("subcarrier_freq_hz,power_dbm\n1,2\n2,2\n4,2\n"); }) == ErrorCode::validation);

    const RssiScan scan = parse_rssi_csv("channel_freq_hz,rssi_dbm\n5.5e9,-60\n5.52e9,-58\n5.54e9,-61\n");
    CHECK(scan.channel_hz.size() == 3);
    CHECK(scan.rssi_dbm[1] == -58.0);

    const RttSampleGroup g = parse_rtt_csv("interval_ns\n16100.5\n16101\n\n16099.5\n");
    CHECK(g.intervals_ns == std::vector<double>{16100.5, 16101.0, 16099.5});
    CHECK(code_of([] { parse_rtt_csv("interval_ns\n16100,3\n"); }) == ErrorCode::parse);
    CHECK(code_of([] { read_text_file("/nonexistent/trace.csv"); }) == ErrorCode::io);
}
