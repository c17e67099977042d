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
#include "fsalink/experiment.hpp"
#include "fsalink/report.hpp"
#include "fsalink/scenario.hpp"
#include "fsalink/stats.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

// Covered tests:
// - Angle conventions and link geometry
// - Strict scenario parsing: defaults, unknown keys, syntax errors, field validation
// - Shipped scenario files load
// - Comm evaluation: boresight gain arithmetic, omni control, coverage bucket
// - Localization evaluation: noiseless identities
// - Determinism across thread counts and device order
// - Percentiles, summaries and report files

using namespace fsalink;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace fs = std::filesystem;

namespace
{
    const fs::path source_dir = FSALINK_SOURCE_DIR;

    ErrorCode code_of(const std::function<void()> &fn, std::string *message = nullptr)
    {
        try
        {
            fn();
        }
        catch (const Error &e)
        {
            if (message)
                *message = e.what();
            return e.code();
        }
        return ErrorCode::io;
    }

    Vec2 at(double angle_deg, double distance_m)
    {
        const double a = angle_deg * oracle::pi / 180.0;
        return {distance_m * std::sin(a), distance_m * std::cos(a)};
    }

    fs::path temp_dir(const std::string &name)
    {
        const fs::path p = fs::temp_directory_path() / ("fsalink_test_" + name);
        fs::remove_all(p);
        return p;
    }
}

TEST_CASE("Harness - angles and geometry")
{
    CHECK(wrap_deg(180.0) == -180.0);
    CHECK(wrap_deg(-180.0) == -180.0);
    CHECK(wrap_deg(190.0) == -170.0);
    CHECK(wrap_deg(-540.0) == -180.0);
    CHECK(wrap_deg(719.0) == -1.0);
    CHECK_THAT(bearing_deg({1.0, 1.0}), WithinAbs(45.0, 1e-12));
    CHECK_THAT(bearing_deg({-1.0, 0.0}), WithinAbs(-90.0, 1e-12));

    Scenario s;
    s.ap.orientation_deg = 10.0;
    Device d;
    d.position_m = {3.0, 4.0};
    d.orientation_deg = 200.0;
    const LinkGeometry g = s.geometry(d);
    CHECK_THAT(g.distance_m, WithinAbs(5.0, 1e-12));
    CHECK_THAT(g.azimuth_at_a_deg, WithinAbs(36.86989764584402 - 10.0, 1e-9));
    CHECK_THAT(g.azimuth_at_b_deg, WithinAbs(wrap_deg(36.86989764584402 + 180.0 - 200.0), 1e-9));
}

TEST_CASE("Harness - scenario parsing")
{
    const Scenario s = parse_scenario(R"({"ap": {"position_m": [0, 0]}, "devices": [{"id": 4, "position_m": [1, 5]}]})");
    REQUIRE(s.devices.size() == 1);
    CHECK(s.devices[0].id == 4);
    CHECK(s.devices[0].antenna == AntennaKind::omni);
    CHECK(s.ap.antenna == AntennaKind::fsa);
    CHECK(s.trials == 1);
    CHECK(s.ru_widths_hz == std::vector<double>{5e6, 10e6, 20e6});
    CHECK(s.channel == SubcarrierGrid{});
    CHECK(s.localization.csi_snr_db == 20.0);

    std::string msg;
    CHECK(code_of([] { parse_scenario(R"({"ap": {}, "devices": []})"); }, &msg) == ErrorCode::validation);
    CHECK(msg.find("devices") != std::string::npos);

    CHECK(code_of([] { parse_scenario(R"({"ap": {}, "devices": [{"position_m": [1, 1]}], "foo": 1})"); }, &msg) == ErrorCode::parse);
    CHECK(msg.find("'foo'") != std::string::npos);
    CHECK(code_of([] { parse_scenario(R"({"ap": {"radio": {"power": 1}}, "devices": [{"position_m": [1, 1]}]})"); }, &msg) == ErrorCode::parse);
    CHECK(msg.find("ap.radio") != std::string::npos);

    CHECK(code_of([] { parse_scenario("{\n  \"ap\": {},\n  \"devices\": [ }\n"); }, &msg) == ErrorCode::parse);
    CHECK(msg.rfind("line 3", 0) == 0);

    auto field_of = [&](const char *json) {
        std::string m;
        CHECK(code_of([&] { parse_scenario(json); }, &m) == ErrorCode::validation);
        return m.substr(0, m.find(':'));
    };
    CHECK(field_of(R"({"ap": {}, "devices": [{"position_m": [1, 1]}], "trials": 0})") == "$.trials");
    CHECK(field_of(R"({"ap": {}, "devices": [{"position_m": "here"}]})") == "$.devices[0].position_m");
    CHECK(field_of(R"({"ap": {"antenna": "yagi"}, "devices": [{"position_m": [1, 1]}]})") == "$.ap.antenna");
    CHECK(field_of(R"({"ap": {}, "devices": [{"id": 1, "position_m": [1, 1]}, {"id": 1, "position_m": [2, 2]}]})") == "$.devices[1].id");
    CHECK(field_of(R"({"ap": {}, "devices": [{"position_m": [0, 0]}]})") == "$.devices[0].position_m");
    CHECK(field_of(R"({"ap": {}, "devices": [{"position_m": [0, -3]}]})") == "$.devices[0].position_m");
    CHECK(field_of(R"({"ap": {}, "devices": [{"position_m": [1, 1]}], "ru_widths_hz": [30e6]})") == "$.ru_widths_hz[0]");
    CHECK(field_of(R"({"ap": {}, "devices": [{"position_m": [1, 1]}], "ru_widths_hz": [40e6]})") == "$.ru_widths_hz[0]");
    CHECK(field_of(R"({"ap": {"antenna": "omni"}, "devices": [{"position_m": [1, 1]}], "evaluation": "both"})") == "$.ap.antenna");
    CHECK(field_of(R"({"ap": {}, "devices": [{"position_m": [1, 1]}], "channel": {"center_hz": 5.2e9}})") == "$.channel");
    CHECK(field_of(R"({"ap": {}, "devices": [{"position_m": [1, 1]}], "localization": {"smoothing": {"window": 4}}})") == "$.localization.smoothing");

    const Scenario with_table = parse_scenario(
        R"({"ap": {}, "devices": [{"position_m": [1, 1]}], "mcs_table": "data/mcs_11ax.csv", "localization": {"csi_snr_db": null}})", source_dir);
    CHECK(with_table.mcs_table.has_value());
    CHECK(with_table.mcs().size() == 12);
    CHECK_FALSE(with_table.localization.csi_snr_db.has_value());
    CHECK(code_of([] { load_scenario("/nonexistent/scenario.json"); }) == ErrorCode::io);

    for (const auto &entry : fs::directory_iterator(source_dir / "scenarios"))
        CHECK_NOTHROW(load_scenario(entry.path()));
}

TEST_CASE("Harness - calibration files")
{
    BeamCalibration cal;
    cal.theta_ref_deg = 20.0;
    cal.f_ref_hz = 5.7e9;
    const BeamCalibration back = parse_calibration(calibration_to_json(cal));
    CHECK(back.theta_ref_deg == 20.0);
    CHECK(back.f_ref_hz == 5.7e9);
    CHECK(back.slope_deg_per_hz == cal.slope_deg_per_hz);
    CHECK(code_of([] { parse_calibration(R"({"slope": 1})"); }) == ErrorCode::parse);
    CHECK(code_of([] { parse_calibration(R"({"slope_deg_per_hz": 0})"); }) == ErrorCode::validation);
}

TEST_CASE("Harness - percentiles and summaries")
{
    CHECK(percentile(std::vector<double>{1, 2, 3, 4}, 50.0) == 2.5);
    CHECK(percentile(std::vector<double>{5}, 37.0) == 5.0);
    CHECK_THAT(percentile(std::vector<double>{1, 2, 3, 4, 5}, 90.0), WithinAbs(4.6, 1e-12));
    CHECK(percentile(std::vector<double>{3, 1, 2}, 0.0) == 1.0);
    CHECK(percentile(std::vector<double>{3, 1, 2}, 100.0) == 3.0);
    CHECK_THROWS_AS(percentile(std::vector<double>{}, 50.0), Error);
    CHECK_THROWS_AS(percentile(std::vector<double>{1.0}, 101.0), Error);

    oracle::Rng rng(59);
    for (int t = 0; t < 100; ++t)
    {
        std::vector<Sample> v(1 + rng.index(50));
        for (Sample &s : v)
            s.value = rng.uniform(-10.0, 10.0);
        const MetricSummary m = summarize(v);
        REQUIRE(m.p10 <= m.p50);
        REQUIRE(m.p50 <= m.p90);
    }
    CHECK(summarize(std::vector<Sample>{}).n == 0);
}

TEST_CASE("Harness - comm evaluation")
{
    // devices on the beam axis at the centre of each 20 MHz RU
    Scenario s;
    s.ru_widths_hz = {20e6};
    for (std::uint32_t i = 0; i < 8; ++i)
    {
        const double f = 5.51e9 + 20e6 * i;
        Device d;
        d.id = i;
        d.position_m = at(beam_angle(s.fsa.calibration, f), 7.0);
        s.devices.push_back(d);
    }
    const SummaryStats st = run_comm_eval(s);
    const auto delta = st.values("delta_snr_db.ru20mhz");
    REQUIRE(delta.size() == 8);
    // peak FSA gain minus omni gain, less the RU-averaging and path-loss tilt
    for (double v : delta)
    {
        CHECK(v <= s.fsa.peak_gain_dbi() - 3.0 + 1e-9);
        CHECK(v >= s.fsa.peak_gain_dbi() - 3.0 - 0.5);
    }
    CHECK(st.metrics.at("coverage_limited.delta_snr_db.ru20mhz").empty());
    const auto range = st.values("range_improvement_pct.ru20mhz");
    for (std::size_t i = 0; i < range.size(); ++i)
        CHECK_THAT(range[i], WithinAbs(100.0 * (std::pow(10.0, delta[i] / 20.0) - 1.0), 1e-9));

    // a device beyond the channel's beams goes to the separate bucket
    Device far;
    far.id = 99;
    far.position_m = at(50.0, 7.0);
    s.devices.push_back(far);
    const SummaryStats st2 = run_comm_eval(s);
    CHECK(st2.metrics.at("coverage_limited.delta_snr_db.ru20mhz").size() == 1);
    CHECK(st2.metrics.at("coverage_limited.delta_snr_db.ru20mhz")[0].device_id == 99);
    CHECK(st2.values("delta_snr_db.ru20mhz") == delta);

    s.evaluation = Evaluation::localization;
    CHECK_THROWS_AS(run_comm_eval(s), Error);
}

TEST_CASE("Harness - omni control yields zero gain")
{
    Scenario s = load_scenario(source_dir / "scenarios" / "omni_control.json");
    s.fading = FadingKind::rician;
    const SummaryStats st = run_comm_eval(s);
    std::size_t n = 0;
    for (const auto &[name, samples] : st.metrics)
        if (name.rfind("delta_snr_db", 0) == 0 || name.rfind("rate_improvement_pct", 0) == 0 || name.rfind("range_improvement_pct", 0) == 0)
            for (const Sample &x : samples)
            {
                CHECK(x.value == 0.0);
                ++n;
            }
    CHECK(n == 6 * 5 * 3 * 3);
}

TEST_CASE("Harness - localization evaluation, noiseless")
{
    Scenario s;
    s.evaluation = Evaluation::localization;
    s.localization.csi_snr_db.reset();
    s.localization.rtt.jitter_sigma_ns = 0.0;
    s.localization.rtt.clock_resolution_ns = 0.0;
    s.trials = 2;
    for (std::uint32_t i = 0; i < 10; ++i)
    {
        Device d;
        d.id = i;
        d.position_m = at(8.0 + 2.0 * i, 3.0 + 1.7 * i);
        s.devices.push_back(d);
    }
    const SummaryStats st = run_localization_eval(s);
    const double step = s.localization.smoothing.grid_step_hz() * s.fsa.calibration.slope_deg_per_hz;
    REQUIRE(st.values("aoa_error_deg").size() == 20);
    for (double e : st.values("aoa_error_deg"))
        CHECK(e <= step);
    for (const Sample &x : st.metrics.at("distance_error_m"))
        CHECK(x.value <= 1e-9 * (3.0 + 1.7 * x.device_id));

    s.localization.method = AoaMethod::probe;
    for (double e : run_localization_eval(s).values("aoa_error_deg"))
        CHECK(e < 0.4);
}

TEST_CASE("Harness - determinism")
{
    Scenario s = load_scenario(source_dir / "scenarios" / "office_fsa.json");
    s.trials = 3;
    const SummaryStats one = run_scenario(s, RunOptions{1});
    const SummaryStats four = run_scenario(s, RunOptions{4});
    CHECK(one == four);

    // device order in the file does not matter
    Scenario reversed = s;
    std::reverse(reversed.devices.begin(), reversed.devices.end());
    CHECK(run_scenario(reversed, RunOptions{2}) == one);

    Scenario reseeded = s;
    reseeded.seed += 1;
    CHECK_FALSE(run_scenario(reseeded) == one);
}

TEST_CASE("Harness - report files")
{
    SummaryStats st;
    st.add("b_metric", Sample{1, 0, 0.1});
    st.add("b_metric", Sample{2, 0, -3.25});
    st.add("a_metric", Sample{7, 4, 1e-7});
    st.declare("empty_metric");

    CHECK(summary_csv(st) ==
          "metric,n,mean,p10,p50,p90\n"
          "a_metric,1,1e-07,1e-07,1e-07,1e-07\n"
          "b_metric,2,-1.575,-2.915,-1.575,-0.23499999999999988\n"
          "empty_metric,0,NA,NA,NA,NA\n");
    CHECK(raw_csv(st.metrics.at("b_metric")) == "device_id,trial,value\n1,0,0.1\n2,0,-3.25\n");
    CHECK(summary_text(st).find("n=0") != std::string::npos);

    const fs::path a = temp_dir("report_a"), b = temp_dir("report_b");
    emit_report(st, a);
    emit_report(st, b);
    for (const char *f : {"summary.csv", "summary.txt", "raw/a_metric.csv", "raw/b_metric.csv", "raw/empty_metric.csv"})
    {
        REQUIRE(fs::exists(a / f));
        std::ifstream fa(a / f, std::ios::binary), fb(b / f, std::ios::binary);
        const std::string ca((std::istreambuf_iterator<char>(fa)), {}), cb((std::istreambuf_iterator<char>(fb)), {});
        CHECK(ca == cb);
    }
    CHECK(load_raw(a) == st);
    CHECK(load_raw(a / "raw") == st);

    CHECK(code_of([&] { emit_report(st, "/dev/null/report"); }) == ErrorCode::io);
    CHECK(code_of([] { load_raw("/nonexistent/raw"); }) == ErrorCode::io);
    fs::remove_all(a);
    fs::remove_all(b);
}
