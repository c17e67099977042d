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

#include "fsalink/antenna.hpp"
#include "fsalink/error.hpp"

#include <cmath>
#include <vector>

// Covered tests:
// - Beam/frequency map: anchor, linearity, exact inverse, band and coverage errors
// - FSA gain against the Dirichlet-kernel oracle over random (f, theta)
// - Peak gain, single-element degenerate case, stage losses
// - Main-lobe width against closed-form null positions
// - Ideal multi-beam and omni patterns

using namespace fsalink;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    template <class F>
    ErrorCode code_of(F &&fn)
    {
        try
        {
            fn();
        }
        catch (const Error &e)
        {
            return e.code();
        }
        FAIL("expected fsalink::Error");
        return ErrorCode::io;
    }
}

TEST_CASE("Antenna - beam angle map")
{
    const BeamCalibration cal;
    CHECK(beam_angle(cal, 5.620e9) == 23.6);
    CHECK_THAT(beam_angle(cal, 5.825e9) - beam_angle(cal, 5.500e9), WithinAbs(50.0, 1e-12));
    CHECK_THAT(cal.min_angle_deg(), WithinAbs(oracle::beam_angle(5.5e9, 5.62e9, 23.6, 50.0 / 325e6), 1e-12));
    CHECK_THAT(cal.max_angle_deg(), WithinAbs(oracle::beam_angle(5.825e9, 5.62e9, 23.6, 50.0 / 325e6), 1e-12));

    // second differences vanish on a uniform grid
    double worst = 0.0;
    for (int i = 1; i < 1000; ++i)
    {
        const double f0 = 5.5e9 + 325e6 * (i - 1) / 1000.0, f1 = 5.5e9 + 325e6 * i / 1000.0, f2 = 5.5e9 + 325e6 * (i + 1) / 1000.0;
        worst = std::max(worst, std::abs(beam_angle(cal, f2) - 2.0 * beam_angle(cal, f1) + beam_angle(cal, f0)));
    }
    CHECK(worst < 1e-11);

    for (double theta = cal.min_angle_deg(); theta <= cal.max_angle_deg(); theta += 0.37)
        CHECK_THAT(beam_angle(cal, frequency_for_angle(cal, theta)), WithinAbs(theta, 1e-9));
    CHECK(frequency_for_angle(cal, cal.min_angle_deg()) >= cal.f_min_hz);
    CHECK(frequency_for_angle(cal, cal.max_angle_deg()) <= cal.f_max_hz);

    CHECK(code_of([&] { beam_angle(cal, 5.4e9); }) == ErrorCode::band_range);
    CHECK(code_of([&] { beam_angle(cal, 5.826e9); }) == ErrorCode::band_range);
    CHECK(code_of([&] { frequency_for_angle(cal, 70.0); }) == ErrorCode::coverage);
    CHECK(code_of([&] { frequency_for_angle(cal, 0.0); }) == ErrorCode::coverage);

    BeamCalibration bad;
    bad.slope_deg_per_hz = 0.0;
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::config);
    bad = {};
    bad.f_ref_hz = 6e9;
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::config);

    // negative scan direction
    BeamCalibration neg = cal;
    neg.slope_deg_per_hz = -cal.slope_deg_per_hz;
    CHECK(neg.min_angle_deg() < neg.max_angle_deg());
    CHECK_THAT(frequency_for_angle(neg, 20.0), WithinRel(cal.f_ref_hz + (20.0 - 23.6) / neg.slope_deg_per_hz, 1e-14));
}

TEST_CASE("Antenna - FSA gain against the array-factor oracle")
{
    const FsaModel m;
    const double d = 299792458.0 / (2.0 * 5.6625e9);
    CHECK_THAT(m.spacing_m(), WithinRel(d, 1e-15));

    oracle::Rng rng(3);
    for (int i = 0; i < 4000; ++i)
    {
        const double f = rng.uniform(5.5e9, 5.825e9);
        const double theta = rng.uniform(-90.0, 90.0);
        const double tb = oracle::beam_angle(f, 5.62e9, 23.6, 50.0 / 325e6);
        const double ref = oracle::fsa_gain(f, theta, tb, 8, d, 7.5, 0.5);
        if (ref < -60.0)
            continue; // deep nulls: both sides are dominated by rounding
        REQUIRE_THAT(fsa_gain(m, f, theta), WithinAbs(ref, 1e-8));
    }

    // frozen: 7.5 + 10 log10(8) - 7 * 0.5
    constexpr double peak = 13.030899869919435;
    CHECK_THAT(m.peak_gain_dbi(), WithinAbs(peak, 1e-12));
    for (int c = 0; c < 17; ++c)
    {
        const double f = 5.5e9 + 20e6 * c;
        CHECK_THAT(fsa_gain(m, f, beam_angle(m.calibration, f)), WithinAbs(peak, 1e-9));
    }
    // the beam is a maximum in angle
    const double f = 5.7e9, tb = beam_angle(m.calibration, f);
    CHECK(fsa_gain(m, f, tb) > fsa_gain(m, f, tb + 0.5));
    CHECK(fsa_gain(m, f, tb) > fsa_gain(m, f, tb - 0.5));

    CHECK_THROWS_AS(fsa_gain(m, 5.6e9, 90.5), Error);
    CHECK_THROWS_AS(fsa_gain(m, 5.9e9, 10.0), Error);
}

TEST_CASE("Antenna - batched forms equal pointwise evaluation")
{
    const FsaModel m;
    std::vector<double> th, f;
    for (int i = 0; i <= 180; ++i)
        th.push_back(-90.0 + i);
    for (int i = 0; i < 101; ++i)
        f.push_back(5.5e9 + 3.25e6 * i);
    std::vector<double> ga(th.size()), gf(f.size());
    fsa_gain_over_angle(m, 5.6e9, th, ga);
    fsa_gain_over_frequency(m, f, 17.0, gf);
    for (std::size_t i = 0; i < th.size(); ++i)
        CHECK_THAT(ga[i], WithinAbs(fsa_gain(m, 5.6e9, th[i]), 1e-9));
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK_THAT(gf[i], WithinAbs(fsa_gain(m, f[i], 17.0), 1e-9));

    std::vector<double> wrong(3);
    CHECK_THROWS_AS(fsa_gain_over_angle(m, 5.6e9, th, wrong), Error);
}

TEST_CASE("Antenna - degenerate and lossy arrays")
{
    FsaModel one;
    one.element_count = 1;
    for (double t : {-80.0, 0.0, 45.0})
        CHECK_THAT(fsa_gain(one, 5.6e9, t), WithinAbs(7.5, 1e-12));

    FsaModel lossy;
    lossy.per_stage_loss_db = 1.0;
    CHECK_THAT(lossy.total_stage_loss_db(), WithinAbs(7.0, 0.0));
    CHECK_THAT(FsaModel{}.peak_gain_dbi() - lossy.peak_gain_dbi(), WithinAbs(3.5, 1e-12));

    FsaModel bad;
    bad.element_count = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("Antenna - main lobe width")
{
    const FsaModel m;
    for (double f : {5.52e9, 5.6625e9, 5.8e9})
    {
        const double k = 2.0 * oracle::pi * f / oracle::c0;
        const double s = std::sin(beam_angle(m.calibration, f) * oracle::pi / 180.0);
        const double step = 2.0 * oracle::pi / (8 * k * m.spacing_m());
        auto deg = [](double x) { return x >= 1.0 ? 90.0 : std::asin(x) * 180.0 / oracle::pi; };
        CHECK_THAT(main_lobe_width_deg(m, f), WithinAbs(deg(s + step) - deg(s - step), 1e-9));
        // array factor vanishes at the lower null
        const double lower = deg(s - step);
        CHECK(fsa_gain(m, f, lower) < m.peak_gain_dbi() - 40.0);
    }
}

TEST_CASE("Antenna - omni and ideal beams")
{
    CHECK(omni_gain(OmniModel{}, 5.6e9, 123.0) == 3.0);

    const IdealBeamModel ib;
    // block b (20 MHz) lights sub-sector b (7.5 deg)
    for (int b = 0; b < 8; ++b)
    {
        const double f = 5.5e9 + 20e6 * (b + 0.5);
        const double centre = -30.0 + 7.5 * (b + 0.5);
        CHECK(ideal_beam_gain(ib, f, centre) == 15.0);
        CHECK(ideal_beam_gain(ib, f, centre + 7.5) == 0.0);
        CHECK(ideal_beam_gain(ib, f, centre - 7.5) == 0.0);
    }
    CHECK(ideal_beam_gain(ib, 5.58e9, 80.0) == 0.0);
    CHECK_THROWS_AS(ideal_beam_gain(ib, 5.7e9, 0.0), Error);

    CHECK(pattern_covers(AntennaPattern{ib}, 5.5e9, 5.66e9));
    CHECK_FALSE(pattern_covers(AntennaPattern{ib}, 5.5e9, 5.7e9));
    CHECK(pattern_covers(AntennaPattern{OmniModel{}}, 1e9, 9e9));
    CHECK_FALSE(pattern_covers(AntennaPattern{FsaModel{}}, 5.49e9, 5.6e9));
    CHECK(pattern_gain(AntennaPattern{FsaModel{}}, 5.6e9, 10.0) == fsa_gain(FsaModel{}, 5.6e9, 10.0));
}
