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

#include <span>
#include <variant>
#include <vector>

// Antenna gain patterns.
//
// Angles are azimuth in degrees in the antenna's own frame, 0 deg being
// broadside (normal to the feed line), positive towards the feed's far end.
// Frequencies are in Hz. All patterns are reciprocal: the same gain applies
// to transmit and receive.

namespace fsalink
{
    // Linear frequency-to-beam-angle map of a frequency scanning antenna:
    //   theta(f) = theta_ref + slope * (f - f_ref),   f in [f_min, f_max]
    struct BeamCalibration
    {
        double f_ref_hz = 5.620e9;
        double theta_ref_deg = 23.6;
        double slope_deg_per_hz = 50.0 / 325.0e6;
        double f_min_hz = 5.500e9;
        double f_max_hz = 5.825e9;

        // Throws Error(config) when the band is empty, slope is zero or
        // f_ref lies outside the band.
        void validate() const;

        // Steerable range [min, max] regardless of the sign of the slope.
        double min_angle_deg() const;
        double max_angle_deg() const;

        bool in_band(double f_hz) const noexcept { return f_hz >= f_min_hz && f_hz <= f_max_hz; }
    };

    // Throws Error(band_range) when f is outside [f_min, f_max].
    double beam_angle(const BeamCalibration &cal, double f_hz);

    // Exact inverse of beam_angle. Throws Error(coverage) when theta is
    // outside the steerable range.
    double frequency_for_angle(const BeamCalibration &cal, double theta_deg);

    // Series-fed linear array whose inter-element phase progression tracks
    // the calibration, so that the array-factor peak at frequency f lies at
    // beam_angle(f).
    struct FsaModel
    {
        int element_count = 8;
        double element_spacing_m = 0.0; // 0 selects half a wavelength at band centre
        double element_gain_dbi = 7.5;
        double per_stage_loss_db = 0.5;
        BeamCalibration calibration{};

        void validate() const;

        double spacing_m() const noexcept;

        // (element_count - 1) cascaded stages between feed and last element
        double total_stage_loss_db() const noexcept { return (element_count - 1) * per_stage_loss_db; }

        // Gain at the beam peak: element gain + 10 log10(N) - stage losses.
        double peak_gain_dbi() const noexcept;
    };

    // Per-element feed phase phi(f) = k(f) d sin(beam_angle(f)) in radians.
    double element_phase_rad(const FsaModel &model, double f_hz);

    // gain = element_gain + 10 log10(AF) - stage losses, with
    // AF = |sum_n exp(j n (k d sin(theta) - phi(f)))|^2 / N.
    // Requires f in band and theta in [-90, 90] deg.
    double fsa_gain(const FsaModel &model, double f_hz, double theta_deg);

    // Batched forms; out.size() must equal the input span size.
    void fsa_gain_over_angle(const FsaModel &model, double f_hz, std::span<const double> theta_deg, std::span<double> out);
    void fsa_gain_over_frequency(const FsaModel &model, std::span<const double> f_hz, double theta_deg, std::span<double> out);

    // Null-to-null width of the main lobe at frequency f, degrees. When a
    // null falls beyond endfire, the distance to +-90 deg is used for that side.
    double main_lobe_width_deg(const FsaModel &model, double f_hz);

    struct OmniModel
    {
        double gain_dbi = 3.0;
    };

    double omni_gain(const OmniModel &model, double f_hz, double theta_deg) noexcept;

    // Idealised multi-beam FSA: the coverage sector is split into beam_count
    // equal sub-sectors and the band into beam_count equal frequency blocks.
    // Beam b radiates center_gain_dbi over sub-sector b on block b; everything
    // else sees sidelobe_gain_dbi.
    struct IdealBeamModel
    {
        int beam_count = 8;
        double center_gain_dbi = 15.0;
        double sidelobe_gain_dbi = 0.0;
        double coverage_min_deg = -30.0;
        double coverage_max_deg = 30.0;
        double f_min_hz = 5.500e9;
        double f_max_hz = 5.660e9;

        void validate() const;
    };

    double ideal_beam_gain(const IdealBeamModel &model, double f_hz, double theta_deg);

    using AntennaPattern = std::variant<FsaModel, OmniModel, IdealBeamModel>;

    double pattern_gain(const AntennaPattern &pattern, double f_hz, double theta_deg);

    void pattern_gain_over_frequency(const AntennaPattern &pattern, std::span<const double> f_hz, double theta_deg,
                                     std::span<double> out);

    // True when every frequency in [lo, hi] is inside the pattern's band.
    bool pattern_covers(const AntennaPattern &pattern, double lo_hz, double hi_hz) noexcept;
}
