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

#include "fsalink/constants.hpp"
#include "fsalink/error.hpp"
#include "fsalink/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsalink
{
    namespace
    {
        // Floor on the normalised array factor so that exact nulls map to a
        // finite gain (-150 dB relative) instead of -inf.
        constexpr double af_floor = 1e-15;

        void require_angle(double theta_deg)
        {
            if (!(theta_deg >= -90.0 && theta_deg <= 90.0))
                throw Error(ErrorCode::domain, "angle " + std::to_string(theta_deg) + " deg outside [-90, 90]");
        }

        void require_band(const BeamCalibration &cal, double f_hz)
        {
            if (!cal.in_band(f_hz))
                throw Error(ErrorCode::band_range, "frequency " + std::to_string(f_hz) + " Hz outside antenna band [" +
                                                       std::to_string(cal.f_min_hz) + ", " + std::to_string(cal.f_max_hz) + "]");
        }

        double wavenumber(double f_hz) { return 2.0 * pi * f_hz / speed_of_light; }

        // Inter-element phase difference relative to the beam direction.
        double steering_psi(const FsaModel &model, double f_hz, double theta_deg)
        {
            const double beam = beam_angle(model.calibration, f_hz);
            return wavenumber(f_hz) * model.spacing_m() * (std::sin(deg_to_rad(theta_deg)) - std::sin(deg_to_rad(beam)));
        }

        double af_to_gain(const FsaModel &model, double af)
        {
            return model.element_gain_dbi + 10.0 * std::log10(std::max(af, af_floor)) - model.total_stage_loss_db();
        }
    }

    // ---- BeamCalibration ------------------------------------------------

    void BeamCalibration::validate() const
    {
        if (!(std::isfinite(f_min_hz) && std::isfinite(f_max_hz) && f_min_hz < f_max_hz))
            throw Error(ErrorCode::config, "calibration band is empty: f_min must be < f_max");
        if (!(std::isfinite(slope_deg_per_hz) && slope_deg_per_hz != 0.0))
            throw Error(ErrorCode::config, "calibration slope must be finite and nonzero");
        if (!(f_ref_hz >= f_min_hz && f_ref_hz <= f_max_hz))
            throw Error(ErrorCode::config, "calibration f_ref must lie inside [f_min, f_max]");
        if (!std::isfinite(theta_ref_deg))
            throw Error(ErrorCode::config, "calibration theta_ref must be finite");
    }

    double BeamCalibration::min_angle_deg() const
    {
        return std::min(beam_angle(*this, f_min_hz), beam_angle(*this, f_max_hz));
    }

    double BeamCalibration::max_angle_deg() const
    {
        return std::max(beam_angle(*this, f_min_hz), beam_angle(*this, f_max_hz));
    }

    double beam_angle(const BeamCalibration &cal, double f_hz)
    {
        require_band(cal, f_hz);
        return cal.theta_ref_deg + cal.slope_deg_per_hz * (f_hz - cal.f_ref_hz);
    }

    double frequency_for_angle(const BeamCalibration &cal, double theta_deg)
    {
        const double lo = cal.min_angle_deg();
        const double hi = cal.max_angle_deg();
        if (!(theta_deg >= lo && theta_deg <= hi))
            throw Error(ErrorCode::coverage, "angle " + std::to_string(theta_deg) + " deg outside steerable range [" +
                                                 std::to_string(lo) + ", " + std::to_string(hi) + "]");
        const double f = cal.f_ref_hz + (theta_deg - cal.theta_ref_deg) / cal.slope_deg_per_hz;
        // rounding at the exact band edges must not push the result out of band
        return std::clamp(f, cal.f_min_hz, cal.f_max_hz);
    }

    // ---- FsaModel -------------------------------------------------------

    void FsaModel::validate() const
    {
        if (element_count < 1)
            throw Error(ErrorCode::config, "fsa element_count must be >= 1");
        if (!(element_spacing_m >= 0.0) || !std::isfinite(element_spacing_m))
            throw Error(ErrorCode::config, "fsa element_spacing_m must be > 0 (or 0 for half wavelength)");
        if (!(per_stage_loss_db >= 0.0) || !std::isfinite(per_stage_loss_db))
            throw Error(ErrorCode::config, "fsa per_stage_loss_db must be >= 0");
        if (!std::isfinite(element_gain_dbi))
            throw Error(ErrorCode::config, "fsa element_gain_dbi must be finite");
        calibration.validate();
    }

    double FsaModel::spacing_m() const noexcept
    {
        if (element_spacing_m > 0.0)
            return element_spacing_m;
        const double center = 0.5 * (calibration.f_min_hz + calibration.f_max_hz);
        return speed_of_light / (2.0 * center);
    }

    double FsaModel::peak_gain_dbi() const noexcept
    {
        return element_gain_dbi + 10.0 * std::log10(static_cast<double>(element_count)) - total_stage_loss_db();
    }

    double element_phase_rad(const FsaModel &model, double f_hz)
    {
        return wavenumber(f_hz) * model.spacing_m() * std::sin(deg_to_rad(beam_angle(model.calibration, f_hz)));
    }

    double fsa_gain(const FsaModel &model, double f_hz, double theta_deg)
    {
        require_angle(theta_deg);
        const double psi = steering_psi(model, f_hz, theta_deg);
        double af = 0.0;
        simd::array_factor({&psi, 1}, model.element_count, {&af, 1});
        return af_to_gain(model, af);
    }

    void fsa_gain_over_angle(const FsaModel &model, double f_hz, std::span<const double> theta_deg, std::span<double> out)
    {
        if (out.size() != theta_deg.size())
            throw Error(ErrorCode::shape, "fsa_gain_over_angle: output size mismatch");
        require_band(model.calibration, f_hz);

        const double kd = wavenumber(f_hz) * model.spacing_m();
        const double sin_beam = std::sin(deg_to_rad(beam_angle(model.calibration, f_hz)));
        std::vector<double> psi(theta_deg.size());
        for (std::size_t i = 0; i < theta_deg.size(); ++i)
        {
            require_angle(theta_deg[i]);
            psi[i] = kd * (std::sin(deg_to_rad(theta_deg[i])) - sin_beam);
        }
        simd::array_factor(psi, model.element_count, out);
        for (double &g : out)
            g = af_to_gain(model, g);
    }

    void fsa_gain_over_frequency(const FsaModel &model, std::span<const double> f_hz, double theta_deg, std::span<double> out)
    {
        if (out.size() != f_hz.size())
            throw Error(ErrorCode::shape, "fsa_gain_over_frequency: output size mismatch");
        require_angle(theta_deg);

        std::vector<double> psi(f_hz.size());
        for (std::size_t i = 0; i < f_hz.size(); ++i)
            psi[i] = steering_psi(model, f_hz[i], theta_deg);
        simd::array_factor(psi, model.element_count, out);
        for (double &g : out)
            g = af_to_gain(model, g);
    }

    double main_lobe_width_deg(const FsaModel &model, double f_hz)
    {
        const double beam = beam_angle(model.calibration, f_hz);
        const double sin_beam = std::sin(deg_to_rad(beam));
        const double step = 2.0 * pi / (model.element_count * wavenumber(f_hz) * model.spacing_m());

        auto null_angle = [](double s) { return s >= 1.0 ? 90.0 : (s <= -1.0 ? -90.0 : rad_to_deg(std::asin(s))); };
        return null_angle(sin_beam + step) - null_angle(sin_beam - step);
    }

    // ---- Omni / ideal beams --------------------------------------------

    double omni_gain(const OmniModel &model, double, double) noexcept
    {
        return model.gain_dbi;
    }

    void IdealBeamModel::validate() const
    {
        if (beam_count < 1)
            throw Error(ErrorCode::config, "ideal beam_count must be >= 1");
        if (!(coverage_min_deg < coverage_max_deg))
            throw Error(ErrorCode::config, "ideal beam coverage is empty");
        if (!(f_min_hz < f_max_hz))
            throw Error(ErrorCode::config, "ideal beam band is empty");
    }

    double ideal_beam_gain(const IdealBeamModel &model, double f_hz, double theta_deg)
    {
        if (!(f_hz >= model.f_min_hz && f_hz <= model.f_max_hz))
            throw Error(ErrorCode::band_range, "frequency " + std::to_string(f_hz) + " Hz outside ideal-beam band");
        const double block = (model.f_max_hz - model.f_min_hz) / model.beam_count;
        const int beam = std::min(static_cast<int>((f_hz - model.f_min_hz) / block), model.beam_count - 1);

        const double width = (model.coverage_max_deg - model.coverage_min_deg) / model.beam_count;
        const double lo = model.coverage_min_deg + beam * width;
        const double hi = lo + width;
        return (theta_deg >= lo && theta_deg <= hi) ? model.center_gain_dbi : model.sidelobe_gain_dbi;
    }

    // ---- Pattern variant -----------------------------------------------

    double pattern_gain(const AntennaPattern &pattern, double f_hz, double theta_deg)
    {
        return std::visit(
            [&](const auto &m) -> double {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, FsaModel>)
                    return fsa_gain(m, f_hz, theta_deg);
                else if constexpr (std::is_same_v<T, OmniModel>)
                    return omni_gain(m, f_hz, theta_deg);
                else
                    return ideal_beam_gain(m, f_hz, theta_deg);
            },
            pattern);
    }

    void pattern_gain_over_frequency(const AntennaPattern &pattern, std::span<const double> f_hz, double theta_deg,
                                     std::span<double> out)
    {
        if (const auto *fsa = std::get_if<FsaModel>(&pattern))
        {
            fsa_gain_over_frequency(*fsa, f_hz, theta_deg, out);
            return;
        }
        if (out.size() != f_hz.size())
            throw Error(ErrorCode::shape, "pattern_gain_over_frequency: output size mismatch");
        for (std::size_t i = 0; i < f_hz.size(); ++i)
            out[i] = pattern_gain(pattern, f_hz[i], theta_deg);
    }

    bool pattern_covers(const AntennaPattern &pattern, double lo_hz, double hi_hz) noexcept
    {
        return std::visit(
            [&](const auto &m) -> bool {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, FsaModel>)
                    return m.calibration.in_band(lo_hz) && m.calibration.in_band(hi_hz);
                else if constexpr (std::is_same_v<T, OmniModel>)
                    return true;
                else
                    return lo_hz >= m.f_min_hz && hi_hz <= m.f_max_hz;
            },
            pattern);
    }
}
