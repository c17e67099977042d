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

#include "fsalink/channel.hpp"

#include "fsalink/constants.hpp"
#include "fsalink/error.hpp"
#include "fsalink/random.hpp"
#include "fsalink/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fsalink
{
    void SubcarrierGrid::validate() const
    {
        if (!(spacing_hz > 0.0) || !(bandwidth_hz > 0.0) || !std::isfinite(center_hz) || !(center_hz > 0.0))
            throw Error(ErrorCode::config, "subcarrier grid needs positive center, bandwidth and spacing");
        const double n = bandwidth_hz / spacing_hz;
        if (std::abs(n - std::round(n)) > 1e-9 * n || std::round(n) < 1.0)
            throw Error(ErrorCode::config, "channel bandwidth must be a positive multiple of the subcarrier spacing");
        if (!(lower_edge_hz() > 0.0))
            throw Error(ErrorCode::config, "channel extends below 0 Hz");
    }

    std::size_t SubcarrierGrid::count() const
    {
        return static_cast<std::size_t>(std::llround(bandwidth_hz / spacing_hz));
    }

    std::vector<double> SubcarrierGrid::frequencies() const
    {
        std::vector<double> f(count());
        for (std::size_t k = 0; k < f.size(); ++k)
            f[k] = frequency(k);
        return f;
    }

    void LinkGeometry::validate() const
    {
        if (!(distance_m > 0.0) || !std::isfinite(distance_m))
            throw Error(ErrorCode::domain, "link distance must be > 0");
        for (double az : {azimuth_at_a_deg, azimuth_at_b_deg})
            if (!(az >= -180.0 && az < 180.0))
                throw Error(ErrorCode::domain, "azimuth " + std::to_string(az) + " deg outside [-180, 180)");
    }

    void RadioParams::validate() const
    {
        if (!std::isfinite(tx_power_dbm))
            throw Error(ErrorCode::config, "tx_power_dbm must be finite");
        if (!(noise_figure_db >= 0.0) || !std::isfinite(noise_figure_db))
            throw Error(ErrorCode::config, "noise_figure_db must be >= 0");
    }

    double fspl_db(double distance_m, double f_hz)
    {
        if (!(distance_m > 0.0) || !(f_hz > 0.0))
            throw Error(ErrorCode::domain, "fspl_db requires distance > 0 and frequency > 0");
        return 20.0 * std::log10(distance_m) + 20.0 * std::log10(f_hz) + 20.0 * std::log10(4.0 * pi / speed_of_light);
    }

    double noise_floor_dbm(double bandwidth_hz, double noise_figure_db)
    {
        if (!(bandwidth_hz > 0.0))
            throw Error(ErrorCode::domain, "noise_floor_dbm requires bandwidth > 0");
        return thermal_noise_dbm_per_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    }

    double fading_db(const FadingModel &fading, std::size_t subcarrier)
    {
        if (fading.kind == FadingKind::los)
            return 0.0;
        // unit mean power: h = sqrt(K/(K+1)) + sqrt(1/(K+1)) * CN(0,1)
        const double k = std::pow(10.0, fading.k_factor_db / 10.0);
        const double los = std::sqrt(k / (k + 1.0));
        const double scatter = std::sqrt(1.0 / (k + 1.0));
        const std::uint64_t key = rng::derive_key(fading.seed, {fading.link_id, static_cast<std::uint64_t>(rng::Stream::fading)});
        const rng::ComplexSample n = rng::complex_normal(key, subcarrier);
        const double re = los + scatter * n.re;
        const double im = scatter * n.im;
        return 10.0 * std::log10(re * re + im * im);
    }

    CsiVector synthesize_csi(const LinkGeometry &geometry, const AntennaPattern &tx_pattern,
                             const AntennaPattern &rx_pattern, const SubcarrierGrid &grid, const RadioParams &radio,
                             const FadingModel &fading)
    {
        geometry.validate();
        grid.validate();
        radio.validate();

        const std::vector<double> freqs = grid.frequencies();
        const double lo = freqs.front(), hi = freqs.back();
        if (!pattern_covers(tx_pattern, lo, hi) || !pattern_covers(rx_pattern, lo, hi))
            throw Error(ErrorCode::band_range, "subcarriers [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                   "] Hz fall outside an antenna band");

        CsiVector csi{grid, std::vector<double>(freqs.size())};
        std::vector<double> g_tx(freqs.size()), g_rx(freqs.size());
        pattern_gain_over_frequency(tx_pattern, freqs, geometry.azimuth_at_a_deg, g_tx);
        pattern_gain_over_frequency(rx_pattern, freqs, geometry.azimuth_at_b_deg, g_rx);

        for (std::size_t k = 0; k < freqs.size(); ++k)
            csi.power_dbm[k] = radio.tx_power_dbm + g_tx[k] + g_rx[k] - fspl_db(geometry.distance_m, freqs[k]) + fading_db(fading, k);
        return csi;
    }

    void add_measurement_noise(std::span<double> power_dbm, double snr_db, std::uint64_t key)
    {
        if (power_dbm.empty())
            return;
        std::vector<double> lin(power_dbm.size());
        simd::db_to_linear(power_dbm, lin);
        const double mean = std::accumulate(lin.begin(), lin.end(), 0.0) / static_cast<double>(lin.size());
        const double sigma = std::sqrt(mean / std::pow(10.0, snr_db / 10.0));

        for (std::size_t k = 0; k < lin.size(); ++k)
        {
            const rng::ComplexSample n = rng::complex_normal(key, k);
            const double re = std::sqrt(lin[k]) + sigma * n.re;
            const double im = sigma * n.im;
            // keep a finite floor so a deep fade never produces -inf dBm
            power_dbm[k] = 10.0 * std::log10(std::max(re * re + im * im, 1e-300));
        }
    }
}
