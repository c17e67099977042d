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

#include "fsalink/scenario.hpp"
#include "fsalink/stats.hpp"

#include <string>

// Monte Carlo drivers. Every (device, trial) job draws from its own random
// substreams keyed by (seed, device id, trial), so results do not depend on
// the number of threads or on scheduling.
//
// Comm metrics, one set per RU width (suffix ".ru5mhz", ".ru10mhz", ...):
//   delta_snr_db, rate_improvement_pct, range_improvement_pct,
//   rate_new_link_mbps (FSA link up, omni link down; value = FSA rate),
//   rate_no_link (neither link reaches MCS0; value = delta SNR).
// Devices outside the scanning antenna's coverage on the scenario channel
// are recorded under the same names prefixed with "coverage_limited.".
//
// Localization metrics: aoa_error_deg, distance_error_m, position_error_m,
// plus coverage_limited.* and estimator failures under "failed.<code>".

namespace fsalink
{
    struct RunOptions
    {
        unsigned threads = 1; // 0 selects std::thread::hardware_concurrency()
    };

    SummaryStats run_comm_eval(const Scenario &scenario, const RunOptions &options = {});
    SummaryStats run_localization_eval(const Scenario &scenario, const RunOptions &options = {});

    // Runs whichever evaluations the scenario asks for and merges the metrics.
    SummaryStats run_scenario(const Scenario &scenario, const RunOptions &options = {});

    // "ru20mhz" for 20e6, "ru2.5mhz" for 2.5e6.
    std::string ru_suffix(double ru_width_hz);
}
