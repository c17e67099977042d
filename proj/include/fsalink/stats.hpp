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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fsalink
{
    // Linear interpolation between closest ranks: h = (n - 1) q / 100.
    // Throws Error(domain) for empty samples or q outside [0, 100].
    double percentile(std::span<const double> samples, double q);

    struct Sample
    {
        std::uint32_t device_id = 0;
        std::uint64_t trial = 0;
        double value = 0.0;

        friend bool operator==(const Sample &, const Sample &) = default;
    };

    struct MetricSummary
    {
        std::size_t n = 0;
        double mean = 0.0;
        double p10 = 0.0;
        double p50 = 0.0;
        double p90 = 0.0;
    };

    MetricSummary summarize(std::span<const Sample> samples);

    // Metric name -> samples in (device id, trial) order. A metric may be
    // registered with no samples; it is still reported, with n = 0.
    struct SummaryStats
    {
        std::map<std::string, std::vector<Sample>> metrics;

        void declare(const std::string &metric) { metrics[metric]; }
        void add(const std::string &metric, Sample s) { metrics[metric].push_back(s); }
        std::vector<double> values(const std::string &metric) const;

        friend bool operator==(const SummaryStats &, const SummaryStats &) = default;
    };
}
