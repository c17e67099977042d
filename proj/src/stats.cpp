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

#include "fsalink/stats.hpp"

#include "fsalink/error.hpp"

#include <algorithm>
#include <cmath>

namespace fsalink
{
    double percentile(std::span<const double> samples, double q)
    {
        if (samples.empty())
            throw Error(ErrorCode::domain, "percentile of an empty sample set");
        if (!(q >= 0.0 && q <= 100.0))
            throw Error(ErrorCode::domain, "percentile q must lie in [0, 100]");

        std::vector<double> v(samples.begin(), samples.end());
        std::sort(v.begin(), v.end());
        const double h = static_cast<double>(v.size() - 1) * q / 100.0;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
    }

    MetricSummary summarize(std::span<const Sample> samples)
    {
        MetricSummary m;
        m.n = samples.size();
        if (m.n == 0)
            return m;
        std::vector<double> v;
        v.reserve(m.n);
        double sum = 0.0;
        for (const Sample &s : samples)
        {
            v.push_back(s.value);
            sum += s.value;
        }
        m.mean = sum / static_cast<double>(m.n);
        m.p10 = percentile(v, 10.0);
        m.p50 = percentile(v, 50.0);
        m.p90 = percentile(v, 90.0);
        return m;
    }

    std::vector<double> SummaryStats::values(const std::string &metric) const
    {
        std::vector<double> v;
        if (auto it = metrics.find(metric); it != metrics.end())
            for (const Sample &s : it->second)
                v.push_back(s.value);
        return v;
    }
}
