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

#include "fsalink/error.hpp"
#include "fsalink/rate.hpp"

#include <cmath>
#include <map>
#include <string>

// Covered tests:
// - Shipped MCS table: shape, monotonicity, rates re-derived from subcarrier counts
// - MCS selection at threshold boundaries
// - Rate improvement outcomes (percent, new link, no link, lost link)
// - MCS0 range extrapolation and range improvement
// - CSV parser error handling

using namespace fsalink;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Rate - shipped table")
{
    const McsTable &t = McsTable::default_11ax();
    REQUIRE(t.size() == 12);
    CHECK(t.threshold_db(0) == 9.0);
    CHECK(t.threshold_db(11) == 39.0);

    // rate = data subcarriers * bits/symbol * code rate / 13.6 us (0.8 us GI)
    const std::map<std::string, double> bits{{"BPSK", 1}, {"QPSK", 2}, {"16-QAM", 4}, {"64-QAM", 6}, {"256-QAM", 8}, {"1024-QAM", 10}};
    const double data_subcarriers[3] = {48.0, 102.0, 234.0};
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        const McsEntry &e = t.entry(i);
        CHECK(e.index == static_cast<int>(i));
        const auto slash = e.coding.find('/');
        const double r = std::stod(e.coding.substr(0, slash)) / std::stod(e.coding.substr(slash + 1));
        for (std::size_t c = 0; c < 3; ++c)
        {
            const double expect = data_subcarriers[c] * bits.at(e.modulation) * r / 13.6;
            CHECK_THAT(e.rate_mbps[c], WithinAbs(expect, 0.051));
            CHECK(t.rate_mbps(i, mcs_ru_widths_hz[c]) == e.rate_mbps[c]);
        }
    }
    CHECK_THROWS_AS(t.rate_mbps(0, 40e6), Error);
}

TEST_CASE("Rate - MCS selection")
{
    const McsTable &t = McsTable::default_11ax();
    CHECK_FALSE(select_mcs(t, 8.999).has_value());
    CHECK(select_mcs(t, 9.0) == 0u);
    CHECK(select_mcs(t, 16.9) == 2u);
    CHECK(select_mcs(t, 17.0) == 3u);
    CHECK(select_mcs(t, 60.0) == 11u);
}

TEST_CASE("Rate - improvement outcomes")
{
    const McsTable &t = McsTable::default_11ax();

    // MCS3 -> MCS7 on a 20 MHz RU: 86.0 / 34.4 = 2.5
    RateImprovement r = rate_improvement(t, 27.5, 17.5, 20e6);
    CHECK(r.outcome == RateImprovement::Outcome::percent);
    CHECK_THAT(r.value, WithinAbs(150.0, 1e-9));

    r = rate_improvement(t, 20.0, 20.0, 5e6);
    CHECK(r.outcome == RateImprovement::Outcome::percent);
    CHECK(r.value == 0.0);

    r = rate_improvement(t, 12.0, 3.0, 10e6);
    CHECK(r.outcome == RateImprovement::Outcome::new_link);
    CHECK(r.value == 7.5);

    r = rate_improvement(t, 1.0, 3.0, 10e6);
    CHECK(r.outcome == RateImprovement::Outcome::no_link);

    r = rate_improvement(t, 5.0, 10.0, 20e6);
    CHECK(r.outcome == RateImprovement::Outcome::percent);
    CHECK(r.value == -100.0);
}

TEST_CASE("Rate - range")
{
    const McsTable &t = McsTable::default_11ax();
    CHECK_THAT(range_at_mcs0(29.0, 1.0, t), WithinRel(10.0, 1e-14));
    CHECK_THAT(range_at_mcs0(9.0, 3.0, t), WithinRel(3.0, 1e-14));
    try
    {
        range_at_mcs0(8.0, 1.0, t);
        FAIL("expected range error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::range);
    }

    CHECK(range_improvement_pct(0.0) == 0.0);
    CHECK_THAT(range_improvement_pct(13.979400086720377), WithinAbs(400.0, 1e-9));
    CHECK_THAT(range_improvement_pct(6.020599913279624), WithinAbs(100.0, 1e-9));
    // ratio of MCS0 ranges equals the closed form
    const double base = range_at_mcs0(15.0, 2.0, t), better = range_at_mcs0(15.0 + 7.3, 2.0, t);
    CHECK_THAT(100.0 * (better / base - 1.0), WithinAbs(range_improvement_pct(7.3), 1e-9));
}

TEST_CASE("Rate - CSV parsing")
{
    const std::string header = "index,modulation,coding,min_snr_db,rate_mbps_5mhz,rate_mbps_10mhz,rate_mbps_20mhz\n";
    const McsTable t = McsTable::parse_csv("# comment\n\n" + header + "0,BPSK,1/2,5,1,2,4\n1,QPSK,1/2,8,2,4,8\n");
    CHECK(t.size() == 2);
    CHECK(t.threshold_db(1) == 8.0);

    auto code = [](const std::string &text) {
        try
        {
            McsTable::parse_csv(text);
        }
        catch (const Error &e)
        {
            return e.code();
        }
        return ErrorCode::io;
    };
    CHECK(code("index,snr\n0,5\n") == ErrorCode::parse);
    CHECK(code(header + "0,BPSK,1/2,abc,1,2,4\n") == ErrorCode::parse);
    CHECK(code(header + "0,BPSK,1/2,5,1,2\n") == ErrorCode::parse);
    CHECK(code(header + "0,BPSK,1/2,5,1,2,4\n1,QPSK,1/2,5,2,4,8\n") == ErrorCode::validation);
    CHECK(code(header + "0,BPSK,1/2,5,1,2,4\n1,QPSK,1/2,6,1,4,8\n") == ErrorCode::validation);
    CHECK(code(header) == ErrorCode::validation);
    CHECK_THROWS_AS(McsTable::load_csv("/nonexistent/mcs.csv"), Error);
}
