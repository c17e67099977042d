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

#include <stdexcept>
#include <string>
#include <string_view>

namespace fsalink
{
    // Error categories. The string form (to_string) is part of the CLI's
    // machine-readable stderr contract, so existing names must not change.
    enum class ErrorCode
    {
        band_range,       // frequency outside an antenna band
        coverage,         // angle outside the steerable range
        domain,           // argument outside the mathematical domain
        partition,        // RU width does not divide the channel
        shape,            // mismatched vector lengths / grids
        capacity,         // more devices than RUs
        allocation,       // device missing from an allocation
        config,           // invalid configuration value
        ambiguous_peak,   // flat spectrum, no unique maximum
        range,            // SNR below MCS0 at the reference distance
        negative_distance,// RTT median below SIFS
        parse,            // malformed input file
        validation,       // well-formed but semantically invalid input
        io                // filesystem failure
    };

    std::string_view to_string(ErrorCode code) noexcept;

    class Error : public std::runtime_error
    {
      public:
        Error(ErrorCode code, const std::string &message)
            : std::runtime_error(message), code_(code) {}

        ErrorCode code() const noexcept { return code_; }

      private:
        ErrorCode code_;
    };
}
