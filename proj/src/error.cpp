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

#include "fsalink/error.hpp"

namespace fsalink
{
    std::string_view to_string(ErrorCode code) noexcept
    {
        switch (code)
        {
        case ErrorCode::band_range:
            return "band_range";
        case ErrorCode::coverage:
            return "coverage";
        case ErrorCode::domain:
            return "domain";
        case ErrorCode::partition:
            return "partition";
        case ErrorCode::shape:
            return "shape";
        case ErrorCode::capacity:
            return "capacity";
        case ErrorCode::allocation:
            return "allocation";
        case ErrorCode::config:
            return "config";
        case ErrorCode::ambiguous_peak:
            return "ambiguous_peak";
        case ErrorCode::range:
            return "range";
        case ErrorCode::negative_distance:
            return "negative_distance";
        case ErrorCode::parse:
            return "parse";
        case ErrorCode::validation:
            return "validation";
        case ErrorCode::io:
            return "io";
        }
        return "unknown";
    }
}
