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

#include "fsalink/stats.hpp"

#include <filesystem>
#include <string>

// Report layout under an output directory:
//   raw/<metric>.csv  device_id,trial,value      one row per sample
//   summary.csv       metric,n,mean,p10,p50,p90  NA for empty metrics
//   summary.txt       aligned human-readable table
// Numbers are written with std::to_chars, so output bytes depend only on
// the stats.

namespace fsalink
{
    std::string format_number(double v);

    std::string summary_csv(const SummaryStats &stats);
    std::string summary_text(const SummaryStats &stats);
    std::string raw_csv(const std::vector<Sample> &samples);

    // Throws Error(io) when the directory cannot be created or written.
    void emit_report(const SummaryStats &stats, const std::filesystem::path &out_dir);

    // Reads every raw/<metric>.csv (or <metric>.csv when given the raw
    // directory itself) back into SummaryStats.
    SummaryStats load_raw(const std::filesystem::path &raw_dir);
}
