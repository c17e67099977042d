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
#include <vector>

namespace fsalink
{
    // Natural cubic spline (zero second derivative at both ends).
    class NaturalCubicSpline
    {
      public:
        // xs strictly increasing, at least 4 knots; throws Error(domain).
        NaturalCubicSpline(std::span<const double> xs, std::span<const double> ys);

        // Throws Error(domain) outside [xs.front(), xs.back()].
        double operator()(double x) const;

        // Queries may come in any order; sorted queries are evaluated in one pass.
        std::vector<double> evaluate(std::span<const double> query) const;

        const std::vector<double> &second_derivatives() const noexcept { return m_; }

      private:
        double eval_segment(std::size_t seg, double x) const noexcept;
        std::size_t segment_of(double x) const;

        std::vector<double> x_, y_, m_;
    };

    std::vector<double> cubic_spline_interpolate(std::span<const double> xs, std::span<const double> ys,
                                                 std::span<const double> query);

    // Weights w such that sum_k w[k] * y[k] is the value at offset 0 of the
    // degree-`order` least-squares polynomial through samples at integer
    // offsets [-left, right].
    std::vector<double> savgol_weights(int left, int right, int order);

    // Savitzky-Golay smoothing with an odd window. Interior points use the
    // centred window; the first and last window/2 points use the window
    // truncated at the boundary, fitted with the same order (reduced only if
    // the truncated window has fewer than order + 1 points).
    // Throws Error(config) unless window is odd, window <= values.size()
    // and 0 <= order < window.
    std::vector<double> savitzky_golay(std::span<const double> values, int window, int order);

    struct Peak
    {
        double x = 0.0;
        std::size_t index = 0;     // argmax sample
        bool at_boundary = false;  // argmax was the first or last sample
    };

    // Argmax refined by the vertex of the parabola through the argmax and its
    // two neighbours; a boundary argmax returns the boundary abscissa.
    // Throws Error(domain) for fewer than 3 points and Error(ambiguous_peak)
    // when all values are equal.
    Peak find_peak(std::span<const double> xs, std::span<const double> ys);
}
