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

#include "fsalink/dsp.hpp"

#include "fsalink/error.hpp"
#include "fsalink/simd/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace fsalink
{
    // ---- natural cubic spline -------------------------------------------

    NaturalCubicSpline::NaturalCubicSpline(std::span<const double> xs, std::span<const double> ys)
        : x_(xs.begin(), xs.end()), y_(ys.begin(), ys.end())
    {
        const std::size_t n = x_.size();
        if (n != y_.size())
            throw Error(ErrorCode::shape, "spline: xs and ys differ in length");
        if (n < 4)
            throw Error(ErrorCode::domain, "spline needs at least 4 knots");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw Error(ErrorCode::domain, "spline knots must be strictly increasing (index " + std::to_string(i) + ")");

        // Tridiagonal system for the interior second derivatives (Thomas algorithm).
        m_.assign(n, 0.0);
        std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i)
        {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        }
        // forward sweep; sub-diagonal entry of row i is h_{i-1}
        for (std::size_t i = 2; i + 1 < n; ++i)
        {
            const double lower = x_[i] - x_[i - 1];
            const double w = lower / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i)
        {
            m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
            if (i == 1)
                break;
        }
    }

    std::size_t NaturalCubicSpline::segment_of(double x) const
    {
        if (!(x >= x_.front() && x <= x_.back()))
            throw Error(ErrorCode::domain, "spline query " + std::to_string(x) + " outside knot range");
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const auto seg = static_cast<std::size_t>(it - x_.begin());
        return std::clamp<std::size_t>(seg, 1, x_.size() - 1) - 1;
    }

    double NaturalCubicSpline::eval_segment(std::size_t i, double x) const noexcept
    {
        if (x == x_[i])
            return y_[i];
        if (x == x_[i + 1])
            return y_[i + 1];
        const double h = x_[i + 1] - x_[i];
        const double a = x_[i + 1] - x;
        const double b = x - x_[i];
        return (m_[i] * a * a * a + m_[i + 1] * b * b * b) / (6.0 * h) + (y_[i] / h - m_[i] * h / 6.0) * a +
               (y_[i + 1] / h - m_[i + 1] * h / 6.0) * b;
    }

    double NaturalCubicSpline::operator()(double x) const
    {
        return eval_segment(segment_of(x), x);
    }

    std::vector<double> NaturalCubicSpline::evaluate(std::span<const double> query) const
    {
        std::vector<double> out(query.size());
        std::size_t seg = 0;
        for (std::size_t q = 0; q < query.size(); ++q)
        {
            const double x = query[q];
            // walk forward for sorted queries, fall back to bisection otherwise
            if (x >= x_[seg] && x <= x_.back())
            {
                while (seg + 2 < x_.size() && x > x_[seg + 1])
                    ++seg;
            }
            else
            {
                seg = segment_of(x);
            }
            out[q] = eval_segment(seg, x);
        }
        return out;
    }

    std::vector<double> cubic_spline_interpolate(std::span<const double> xs, std::span<const double> ys,
                                                 std::span<const double> query)
    {
        return NaturalCubicSpline(xs, ys).evaluate(query);
    }

    // ---- Savitzky-Golay -------------------------------------------------

    std::vector<double> savgol_weights(int left, int right, int order)
    {
        const int n = left + right + 1;
        if (left < 0 || right < 0 || order < 0 || order >= n)
            throw Error(ErrorCode::config, "savgol_weights: need 0 <= order < window");

        // offsets scaled to [-1, 1] for conditioning; the value at 0 is unchanged
        const double scale = 1.0 / std::max({left, right, 1});
        Eigen::MatrixXd design(n, order + 1);
        for (int r = 0; r < n; ++r)
        {
            const double t = (r - left) * scale;
            double p = 1.0;
            for (int c = 0; c <= order; ++c, p *= t)
                design(r, c) = p;
        }
        const Eigen::MatrixXd pinv = design.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(n, n));
        std::vector<double> w(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            w[static_cast<std::size_t>(r)] = pinv(0, r);
        return w;
    }

    std::vector<double> savitzky_golay(std::span<const double> values, int window, int order)
    {
        const auto n = static_cast<long>(values.size());
        if (window < 1 || window % 2 == 0)
            throw Error(ErrorCode::config, "savitzky_golay window must be a positive odd integer");
        if (window > n)
            throw Error(ErrorCode::config, "savitzky_golay window " + std::to_string(window) + " exceeds " + std::to_string(n) + " samples");
        if (order < 0 || order >= window)
            throw Error(ErrorCode::config, "savitzky_golay order must satisfy 0 <= order < window");

        const int half = window / 2;
        std::vector<double> out(values.size());

        const std::vector<double> centred = savgol_weights(half, half, order);
        simd::correlate_valid(values, centred, std::span<double>(out).subspan(half, values.size() - 2 * half));

        for (long i = 0; i < n; ++i)
        {
            if (i >= half && i < n - half)
                continue;
            const int left = static_cast<int>(std::min<long>(half, i));
            const int right = static_cast<int>(std::min<long>(half, n - 1 - i));
            const int eff_order = std::min(order, left + right);
            const std::vector<double> w = savgol_weights(left, right, eff_order);
            double acc = 0.0;
            for (int k = 0; k < left + right + 1; ++k)
                acc += w[static_cast<std::size_t>(k)] * values[static_cast<std::size_t>(i - left + k)];
            out[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    }

    // ---- peak -----------------------------------------------------------

    Peak find_peak(std::span<const double> xs, std::span<const double> ys)
    {
        if (xs.size() != ys.size())
            throw Error(ErrorCode::shape, "find_peak: xs and ys differ in length");
        if (xs.size() < 3)
            throw Error(ErrorCode::domain, "find_peak needs at least 3 points");
        const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
        if (*lo == *hi)
            throw Error(ErrorCode::ambiguous_peak, "all powers are equal; no unique peak");

        const auto idx = static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
        if (idx == 0 || idx + 1 == xs.size())
            return Peak{xs[idx], idx, true};

        const double x0 = xs[idx - 1], x1 = xs[idx], x2 = xs[idx + 1];
        const double y0 = ys[idx - 1], y1 = ys[idx], y2 = ys[idx + 1];
        const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
        const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
        if (den == 0.0)
            return Peak{x1, idx, false};
        return Peak{x1 - 0.5 * num / den, idx, false};
    }
}
