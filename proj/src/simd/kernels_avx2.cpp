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

// Compiled with -mavx2 -mfma. Nothing in this file may be called unless
// the dispatcher has confirmed CPU support.

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <cmath>

namespace fsalink::simd::detail
{
    namespace
    {
        constexpr std::size_t lanes = 4;

        inline double hsum(__m256d v)
        {
            __m128d lo = _mm256_castpd256_pd128(v);
            __m128d hi = _mm256_extractf128_pd(v, 1);
            lo = _mm_add_pd(lo, hi);
            __m128d sw = _mm_unpackhi_pd(lo, lo);
            return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
        }

        // exp(t) for |t| < ~708, Cody-Waite reduction t = n ln2 + r, |r| <= ln2/2,
        // then a degree-13 Taylor polynomial (truncation error < 1e-17).
        inline __m256d exp_pd(__m256d t)
        {
            const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
            const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
            const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

            const __m256d lo_limit = _mm256_set1_pd(-708.0);
            const __m256d hi_limit = _mm256_set1_pd(709.0);
            const __m256d underflow = _mm256_cmp_pd(t, lo_limit, _CMP_LT_OQ);
            const __m256d overflow = _mm256_cmp_pd(t, hi_limit, _CMP_GT_OQ);
            const __m256d tc = _mm256_max_pd(_mm256_min_pd(t, hi_limit), lo_limit);

            const __m256d n = _mm256_round_pd(_mm256_mul_pd(tc, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
            __m256d r = _mm256_fnmadd_pd(n, ln2_hi, tc);
            r = _mm256_fnmadd_pd(n, ln2_lo, r);

            static constexpr double coeff[] = {
                1.0 / 6227020800.0, // 1/13!
                1.0 / 479001600.0,
                1.0 / 39916800.0,
                1.0 / 3628800.0,
                1.0 / 362880.0,
                1.0 / 40320.0,
                1.0 / 5040.0,
                1.0 / 720.0,
                1.0 / 120.0,
                1.0 / 24.0,
                1.0 / 6.0,
                1.0 / 2.0,
                1.0,
                1.0};
            __m256d p = _mm256_set1_pd(coeff[0]);
            for (std::size_t k = 1; k < sizeof(coeff) / sizeof(coeff[0]); ++k)
                p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(coeff[k]));

            // 2^n assembled directly in the exponent field
            const __m128i n32 = _mm256_cvtpd_epi32(n);
            __m256i e = _mm256_cvtepi32_epi64(n32);
            e = _mm256_add_epi64(e, _mm256_set1_epi64x(1023));
            e = _mm256_slli_epi64(e, 52);
            __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(e));

            result = _mm256_blendv_pd(result, _mm256_setzero_pd(), underflow);
            result = _mm256_blendv_pd(result, _mm256_set1_pd(HUGE_VAL), overflow);
            return result;
        }
    }

    void array_factor_avx2(std::span<const double> psi, int elements, std::span<double> out)
    {
        const std::size_t count = psi.size();
        const std::size_t vec_end = count - count % lanes;
        const __m256d inv_n = _mm256_set1_pd(1.0 / static_cast<double>(elements));

        alignas(32) double c[lanes];
        alignas(32) double s[lanes];
        for (std::size_t i = 0; i < vec_end; i += lanes)
        {
            for (std::size_t l = 0; l < lanes; ++l)
            {
                c[l] = std::cos(psi[i + l]);
                s[l] = std::sin(psi[i + l]);
            }
            const __m256d wc = _mm256_load_pd(c);
            const __m256d ws = _mm256_load_pd(s);

            // z_n = exp(j n psi) by complex rotation
            __m256d zr = _mm256_set1_pd(1.0);
            __m256d zi = _mm256_setzero_pd();
            __m256d ar = _mm256_setzero_pd();
            __m256d ai = _mm256_setzero_pd();
            for (int n = 0; n < elements; ++n)
            {
                ar = _mm256_add_pd(ar, zr);
                ai = _mm256_add_pd(ai, zi);
                const __m256d nr = _mm256_fmsub_pd(zr, wc, _mm256_mul_pd(zi, ws));
                const __m256d ni = _mm256_fmadd_pd(zr, ws, _mm256_mul_pd(zi, wc));
                zr = nr;
                zi = ni;
            }
            const __m256d mag = _mm256_fmadd_pd(ar, ar, _mm256_mul_pd(ai, ai));
            _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(mag, inv_n));
        }
        if (vec_end < count)
            array_factor_scalar(psi.subspan(vec_end), elements, out.subspan(vec_end));
    }

    void db_to_linear_avx2(std::span<const double> db, std::span<double> out)
    {
        const std::size_t count = db.size();
        const std::size_t vec_end = count - count % lanes;
        const __m256d scale = _mm256_set1_pd(0.23025850929940457); // ln(10) / 10
        for (std::size_t i = 0; i < vec_end; i += lanes)
        {
            const __m256d x = _mm256_loadu_pd(db.data() + i);
            _mm256_storeu_pd(out.data() + i, exp_pd(_mm256_mul_pd(x, scale)));
        }
        if (vec_end < count)
            db_to_linear_scalar(db.subspan(vec_end), out.subspan(vec_end));
    }

    void block_mean_avx2(std::span<const double> values, std::size_t block, std::span<double> out)
    {
        const double inv = 1.0 / static_cast<double>(block);
        const std::size_t vec_end = block - block % lanes;
        for (std::size_t b = 0; b < out.size(); ++b)
        {
            const double *base = values.data() + b * block;
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t k = 0; k < vec_end; k += lanes)
                acc = _mm256_add_pd(acc, _mm256_loadu_pd(base + k));
            double sum = hsum(acc);
            for (std::size_t k = vec_end; k < block; ++k)
                sum += base[k];
            out[b] = sum * inv;
        }
    }

    void correlate_valid_avx2(std::span<const double> x, std::span<const double> taps, std::span<double> out)
    {
        const std::size_t count = out.size();
        const std::size_t vec_end = count - count % lanes;
        for (std::size_t i = 0; i < vec_end; i += lanes)
        {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t j = 0; j < taps.size(); ++j)
                acc = _mm256_fmadd_pd(_mm256_set1_pd(taps[j]), _mm256_loadu_pd(x.data() + i + j), acc);
            _mm256_storeu_pd(out.data() + i, acc);
        }
        if (vec_end < count)
            correlate_valid_scalar(x.subspan(vec_end), taps, out.subspan(vec_end));
    }
}
