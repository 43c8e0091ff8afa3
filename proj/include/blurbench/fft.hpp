/* Copyright 2026 The blurbench Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Power-of-two FFT used by the correlation filter and the Wiener deblurrer.
// All call sites choose their transform sizes, so only radix-2 is needed.

#ifndef BLURBENCH_FFT_HPP_
#define BLURBENCH_FFT_HPP_

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace blurbench::fft {

using cplx = std::complex<double>;

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// In-place iterative radix-2 transform of a length-n power-of-two range
/// with stride. Inverse includes the 1/n scale.
inline void transform(cplx* data, int n, int stride, bool inverse) {
    if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
    // bit-reversal permutation
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[static_cast<size_t>(i) * stride],
                             data[static_cast<size_t>(j) * stride]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / len;
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                cplx& a = data[static_cast<size_t>(i + k) * stride];
                cplx& b = data[static_cast<size_t>(i + k + len / 2) * stride];
                const cplx u = a, v = b * w;
                a = u + v;
                b = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / n;
        for (int i = 0; i < n; ++i) data[static_cast<size_t>(i) * stride] *= inv;
    }
}

/// Row-major 2-D transform; w and h must be powers of two.
inline void fft2d(std::vector<cplx>& data, int w, int h, bool inverse) {
    if (data.size() != static_cast<size_t>(w) * h)
        throw std::invalid_argument("fft2d: buffer size mismatch");
    for (int y = 0; y < h; ++y) transform(data.data() + static_cast<size_t>(y) * w, w, 1, inverse);
    for (int x = 0; x < w; ++x) transform(data.data() + x, h, w, inverse);
}

}  // namespace blurbench::fft

#endif  // BLURBENCH_FFT_HPP_
