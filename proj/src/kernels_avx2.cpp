// Copyright 2026 The logchart Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace logchart::kernels {

void axpy_mod_scalar(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q);

// q < 2^15 keeps a + c*b below 2^30. Barrett with mu = floor(2^32 / q)
// leaves the remainder in [0, 2q); one min_epu32 step finishes it.
void axpy_mod_avx2_impl(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q) {
  const auto mu = static_cast<std::uint32_t>((std::uint64_t{1} << 32) / q);
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vq = _mm256_set1_epi32(static_cast<int>(q));
  const __m256i vmu = _mm256_set1_epi32(static_cast<int>(mu));
  const __m256i hi_mask = _mm256_set1_epi64x(static_cast<long long>(0xFFFFFFFF00000000ULL));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i x = _mm256_add_epi32(va, _mm256_mullo_epi32(vb, vc));
    __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(x, vmu), 32);
    __m256i odd = _mm256_and_si256(_mm256_mul_epu32(_mm256_srli_epi64(x, 32), vmu), hi_mask);
    __m256i quot = _mm256_or_si256(even, odd);
    __m256i rem = _mm256_sub_epi32(x, _mm256_mullo_epi32(quot, vq));
    rem = _mm256_min_epu32(rem, _mm256_sub_epi32(rem, vq));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + i), rem);
  }
  if (i < n) axpy_mod_scalar(a + i, b + i, c, n - i, q);
}

}  // namespace logchart::kernels
