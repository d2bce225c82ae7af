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

#include "logchart/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "logchart/error.hpp"

namespace logchart::kernels {

// Defined in kernels_avx2.cpp when the target supports it.
#if defined(LOGCHART_HAVE_AVX2)
void axpy_mod_avx2_impl(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q);
#endif

std::string_view backend_name(Backend b) { return b == Backend::kAvx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(LOGCHART_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() {
  static const Backend chosen = [] {
    const char* env = std::getenv("LOGCHART_KERNEL");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::kScalar;
    return avx2_supported() ? Backend::kAvx2 : Backend::kScalar;
  }();
  return chosen;
}

void axpy_mod_scalar(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q) {
  const std::uint64_t cc = c;
  for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<std::uint32_t>((a[i] + cc * b[i]) % q);
}

void axpy_mod_avx2(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q) {
#if defined(LOGCHART_HAVE_AVX2)
  if (q < kAvx2MaxModulus && avx2_supported()) {
    axpy_mod_avx2_impl(a, b, c, n, q);
    return;
  }
#endif
  axpy_mod_scalar(a, b, c, n, q);
}

void axpy_mod(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q,
              Backend backend) {
  if (c == 0 || n == 0) return;
  if (backend == Backend::kAvx2) {
    axpy_mod_avx2(a, b, c, n, q);
  } else {
    axpy_mod_scalar(a, b, c, n, q);
  }
}

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t q)
    : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {
  if (q < 2) fail(ErrorCode::kInvalidArgument, "modulus must be at least 2");
}

namespace {

std::uint32_t inverse_mod(std::uint32_t u, std::uint32_t m) {
  if (m == 1) return 0;
  std::int64_t t0 = 0, t1 = 1, r0 = m, r1 = u % m;
  while (r1 != 0) {
    std::int64_t quo = r0 / r1;
    std::int64_t t = t0 - quo * t1;
    t0 = t1;
    t1 = t;
    t = r0 - quo * r1;
    r0 = r1;
    r1 = t;
  }
  if (r0 != 1) fail(ErrorCode::kInvalidArgument, "pivot is not a unit");
  return static_cast<std::uint32_t>(t0 < 0 ? t0 + m : t0);
}

struct Pivot {
  std::size_t row, col;
  unsigned valuation;
  std::uint32_t unit_inverse;  // of a[row][col] / p^v modulo p^(k-v)
};

}  // namespace

std::vector<std::optional<std::vector<std::uint32_t>>> solve_mod_prime_power(const ModMatrix& a, const ModMatrix& rhs,
                                                                             std::uint32_t p, unsigned k,
                                                                             SolveStats* stats, Backend backend) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "exponent must be positive");
  if (rhs.rows() != a.rows()) fail(ErrorCode::kInvalidArgument, "right-hand side row count mismatch");
  std::vector<std::uint64_t> pw(k + 1, 1);
  for (unsigned i = 1; i <= k; ++i) {
    pw[i] = pw[i - 1] * p;
    if (pw[i] > UINT32_MAX) fail(ErrorCode::kInvalidArgument, "modulus does not fit in 32 bits");
  }
  const auto q = static_cast<std::uint32_t>(pw[k]);
  if (a.modulus() != q || rhs.modulus() != q) fail(ErrorCode::kInvalidArgument, "matrix modulus is not p^k");

  const std::size_t m = a.rows(), n = a.cols(), r = rhs.cols(), width = n + r;
  // Augmented rows [A | B].
  ModMatrix w(m, width, q);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(a.row(i), a.row(i) + n, w.row(i));
    std::copy(rhs.row(i), rhs.row(i) + r, w.row(i) + n);
  }

  std::vector<char> row_used(m, 0), col_used(n, 0);
  std::vector<Pivot> pivots;
  std::size_t ops = 0;
  for (unsigned v = 0; v < k; ++v) {
    const std::uint32_t pv = static_cast<std::uint32_t>(pw[v]);
    const std::uint32_t mod_rest = static_cast<std::uint32_t>(pw[k - v]);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t c = 0; c < n; ++c) {
        if (col_used[c]) continue;
        std::size_t piv = m;
        for (std::size_t i = 0; i < m; ++i) {
          std::uint32_t x = w.at(i, c);
          if (!row_used[i] && x != 0 && (x / pv) % p != 0) {
            piv = i;
            break;
          }
        }
        if (piv == m) continue;
        const std::uint32_t unit = (w.at(piv, c) / pv) % mod_rest;
        const std::uint32_t uinv = inverse_mod(unit, mod_rest);
        // Span of the pivot row that can be nonzero.
        std::size_t lo = 0;
        while (lo < n && w.at(piv, lo) == 0) ++lo;
        const std::uint32_t* prow = w.row(piv) + lo;
        for (std::size_t i = 0; i < m; ++i) {
          if (row_used[i] || i == piv) continue;
          std::uint32_t x = w.at(i, c);
          if (x == 0) continue;
          // x has valuation >= v, so x / p^v is exact.
          std::uint64_t t = (static_cast<std::uint64_t>(x / pv) * uinv) % mod_rest;
          axpy_mod(w.row(i) + lo, prow, static_cast<std::uint32_t>((q - t) % q), width - lo, q, backend);
          ++ops;
        }
        row_used[piv] = 1;
        col_used[c] = 1;
        pivots.push_back({piv, c, v, uinv});
        progress = true;
      }
    }
  }
  if (stats != nullptr) {
    stats->rank = pivots.size();
    stats->row_operations = ops;
  }

  std::vector<std::optional<std::vector<std::uint32_t>>> out(r);
  for (std::size_t j = 0; j < r; ++j) {
    bool consistent = true;
    for (std::size_t i = 0; i < m && consistent; ++i)
      if (!row_used[i] && w.at(i, n + j) != 0) consistent = false;
    for (const auto& pv : pivots)
      if (w.at(pv.row, n + j) % pw[pv.valuation] != 0) consistent = false;
    if (!consistent) continue;
    std::vector<std::uint32_t> x(n, 0);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const std::uint32_t* row = w.row(it->row);
      std::uint64_t acc = row[n + j];
      for (std::size_t c = 0; c < n; ++c) {
        if (c == it->col || x[c] == 0 || row[c] == 0) continue;
        acc = (acc + static_cast<std::uint64_t>(q - row[c]) * x[c]) % q;
      }
      // Divisible by p^v: every remaining entry of the row has valuation >= v.
      const std::uint64_t mod_rest = pw[k - it->valuation];
      x[it->col] = static_cast<std::uint32_t>(((acc / pw[it->valuation]) % mod_rest) * it->unit_inverse % mod_rest);
    }
    out[j] = std::move(x);
  }
  return out;
}

}  // namespace logchart::kernels
