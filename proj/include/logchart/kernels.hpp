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

// Dense row kernels for linear algebra over Z/q, and the solver over
// Z/p^k built on them.
//
// The scalar kernel is the reference. The AVX2 kernel handles q < 2^15 and
// must agree with it bit for bit; the backend is picked once per process
// from CPU support, and LOGCHART_KERNEL=scalar forces the reference.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace logchart::kernels {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend b);
bool avx2_supported();
Backend active_backend();

// Largest modulus the AVX2 kernel accepts.
inline constexpr std::uint32_t kAvx2MaxModulus = 1U << 15;

// a[i] = (a[i] + c * b[i]) mod q for i < n. Requires a[i], b[i], c < q.
void axpy_mod_scalar(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q);
// Falls back to the scalar kernel when q >= kAvx2MaxModulus or the CPU
// lacks AVX2.
void axpy_mod_avx2(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q);
void axpy_mod(std::uint32_t* a, const std::uint32_t* b, std::uint32_t c, std::size_t n, std::uint32_t q,
              Backend backend = active_backend());

/// Row-major matrix with entries in [0, q).
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t q);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return q_; }
  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint32_t* row(std::size_t r) { return data_.data() + r * cols_; }
  const std::uint32_t* row(std::size_t r) const { return data_.data() + r * cols_; }

 private:
  std::size_t rows_, cols_;
  std::uint32_t q_;
  std::vector<std::uint32_t> data_;
};

struct SolveStats {
  std::size_t rank = 0;
  std::size_t row_operations = 0;
};

/// Solves A x = b_j over Z/p^k for each right-hand side column b_j of `rhs`
/// (rows(A) x r). Entry j is nullopt when that system is inconsistent.
///
/// Elimination proceeds in valuation phases v = 0..k-1: every pivot of phase
/// v has valuation exactly v and every entry left in the active submatrix
/// has valuation >= v, so row operations stay integral and inconsistency is
/// detected exactly.
std::vector<std::optional<std::vector<std::uint32_t>>> solve_mod_prime_power(const ModMatrix& a, const ModMatrix& rhs,
                                                                             std::uint32_t p, unsigned k,
                                                                             SolveStats* stats = nullptr,
                                                                             Backend backend = active_backend());

}  // namespace logchart::kernels
