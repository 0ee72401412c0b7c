/*
 * Copyright 2026 SpikeQuant Contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "spikequant/common.hpp"

#include <algorithm>
#include <thread>

namespace spikequant {

void matvec(const Matrix& m, std::span<const double> x, std::span<double> y) {
  if (static_cast<int>(x.size()) != m.cols || static_cast<int>(y.size()) != m.rows) {
    throw ConfigError("matvec: dimension mismatch");
  }
  for (int r = 0; r < m.rows; ++r) {
    const double* row = m.a.data() + static_cast<size_t>(r) * m.cols;
    double acc = 0.0;
    for (int c = 0; c < m.cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void matvec_t(const Matrix& m, std::span<const double> x, std::span<double> y) {
  if (static_cast<int>(x.size()) != m.rows || static_cast<int>(y.size()) != m.cols) {
    throw ConfigError("matvec_t: dimension mismatch");
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (int r = 0; r < m.rows; ++r) {
    const double* row = m.a.data() + static_cast<size_t>(r) * m.cols;
    const double xr = x[r];
    for (int c = 0; c < m.cols; ++c) y[c] += row[c] * xr;
  }
}

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  size_t n_workers = std::min<size_t>(static_cast<size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (size_t w = 0; w < n_workers; ++w) {
    size_t lo = n * w / n_workers;
    size_t hi = n * (w + 1) / n_workers;
    pool.emplace_back([lo, hi, &fn] {
      for (size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace spikequant
