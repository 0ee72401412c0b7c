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
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikequant {

using Vec = std::vector<double>;

// Error taxonomy; the CLI maps each class to a distinct exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw NumericError(std::string(what) + ": non-finite value");
    }
  }
}

inline void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw NumericError(std::string(what) + ": non-finite value");
  }
}

// Row-major dense matrix, used for dense layer weights and readouts.
struct Matrix {
  int rows = 0;
  int cols = 0;
  Vec a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// y = M x
void matvec(const Matrix& m, std::span<const double> x, std::span<double> y);

// y = M^T x
void matvec_t(const Matrix& m, std::span<const double> x, std::span<double> y);

// Runs fn(i) for i in [0, n). With threads <= 1 runs inline. Results must not
// depend on execution order; chunks are disjoint index ranges.
void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace spikequant
