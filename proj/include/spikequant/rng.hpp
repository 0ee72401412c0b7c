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
#include <cstdint>
#include <string_view>

namespace spikequant {

// Counter-based random stream. Each draw hashes (key, counter) with the
// splitmix64 finalizer, so streams derived from distinct tags are independent
// and reproducible regardless of thread scheduling or call interleaving.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(uint64_t key) : key_(key) {}

  static uint64_t mix(uint64_t z);

  // Derives a child stream key from a tag; chainable.
  RngStream child(std::string_view tag) const;
  RngStream child(uint64_t tag) const;

  uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  // Uniform in [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double u01_open_left() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; platform-independent.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = u01_open_left();
    double u2 = u01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  bool bernoulli(double p) { return u01() < p; }

  uint64_t key() const { return key_; }

 private:
  static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  uint64_t key_ = 0;
  uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace spikequant
