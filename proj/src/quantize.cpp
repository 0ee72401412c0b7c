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
#include "spikequant/quantize.hpp"

#include <algorithm>
#include <cmath>

namespace spikequant {

void FixedPointFormat::validate() const {
  if (word_bits < 2 || word_bits > 32) {
    throw ConfigError("FixedPointFormat: word_bits must be in [2, 32], got " +
                      std::to_string(word_bits));
  }
  if (frac_bits < -512 || frac_bits > 512) {
    throw ConfigError("FixedPointFormat: frac_bits out of sane range, got " +
                      std::to_string(frac_bits));
  }
}

void QuantPolicy::validate() const {
  if (!(grad_scale > 0.0)) {
    throw ConfigError("QuantPolicy: grad_scale must be > 0");
  }
  for (const auto& lq : layers) {
    lq.weight.validate();
    lq.state.validate();
  }
}

namespace {

// Scales x onto the integer grid. The division by a power of two and the
// fractional-part subtraction are both exact for |x/eps| < 2^53.
inline double to_grid(double x, const FixedPointFormat& fmt) {
  return std::ldexp(x, fmt.frac_bits);
}

inline double from_grid(double k, const FixedPointFormat& fmt) {
  return std::ldexp(k, -fmt.frac_bits);
}

}  // namespace

double quantize_stochastic_scalar(double x, const FixedPointFormat& fmt, RngStream& rng) {
  const double lo = fmt.min_value(), hi = fmt.max_value();
  if (x <= lo) return lo;
  if (x >= hi) return hi;
  const double v = to_grid(x, fmt);
  const double k = std::floor(v);
  const double f = v - k;
  return from_grid(f > 0.0 && rng.u01() < f ? k + 1.0 : k, fmt);
}

double quantize_nearest_scalar(double x, const FixedPointFormat& fmt) {
  const double lo = fmt.min_value(), hi = fmt.max_value();
  if (x <= lo) return lo;
  if (x >= hi) return hi;
  const double v = to_grid(x, fmt);
  const double k = std::floor(v);
  const double f = v - k;
  double r;
  if (f > 0.5) {
    r = k + 1.0;
  } else if (f < 0.5) {
    r = k;
  } else {
    // tie: pick the even multiple
    r = (std::fmod(k, 2.0) == 0.0) ? k : k + 1.0;
  }
  return from_grid(r, fmt);
}

QuantResult quantize_stochastic(std::span<const double> x, const FixedPointFormat& fmt,
                                RngStream& rng) {
  fmt.validate();
  check_finite(x, "quantize_stochastic");
  QuantResult out;
  out.values.resize(x.size());
  out.clamp_mask.assign(x.size(), 0);
  const double lo = fmt.min_value(), hi = fmt.max_value();
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo) {
      out.values[i] = lo;
      out.clamp_mask[i] = 1;
    } else if (x[i] > hi) {
      out.values[i] = hi;
      out.clamp_mask[i] = 1;
    } else {
      out.values[i] = quantize_stochastic_scalar(x[i], fmt, rng);
    }
  }
  return out;
}

QuantResult quantize_nearest(std::span<const double> x, const FixedPointFormat& fmt) {
  fmt.validate();
  check_finite(x, "quantize_nearest");
  QuantResult out;
  out.values.resize(x.size());
  out.clamp_mask.assign(x.size(), 0);
  const double lo = fmt.min_value(), hi = fmt.max_value();
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo) {
      out.values[i] = lo;
      out.clamp_mask[i] = 1;
    } else if (x[i] > hi) {
      out.values[i] = hi;
      out.clamp_mask[i] = 1;
    } else {
      out.values[i] = quantize_nearest_scalar(x[i], fmt);
    }
  }
  return out;
}

void mask_gradient_inplace(std::span<double> grad, std::span<const uint8_t> clamp_mask) {
  if (grad.size() != clamp_mask.size()) {
    throw ConfigError("mask_gradient: shape mismatch (" + std::to_string(grad.size()) +
                      " vs " + std::to_string(clamp_mask.size()) + ")");
  }
  for (size_t i = 0; i < grad.size(); ++i) {
    if (clamp_mask[i]) grad[i] = 0.0;
  }
}

Vec mask_gradient(std::span<const double> grad, std::span<const uint8_t> clamp_mask) {
  Vec out(grad.begin(), grad.end());
  mask_gradient_inplace(out, clamp_mask);
  return out;
}

FixedPointFormat calibrate_frac_bits(std::span<const double> x, int word_bits) {
  if (x.empty()) {
    throw DataError("calibrate_frac_bits: empty input");
  }
  check_finite(x, "calibrate_frac_bits");
  double x_max = 0.0, x_min = 0.0, mag = 0.0;
  for (double v : x) {
    x_max = std::max(x_max, v);
    x_min = std::min(x_min, v);
    mag = std::max(mag, std::fabs(v));
  }
  constexpr double kMagFloor = 0x1.0p-20;
  FixedPointFormat fmt;
  fmt.word_bits = word_bits;
  fmt.frac_bits = word_bits - 1 -
                  static_cast<int>(std::ceil(std::log2(std::max(mag, kMagFloor))));
  fmt.validate();
  // The positive half of the range is one quantum short of 2^ceil(log2(mag)),
  // so a maximum in that top sliver still needs one coarser step.
  while (x_max > fmt.max_value() || x_min < fmt.min_value()) {
    --fmt.frac_bits;
  }
  return fmt;
}

QuantResult scaled_update(std::span<const double> w, std::span<const double> grad,
                          double lr, double grad_scale, const FixedPointFormat& weight_fmt,
                          RngStream& rng) {
  if (w.size() != grad.size()) {
    throw ConfigError("scaled_update: shape mismatch");
  }
  Vec updated(w.size());
  const double step = lr * grad_scale;
  for (size_t i = 0; i < w.size(); ++i) updated[i] = w[i] - step * grad[i];
  return quantize_stochastic(updated, weight_fmt, rng);
}

}  // namespace spikequant
