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

#include <cstdint>
#include <span>
#include <vector>

#include "spikequant/common.hpp"
#include "spikequant/rng.hpp"

namespace spikequant {

// Signed fixed-point format. Values are integer multiples of eps = 2^-frac_bits
// within a word_bits-wide two's-complement word. frac_bits may be negative
// (grid coarser than 1). All grids are dyadic, so every representable value is
// exact in binary64; quantization is simulated in floating point.
struct FixedPointFormat {
  int word_bits = 8;
  int frac_bits = 0;

  double eps() const { return std::ldexp(1.0, -frac_bits); }
  long long qmin() const { return -(1ll << (word_bits - 1)); }
  long long qmax() const { return (1ll << (word_bits - 1)) - 1; }
  double min_value() const { return static_cast<double>(qmin()) * eps(); }
  double max_value() const { return static_cast<double>(qmax()) * eps(); }

  void validate() const;
};

struct QuantResult {
  Vec values;
  std::vector<uint8_t> clamp_mask;  // 1 where the input was clamped to a range edge
};

// Stochastic rounding: in-range x rounds down to the eps grid with probability
// 1 - f and up with probability f, where f is the fractional position between
// the two neighbouring grid points. E[Q(x)] = clamp(x). Out-of-range entries
// clamp to the nearest range edge and set clamp_mask.
QuantResult quantize_stochastic(std::span<const double> x, const FixedPointFormat& fmt,
                                RngStream& rng);

// Deterministic variant: round-half-to-even on the eps grid, same clamping.
QuantResult quantize_nearest(std::span<const double> x, const FixedPointFormat& fmt);

// Scalar conveniences used by the state-update hot path.
double quantize_stochastic_scalar(double x, const FixedPointFormat& fmt, RngStream& rng);
double quantize_nearest_scalar(double x, const FixedPointFormat& fmt);

// Zeroes grad entries whose forward value was clamped.
void mask_gradient_inplace(std::span<double> grad, std::span<const uint8_t> clamp_mask);
Vec mask_gradient(std::span<const double> grad, std::span<const uint8_t> clamp_mask);

// Picks the largest frac_bits such that every entry of x fits the representable
// range. A floor of 2^-20 on the magnitude guards all-zero input.
FixedPointFormat calibrate_frac_bits(std::span<const double> x, int word_bits);

enum class RoundingMode { Stochastic, Nearest };

struct LayerQuant {
  FixedPointFormat weight;
  FixedPointFormat state;
};

// Per-layer formats plus the update magnification used during fine-tuning.
struct QuantPolicy {
  std::vector<LayerQuant> layers;
  double grad_scale = 1e3;

  void validate() const;
};

// One weight-update step on the quantized grid:
//   w' = Q_stochastic(w - lr * grad_scale * grad)
// Weights live on the grid between updates; the returned clamp mask marks
// entries pinned at a range edge and is applied to the next gradient.
QuantResult scaled_update(std::span<const double> w, std::span<const double> grad,
                          double lr, double grad_scale, const FixedPointFormat& weight_fmt,
                          RngStream& rng);

}  // namespace spikequant
