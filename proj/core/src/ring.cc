/*
 * Copyright 2026 The securedl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "securedl/ring.h"

#include <cmath>
#include <string>

#include "securedl/errors.h"

namespace securedl {

double FixedPointCodec::MaxMagnitude() const {
  return std::ldexp(1.0, value_bits - frac_bits - 1);
}

double FixedPointCodec::Scale() const { return std::ldexp(1.0, frac_bits); }

void FixedPointCodec::Validate() const {
  if (frac_bits <= 0 || frac_bits >= value_bits - 1 ||
      value_bits + frac_bits > 62) {
    throw ConfigError("fixed-point codec needs 0 < frac_bits < value_bits - 1"
                      " and value_bits + frac_bits <= 62"
                      ", got frac_bits=" + std::to_string(frac_bits) +
                      " value_bits=" + std::to_string(value_bits));
  }
}

RingElement FixedPointCodec::Encode(double x) const {
  if (!std::isfinite(x) || std::fabs(x) >= MaxMagnitude()) {
    throw RangeError("value " + std::to_string(x) +
                     " outside fixed-point range (|x| < " +
                     std::to_string(MaxMagnitude()) + ")");
  }
  // std::llround rounds half away from zero.
  return FromSigned(std::llround(x * Scale()));
}

double FixedPointCodec::Decode(RingElement e) const {
  return static_cast<double>(ToSigned(e)) / Scale();
}

double FixedPointCodec::DecodeDoubleScale(RingElement e) const {
  return static_cast<double>(ToSigned(e)) / (Scale() * Scale());
}

std::int64_t FixedPointCodec::DoubleScaleBound() const {
  return std::int64_t{1} << (value_bits + frac_bits - 1);
}

RingElement EncodeFixed(double x, const FixedPointCodec& codec) {
  return codec.Encode(x);
}

double DecodeFixed(RingElement e, const FixedPointCodec& codec) {
  return codec.Decode(e);
}

}  // namespace securedl
