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

#ifndef SECUREDL_RING_H_
#define SECUREDL_RING_H_

#include <cstdint>

namespace securedl {

// An element of Z_{2^64}. Unsigned arithmetic wraps, which is exactly the
// ring operation; there is no saturation anywhere in the library.
using RingElement = std::uint64_t;

constexpr RingElement RingAdd(RingElement a, RingElement b) { return a + b; }
constexpr RingElement RingSub(RingElement a, RingElement b) { return a - b; }
constexpr RingElement RingMul(RingElement a, RingElement b) { return a * b; }
constexpr RingElement RingNeg(RingElement a) { return RingElement{0} - a; }

// Two's-complement view of a ring element.
constexpr std::int64_t ToSigned(RingElement a) {
  return static_cast<std::int64_t>(a);
}
constexpr RingElement FromSigned(std::int64_t v) {
  return static_cast<RingElement>(v);
}

// Arithmetic right shift of the signed interpretation.
constexpr RingElement SignedShiftRight(RingElement a, int bits) {
  return FromSigned(ToSigned(a) >> bits);
}

// Fixed-point embedding of reals into the ring.
//
// A real x is stored as round(x * 2^frac_bits) in two's complement. Values
// are legal when |x| < 2^(value_bits - frac_bits - 1); the remaining
// 64 - value_bits high bits are statistical headroom for masked openings and
// for products at scale 2^(2 * frac_bits).
struct FixedPointCodec {
  int frac_bits = 16;
  int value_bits = 32;

  // Largest magnitude (exclusive) that Encode accepts.
  double MaxMagnitude() const;
  double Scale() const;
  // Throws ConfigError unless 0 < frac_bits < value_bits - 1 and
  // value_bits + frac_bits <= 62 (truncation masks need the headroom).
  void Validate() const;

  // round-half-away-from-zero; throws RangeError outside the legal range.
  RingElement Encode(double x) const;
  double Decode(RingElement e) const;
  // Decodes a raw product that still carries scale 2^(2 * frac_bits).
  double DecodeDoubleScale(RingElement e) const;
  // Exclusive bound on |signed value| of a product at scale 2^(2 f) whose
  // real value is legal.
  std::int64_t DoubleScaleBound() const;
};

RingElement EncodeFixed(double x, const FixedPointCodec& codec = {});
double DecodeFixed(RingElement e, const FixedPointCodec& codec = {});

}  // namespace securedl

#endif  // SECUREDL_RING_H_
