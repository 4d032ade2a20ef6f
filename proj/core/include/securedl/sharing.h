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

#ifndef SECUREDL_SHARING_H_
#define SECUREDL_SHARING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "securedl/ring.h"
#include "securedl/rng.h"

namespace securedl {

// One party's additive share of a secret vector.
struct ShareVector {
  int party_id = 0;
  std::vector<RingElement> elems;

  std::size_t size() const { return elems.size(); }
};

// n-out-of-n additive sharing: n uniform-looking vectors whose elementwise sum
// mod 2^64 is the secret. Any n-1 of them are independent and uniform.
std::vector<ShareVector> Share(std::span<const RingElement> secret, int n,
                               Rng& rng);
// Throws ProtocolError on a missing/duplicate party or a length mismatch.
std::vector<RingElement> Reconstruct(std::span<const ShareVector> shares);

// Local, communication-free operations on a single party's share.
ShareVector AddShared(const ShareVector& a, const ShareVector& b);
ShareVector SubShared(const ShareVector& a, const ShareVector& b);
// Only party 0 adds the constant, so the reconstruction shifts by c once.
ShareVector AddPublic(const ShareVector& a, RingElement c);
// Every party scales. With an encoded c the scale becomes 2^(2f).
ShareVector MulPublic(const ShareVector& a, RingElement c);

// The complete set of shares of one value, as held by the in-process
// simulation (index p is party p's share).
class Sharing {
 public:
  Sharing() = default;
  // All-zero sharing of a length-`size` vector.
  Sharing(int parties, std::size_t size);
  explicit Sharing(std::vector<ShareVector> shares);

  // Party 0 holds `values`, everyone else holds zeros.
  static Sharing Public(int parties, std::span<const RingElement> values);
  static Sharing PublicScalar(int parties, RingElement value);
  static Sharing FromSecret(std::span<const RingElement> secret, int parties,
                            Rng& rng);

  int parties() const { return static_cast<int>(shares_.size()); }
  std::size_t size() const {
    return shares_.empty() ? 0 : shares_.front().size();
  }

  ShareVector& party(int p) { return shares_[static_cast<std::size_t>(p)]; }
  const ShareVector& party(int p) const {
    return shares_[static_cast<std::size_t>(p)];
  }
  const std::vector<ShareVector>& shares() const { return shares_; }

  std::vector<RingElement> Reconstruct() const;

 private:
  std::vector<ShareVector> shares_;
};

Sharing Add(const Sharing& a, const Sharing& b);
Sharing Sub(const Sharing& a, const Sharing& b);
Sharing AddPublic(const Sharing& a, RingElement c);
Sharing MulPublic(const Sharing& a, RingElement c);
// public c - a
Sharing PublicMinus(RingElement c, const Sharing& a);
// Sum of all coordinates, as a length-1 sharing.
Sharing SumElements(const Sharing& a);

}  // namespace securedl

#endif  // SECUREDL_SHARING_H_
