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

#ifndef SECUREDL_TRANSPORT_H_
#define SECUREDL_TRANSPORT_H_

#include <cstdint>
#include <vector>

#include "securedl/ring.h"
#include "securedl/sharing.h"

namespace securedl {

struct TransportStats {
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  std::uint64_t words = 0;

  TransportStats& operator+=(const TransportStats& o) {
    rounds += o.rounds;
    messages += o.messages;
    words += o.words;
    return *this;
  }
};

// In-process broadcast channel between the n computation parties. An opening
// is a barrier: it completes only once all n parties have contributed, after
// which every party holds the same public sum. Delivery is reliable and in
// order.
class Transport {
 public:
  explicit Transport(int parties) : parties_(parties) {}

  int parties() const { return parties_; }

  // `contributions.party(p)` is the message party p broadcasts.
  std::vector<RingElement> Open(const Sharing& contributions);

  const TransportStats& stats() const { return stats_; }

 private:
  int parties_;
  TransportStats stats_;
};

}  // namespace securedl

#endif  // SECUREDL_TRANSPORT_H_
