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

#ifndef SECUREDL_SECUREDL_RULE_H_
#define SECUREDL_SECUREDL_RULE_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "securedl/aggregation.h"
#include "securedl/dealer.h"
#include "securedl/mpc.h"
#include "securedl/ring.h"
#include "securedl/secure_linalg.h"
#include "securedl/sharing.h"
#include "securedl/transcript.h"
#include "securedl/transport.h"

namespace securedl {

struct SecureDlParams {
  // A sender is rejected iff cosine(receiver, sender) < tau.
  double tau = 0.0;
  // Divide the sum by (accepted + 1) instead of n.
  bool divide_by_accepted = true;
  LinalgParams linalg;
  FixedPointCodec codec;

  void Validate() const;
};

struct PhaseTimes {
  std::chrono::nanoseconds cosine{0};
  std::chrono::nanoseconds compare{0};
  std::chrono::nanoseconds normalize{0};
  std::chrono::nanoseconds beaver{0};

  PhaseTimes& operator+=(const PhaseTimes& o) {
    cosine += o.cosine;
    compare += o.compare;
    normalize += o.normalize;
    beaver += o.beaver;
    return *this;
  }
};

// Worst-case preprocessing of one receiver/sender instance (sender accepted).
TapeBudget SecureDlPairCost(std::size_t dim, const LinalgParams& params);
// Preprocessing of the final averaging instance.
TapeBudget SecureDlAverageCost(std::size_t dim);
// Everything one receiver consumes in one round with `senders` senders.
TapeBudget SecureDlReceiverCost(std::size_t dim, int senders,
                                const LinalgParams& params);

struct PairOutcome {
  bool accepted = false;
  // The receiver's or the sender's norm fell below the public floor.
  bool degenerate = false;
  // Zero sharing if rejected, else the sender rescaled to the receiver's norm.
  Sharing contribution;
};

// Filter and normalize one received update.
PairOutcome SecureDlPair(MpcSession& session, const Sharing& own,
                         const Sharing& received, const SecureDlParams& params,
                         PhaseTimes* times = nullptr);

// (own + sum(contributions)) * (1 / divisor).
Sharing SecureDlAverage(MpcSession& session, const Sharing& own,
                        std::span<const Sharing> contributions, int divisor);

// Supplies the n parties' tapes for protocol instance `instance` sized to
// `demand`. Instances 0..m-1 are the pairs in sender order, m the average.
using TapeProvider = std::function<std::vector<DealerTape>(
    std::size_t instance, const TapeBudget& demand)>;

// Tapes from the trusted dealer, seeded per instance from `seed`.
TapeProvider SeededTapeProvider(int parties, std::uint64_t seed,
                                const FixedPointCodec& codec);

struct SecureDlStats {
  PhaseTimes times;
  TapeBudget provisioned;
  TapeBudget consumed;
  TransportStats transport;
  int degenerate = 0;
};

// The SecureDL rule for one receiver: every received sharing is filtered by
// a secure cosine comparison against the receiver's own sharing, accepted
// ones are normalized to the receiver's norm, rejected ones contribute zero,
// and the average is opened to the receiver.
AggregationDecision SecureDlAggregate(int receiver, const Sharing& own,
                                      std::span<const Sharing> received,
                                      std::span<const int> sender_ids,
                                      const SecureDlParams& params,
                                      const TapeProvider& tapes,
                                      Transcript* transcript = nullptr,
                                      SecureDlStats* stats = nullptr);

}  // namespace securedl

#endif  // SECUREDL_SECUREDL_RULE_H_
