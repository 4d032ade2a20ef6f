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

#include "securedl/securedl_rule.h"

#include <string>

#include "securedl/errors.h"
#include "securedl/rng.h"

namespace securedl {
namespace {

using Clock = std::chrono::steady_clock;

class PhaseTimer {
 public:
  explicit PhaseTimer(std::chrono::nanoseconds* sink)
      : sink_(sink), start_(Clock::now()) {}
  ~PhaseTimer() {
    if (sink_ != nullptr) *sink_ += Clock::now() - start_;
  }

 private:
  std::chrono::nanoseconds* sink_;
  Clock::time_point start_;
};

std::chrono::nanoseconds* Slot(PhaseTimes* t,
                               std::chrono::nanoseconds PhaseTimes::*m) {
  return t == nullptr ? nullptr : &(t->*m);
}

}  // namespace

void SecureDlParams::Validate() const {
  codec.Validate();
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw ConfigError("securedl: tau must lie in [0, 1)");
  }
  if (!(linalg.clip_bound > 0.0) || !(linalg.norm_floor > 0.0) ||
      linalg.newton_iterations < 1) {
    throw ConfigError("securedl: clip bound, norm floor and iteration count "
                      "must be positive");
  }
}

TapeBudget SecureDlPairCost(std::size_t dim, const LinalgParams& params) {
  return CosineCost(dim, params) + CompareCost() +
         L2NormalizeCost(dim, params);
}

TapeBudget SecureDlAverageCost(std::size_t dim) { return TruncateCost(dim); }

TapeBudget SecureDlReceiverCost(std::size_t dim, int senders,
                                const LinalgParams& params) {
  return SecureDlPairCost(dim, params) * static_cast<std::uint64_t>(senders) +
         SecureDlAverageCost(dim);
}

PairOutcome SecureDlPair(MpcSession& session, const Sharing& own,
                         const Sharing& received, const SecureDlParams& params,
                         PhaseTimes* times) {
  if (own.size() != received.size()) {
    throw ConfigError("securedl: dimension mismatch between receiver (" +
                      std::to_string(own.size()) + ") and sender (" +
                      std::to_string(received.size()) + ")");
  }
  const auto beaver_before = session.beaver_time();
  PairOutcome out;
  CosineResult cos;
  {
    PhaseTimer timer(Slot(times, &PhaseTimes::cosine));
    cos = CosineSimilarity(session, own, received, params.linalg);
  }
  if (cos.degenerate) {
    out.degenerate = true;
  } else {
    PhaseTimer timer(Slot(times, &PhaseTimes::compare));
    const RingElement threshold = params.codec.Encode(params.tau);
    out.accepted = !session.CompareLtPublic(cos.cosine, threshold);
  }
  if (out.accepted) {
    PhaseTimer timer(Slot(times, &PhaseTimes::normalize));
    NormalizeResult norm = L2Normalize(session, own, received, params.linalg);
    // The cosine step already passed both floors on the same inputs.
    if (norm.degenerate) throw ProtocolError("securedl: inconsistent floor");
    out.contribution = std::move(norm.vector);
  } else {
    out.contribution = Sharing(session.parties(), own.size());
  }
  if (times != nullptr) times->beaver += session.beaver_time() - beaver_before;
  return out;
}

Sharing SecureDlAverage(MpcSession& session, const Sharing& own,
                        std::span<const Sharing> contributions, int divisor) {
  if (divisor < 1) throw ConfigError("securedl: divisor must be positive");
  Sharing sum = own;
  for (const Sharing& c : contributions) sum = Add(sum, c);
  return session.ScaleFixed(sum, 1.0 / static_cast<double>(divisor));
}

TapeProvider SeededTapeProvider(int parties, std::uint64_t seed,
                                const FixedPointCodec& codec) {
  return [parties, seed, codec](std::size_t instance,
                                const TapeBudget& demand) {
    return GenerateTapes(parties, demand, DeriveSeed(seed, {instance}), codec);
  };
}

AggregationDecision SecureDlAggregate(int receiver, const Sharing& own,
                                      std::span<const Sharing> received,
                                      std::span<const int> sender_ids,
                                      const SecureDlParams& params,
                                      const TapeProvider& tapes,
                                      Transcript* transcript,
                                      SecureDlStats* stats) {
  params.Validate();
  if (received.size() != sender_ids.size()) {
    throw ConfigError("securedl: one sender id per received update required");
  }
  const std::size_t dim = own.size();
  const int n = static_cast<int>(received.size()) + 1;

  AggregationDecision decision;
  decision.receiver = receiver;
  decision.senders.assign(sender_ids.begin(), sender_ids.end());
  decision.accepted.assign(received.size(), false);

  auto run_instance = [&](std::size_t instance, const TapeBudget& demand,
                          auto&& body) {
    std::vector<DealerTape> instance_tapes = tapes(instance, demand);
    MpcSession session(instance_tapes, params.codec, transcript);
    body(session);
    if (stats != nullptr) {
      stats->provisioned += demand;
      stats->consumed += session.consumed();
      stats->transport += session.transport_stats();
    }
  };

  const TapeBudget pair_cost = SecureDlPairCost(dim, params.linalg);
  std::vector<Sharing> contributions;
  contributions.reserve(received.size());
  int accepted = 0;
  for (std::size_t j = 0; j < received.size(); ++j) {
    run_instance(j, pair_cost, [&](MpcSession& session) {
      PairOutcome pair =
          SecureDlPair(session, own, received[j], params,
                       stats == nullptr ? nullptr : &stats->times);
      decision.accepted[j] = pair.accepted;
      if (pair.accepted) ++accepted;
      if (pair.degenerate && stats != nullptr) ++stats->degenerate;
      contributions.push_back(std::move(pair.contribution));
    });
  }

  const int divisor = params.divide_by_accepted ? accepted + 1 : n;
  run_instance(received.size(), SecureDlAverageCost(dim),
               [&](MpcSession& session) {
                 const Sharing avg =
                     SecureDlAverage(session, own, contributions, divisor);
                 const std::vector<RingElement> opened =
                     session.OpenOutput(avg);
                 decision.aggregate.resize(opened.size());
                 for (std::size_t i = 0; i < opened.size(); ++i) {
                   decision.aggregate[i] = params.codec.Decode(opened[i]);
                 }
               });
  return decision;
}

}  // namespace securedl
