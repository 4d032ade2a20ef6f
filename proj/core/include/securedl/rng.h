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

#ifndef SECUREDL_RNG_H_
#define SECUREDL_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace securedl {

// Every random draw in a simulation comes from an engine derived from the
// run seed plus a stream path (round, client, purpose, ...), so that any
// protocol instance can be replayed in isolation and scheduling order never
// affects results.
using Rng = std::mt19937_64;

std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> stream);
Rng DeriveRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

// Stream tags. Values are part of the determinism contract; do not reorder.
enum class Stream : std::uint64_t {
  kInit = 1,
  kPartition = 2,
  kTraining = 3,
  kAttack = 4,
  kSharing = 5,
  kDealer = 6,
  kMozi = 7,
  kDataset = 8,
};

constexpr std::uint64_t Tag(Stream s) { return static_cast<std::uint64_t>(s); }

}  // namespace securedl

#endif  // SECUREDL_RNG_H_
