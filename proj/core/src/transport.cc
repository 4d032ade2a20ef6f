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

#include "securedl/transport.h"

#include <string>

#include "securedl/errors.h"

namespace securedl {

std::vector<RingElement> Transport::Open(const Sharing& contributions) {
  if (contributions.parties() != parties_) {
    throw ProtocolError("opening barrier saw " +
                        std::to_string(contributions.parties()) + " of " +
                        std::to_string(parties_) + " parties");
  }
  const auto n = static_cast<std::uint64_t>(parties_);
  ++stats_.rounds;
  stats_.messages += n * (n - 1);
  stats_.words += n * (n - 1) * contributions.size();
  return contributions.Reconstruct();
}

}  // namespace securedl
