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

#include "securedl/sharing.h"

#include <string>
#include <utility>

#include "securedl/errors.h"

namespace securedl {
namespace {

void CheckCompatible(const ShareVector& a, const ShareVector& b) {
  if (a.party_id != b.party_id) {
    throw ProtocolError("share party mismatch: " + std::to_string(a.party_id) +
                        " vs " + std::to_string(b.party_id));
  }
  if (a.size() != b.size()) {
    throw ProtocolError("share length mismatch: " + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()));
  }
}

void CheckCompatible(const Sharing& a, const Sharing& b) {
  if (a.parties() != b.parties()) {
    throw ProtocolError("sharings over different party counts");
  }
  if (a.size() != b.size()) {
    throw ProtocolError("sharing length mismatch: " + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()));
  }
}

template <typename Op>
Sharing Elementwise(const Sharing& a, const Sharing& b, Op op) {
  CheckCompatible(a, b);
  std::vector<ShareVector> out;
  out.reserve(static_cast<std::size_t>(a.parties()));
  for (int p = 0; p < a.parties(); ++p) out.push_back(op(a.party(p), b.party(p)));
  return Sharing(std::move(out));
}

}  // namespace

std::vector<ShareVector> Share(std::span<const RingElement> secret, int n,
                               Rng& rng) {
  if (n < 2) {
    throw ConfigError("secret sharing needs at least 2 parties, got " +
                      std::to_string(n));
  }
  std::vector<ShareVector> shares(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    shares[static_cast<std::size_t>(p)].party_id = p;
    shares[static_cast<std::size_t>(p)].elems.resize(secret.size());
  }
  ShareVector& last = shares.back();
  for (std::size_t i = 0; i < secret.size(); ++i) {
    RingElement acc = 0;
    for (int p = 0; p + 1 < n; ++p) {
      RingElement r = rng();
      shares[static_cast<std::size_t>(p)].elems[i] = r;
      acc += r;
    }
    last.elems[i] = secret[i] - acc;
  }
  return shares;
}

std::vector<RingElement> Reconstruct(std::span<const ShareVector> shares) {
  if (shares.empty()) throw ProtocolError("reconstruct: no shares given");
  const std::size_t n = shares.size();
  std::vector<bool> seen(n, false);
  for (const ShareVector& s : shares) {
    if (s.party_id < 0 || static_cast<std::size_t>(s.party_id) >= n ||
        seen[static_cast<std::size_t>(s.party_id)]) {
      throw ProtocolError("reconstruct: missing or duplicate party (got id " +
                          std::to_string(s.party_id) + ")");
    }
    seen[static_cast<std::size_t>(s.party_id)] = true;
    if (s.size() != shares.front().size()) {
      throw ProtocolError("reconstruct: share length mismatch");
    }
  }
  std::vector<RingElement> out(shares.front().size(), 0);
  for (const ShareVector& s : shares) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s.elems[i];
  }
  return out;
}

ShareVector AddShared(const ShareVector& a, const ShareVector& b) {
  CheckCompatible(a, b);
  ShareVector out{a.party_id, a.elems};
  for (std::size_t i = 0; i < out.size(); ++i) out.elems[i] += b.elems[i];
  return out;
}

ShareVector SubShared(const ShareVector& a, const ShareVector& b) {
  CheckCompatible(a, b);
  ShareVector out{a.party_id, a.elems};
  for (std::size_t i = 0; i < out.size(); ++i) out.elems[i] -= b.elems[i];
  return out;
}

ShareVector AddPublic(const ShareVector& a, RingElement c) {
  ShareVector out = a;
  if (a.party_id == 0) {
    for (RingElement& e : out.elems) e += c;
  }
  return out;
}

ShareVector MulPublic(const ShareVector& a, RingElement c) {
  ShareVector out = a;
  for (RingElement& e : out.elems) e *= c;
  return out;
}

Sharing::Sharing(int parties, std::size_t size) {
  shares_.resize(static_cast<std::size_t>(parties));
  for (int p = 0; p < parties; ++p) {
    shares_[static_cast<std::size_t>(p)].party_id = p;
    shares_[static_cast<std::size_t>(p)].elems.assign(size, 0);
  }
}

Sharing::Sharing(std::vector<ShareVector> shares) : shares_(std::move(shares)) {
  for (std::size_t p = 0; p < shares_.size(); ++p) {
    if (shares_[p].party_id != static_cast<int>(p)) {
      throw ProtocolError("sharing: shares must be ordered by party id");
    }
    if (shares_[p].size() != shares_.front().size()) {
      throw ProtocolError("sharing: share length mismatch");
    }
  }
}

Sharing Sharing::Public(int parties, std::span<const RingElement> values) {
  Sharing out(parties, values.size());
  out.party(0).elems.assign(values.begin(), values.end());
  return out;
}

Sharing Sharing::PublicScalar(int parties, RingElement value) {
  return Public(parties, std::span<const RingElement>(&value, 1));
}

Sharing Sharing::FromSecret(std::span<const RingElement> secret, int parties,
                            Rng& rng) {
  return Sharing(Share(secret, parties, rng));
}

std::vector<RingElement> Sharing::Reconstruct() const {
  return securedl::Reconstruct(shares_);
}

Sharing Add(const Sharing& a, const Sharing& b) {
  return Elementwise(a, b, [](const ShareVector& x, const ShareVector& y) {
    return AddShared(x, y);
  });
}

Sharing Sub(const Sharing& a, const Sharing& b) {
  return Elementwise(a, b, [](const ShareVector& x, const ShareVector& y) {
    return SubShared(x, y);
  });
}

Sharing AddPublic(const Sharing& a, RingElement c) {
  Sharing out = a;
  if (out.parties() > 0) {
    for (RingElement& e : out.party(0).elems) e += c;
  }
  return out;
}

Sharing MulPublic(const Sharing& a, RingElement c) {
  Sharing out = a;
  for (int p = 0; p < out.parties(); ++p) {
    for (RingElement& e : out.party(p).elems) e *= c;
  }
  return out;
}

Sharing PublicMinus(RingElement c, const Sharing& a) {
  return AddPublic(MulPublic(a, RingNeg(1)), c);
}

Sharing SumElements(const Sharing& a) {
  Sharing out(a.parties(), 1);
  for (int p = 0; p < a.parties(); ++p) {
    RingElement acc = 0;
    for (RingElement e : a.party(p).elems) acc += e;
    out.party(p).elems[0] = acc;
  }
  return out;
}

}  // namespace securedl
