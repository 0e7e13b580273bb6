//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <variant>

#include "ctl/bytes.hpp"
#include "ctl/group.hpp"

namespace ctl {

// All hashing is BLAKE2b over the canonical encoding: every input segment is
// length-prefixed, and the domain string is the first segment, so distinct
// domains can never collide.

Bytes digest32(std::string_view domain, std::initializer_list<ByteSpan> segments);
Bytes digest64(std::string_view domain, std::initializer_list<ByteSpan> segments);

Scalar hash_to_scalar(std::string_view domain, std::initializer_list<ByteSpan> segments);

// Random-oracle map into the group; no party learns the discrete log of the
// result with respect to the base generator.
Element hash_to_group(std::string_view label, ByteSpan input);

// Key derivation labels. `own` yields a byte string (mapped into the group by
// hash_to_group later, so no scalar preimage of the resulting key exists);
// the other labels yield scalars.
enum class KdfLabel { Track, View, SpendSeed };

Scalar kdf_scalar(ByteSpan seed, KdfLabel label);
Bytes kdf_own(ByteSpan seed);

// String-labelled dispatcher; throws std::invalid_argument on unknown labels.
std::variant<Scalar, Bytes> kdf(ByteSpan seed, std::string_view label);

// Fiat-Shamir transcript: absorbs labelled, length-prefixed segments and
// produces challenge scalars. Every transcript starts with the protocol
// version byte.
class Transcript {
public:
    explicit Transcript(std::string_view domain);

    void absorb(std::string_view label, ByteSpan data);
    void absorb_u64(std::string_view label, uint64_t v);
    void absorb_element(std::string_view label, const Element& e) { absorb(label, e.bytes()); }
    void absorb_scalar(std::string_view label, const Scalar& s) { absorb(label, s.bytes()); }

    Scalar challenge(std::string_view label) const;

private:
    Writer w_;
};

}  // namespace ctl
