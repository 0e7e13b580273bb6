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

#include <optional>

#include "ctl/commit.hpp"

namespace ctl {

// Authenticated memo encryption under a shared group element (the Diffie-
// Hellman secret between the output's ephemeral key and the recipient's view
// key). Key and nonce are derived from the shared secret; each output uses a
// fresh ephemeral, so they never repeat.
Bytes memo_seal(const Element& shared, ByteSpan plaintext);
std::optional<Bytes> memo_open(const Element& shared, ByteSpan ciphertext);

// Fixed memo plaintext layout:
//   amount (8 bytes LE) || type domain (1 byte) || type preimage hash (32) ||
//   blinding scalar (32)
struct MemoPlain {
    uint64_t amount = 0;
    TypeTag ty;
    Scalar coin_key;

    Bytes encode() const;
    static std::optional<MemoPlain> decode(ByteSpan plain);
};

inline constexpr size_t kMemoPlainBytes = 8 + 1 + 32 + 32;

}  // namespace ctl
