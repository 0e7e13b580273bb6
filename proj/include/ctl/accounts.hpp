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

#include "ctl/memo.hpp"
#include "ctl/proofs.hpp"

namespace ctl {

// Long-term public key triple: view, tracking and spend public keys.
struct LongTermPublic {
    Element vpk, tpk, pk;

    Bytes encode() const;
    static LongTermPublic decode(Reader& r);
    bool operator==(const LongTermPublic& o) const {
        return vpk == o.vpk && tpk == o.tpk && pk == o.pk;
    }
};

// View key: detects and reads incoming outputs but cannot spend. This is the
// escrow-exportable capability.
struct ViewKey {
    Scalar vsk, tsk;
    LongTermPublic ltp;
};

// Full long-term keys. Receive-only (item) accounts have no spend scalar:
// their spend public key is a hash-to-group image with no known discrete log.
struct LongTermKeys {
    std::optional<Scalar> lts;
    Scalar vsk, tsk;
    LongTermPublic ltp;

    bool receive_only() const { return !lts.has_value(); }
    ViewKey view_key() const { return ViewKey{vsk, tsk, ltp}; }
};

// Spendable account; derives all keys from the seed (random if absent).
LongTermKeys acc_gen(std::optional<ByteSpan> seed = std::nullopt);

// Receive-only account derived from a part identifier. Requires at least
// 96 bits of identifier; throws std::invalid_argument otherwise.
LongTermKeys item_gen(ByteSpan eid);

inline constexpr size_t kMinEidBytes = 12;

// Published one-time output: stealth key, ephemeral key, type-annotated
// amount commitment, blinded type commitment and the encrypted memo.
struct OneTimeAccount {
    Element otpk;
    Element ephemeral;  // R = e*G
    Element com;        // a*T + ck*G
    Element type_com;   // T + s*G with s derived from ck
    uint64_t output_index = 0;
    Bytes memo;

    Bytes encode() const;
    static OneTimeAccount decode(Reader& r);
    bool operator==(const OneTimeAccount& o) const {
        return otpk == o.otpk && ephemeral == o.ephemeral && com == o.com &&
               type_com == o.type_com && output_index == o.output_index && memo == o.memo;
    }
};

struct OtGenResult {
    OneTimeAccount account;
    Scalar coin_key;
};

// Generates a fresh one-time account for ltp holding `amount` of type `ty`.
// output_index distinguishes multiple outputs to one recipient within a
// transaction. Throws std::out_of_range on amounts beyond the range width.
OtGenResult ot_gen(const PublicParams& pp, const LongTermPublic& ltp, const TypeTag& ty,
                   uint64_t amount, uint64_t output_index = 0);

struct ViewResult {
    uint64_t amount = 0;
    TypeTag ty;
    Scalar coin_key;
};

// Detection plus decryption; nullopt when the account is not addressed to
// this view key or the memo is inconsistent/tampered.
std::optional<ViewResult> view(const PublicParams& pp, const ViewKey& ltv,
                               const OneTimeAccount& acc);

struct NoSpendKeyError : std::runtime_error {
    NoSpendKeyError() : std::runtime_error("account has no spend key") {}
};
struct NotAddressedError : std::runtime_error {
    NotAddressedError() : std::runtime_error("account not addressed to these keys") {}
};

// Recovers the one-time secret key; requires the spend scalar.
Scalar receive(const LongTermKeys& keys, const OneTimeAccount& acc);

bool chk_key(const Scalar& sk, const OneTimeAccount& acc);
bool chk_val(const PublicParams& pp, const Scalar& ck, const TypeTag& ty, uint64_t amount,
             const OneTimeAccount& acc);

// Deterministic per-account tag for double-spend detection; leaves the ring
// member unidentified.
Element key_image(const Scalar& sk, const OneTimeAccount& acc);

// Blinding of the published type commitment, derived from the coin key so a
// spender can reconstruct it from View output alone.
Scalar type_blind(const Scalar& coin_key);

// One-time derivation offset h with otpk = pk + h*G, computable from the
// tracking key.
Scalar derivation_offset(const Scalar& tsk, const OneTimeAccount& acc);

}  // namespace ctl
