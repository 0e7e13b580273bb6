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

#include "ctl/memo.hpp"

#include <sodium.h>

namespace ctl {

namespace {

void derive_keys(const Element& shared, uint8_t key[crypto_secretbox_KEYBYTES],
                 uint8_t nonce[crypto_secretbox_NONCEBYTES]) {
    Bytes k = digest32("ctl/memo-key", {shared.bytes()});
    std::memcpy(key, k.data(), crypto_secretbox_KEYBYTES);
    Bytes n = digest32("ctl/memo-nonce", {shared.bytes()});
    std::memcpy(nonce, n.data(), crypto_secretbox_NONCEBYTES);
}

}  // namespace

Bytes memo_seal(const Element& shared, ByteSpan plaintext) {
    crypto_init();
    uint8_t key[crypto_secretbox_KEYBYTES];
    uint8_t nonce[crypto_secretbox_NONCEBYTES];
    derive_keys(shared, key, nonce);
    Bytes out(plaintext.size() + crypto_secretbox_MACBYTES);
    crypto_secretbox_easy(out.data(), plaintext.data(), plaintext.size(), nonce, key);
    sodium_memzero(key, sizeof key);
    return out;
}

std::optional<Bytes> memo_open(const Element& shared, ByteSpan ciphertext) {
    crypto_init();
    if (ciphertext.size() < crypto_secretbox_MACBYTES) return std::nullopt;
    uint8_t key[crypto_secretbox_KEYBYTES];
    uint8_t nonce[crypto_secretbox_NONCEBYTES];
    derive_keys(shared, key, nonce);
    Bytes out(ciphertext.size() - crypto_secretbox_MACBYTES);
    int rc = crypto_secretbox_open_easy(out.data(), ciphertext.data(), ciphertext.size(),
                                        nonce, key);
    sodium_memzero(key, sizeof key);
    if (rc != 0) return std::nullopt;
    return out;
}

Bytes MemoPlain::encode() const {
    Writer w;
    w.u64(amount);
    w.raw(as_span(ty.encode()));
    w.raw(coin_key.bytes());
    return w.take();
}

std::optional<MemoPlain> MemoPlain::decode(ByteSpan plain) {
    if (plain.size() != kMemoPlainBytes) return std::nullopt;
    try {
        Reader r(plain);
        MemoPlain m;
        m.amount = r.u64();
        m.ty = TypeTag::decode(r);
        auto ck = Scalar::from_bytes(r.raw(32));
        if (!ck) return std::nullopt;
        m.coin_key = *ck;
        r.expect_done();
        return m;
    } catch (const DecodeError&) {
        return std::nullopt;
    }
}

}  // namespace ctl
