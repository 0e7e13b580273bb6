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

#include "ctl/hashing.hpp"

#include <sodium.h>

#include "ctl/params.hpp"

namespace ctl {

namespace {

Bytes digest_n(size_t out_len, std::string_view domain,
               std::initializer_list<ByteSpan> segments) {
    crypto_init();
    crypto_generichash_state st;
    crypto_generichash_init(&st, nullptr, 0, out_len);
    auto absorb = [&st](ByteSpan b) {
        uint8_t len[8];
        for (int i = 0; i < 8; i++) len[i] = static_cast<uint8_t>(b.size() >> (8 * i));
        crypto_generichash_update(&st, len, 8);
        crypto_generichash_update(&st, b.data(), b.size());
    };
    absorb(str_span(domain));
    for (ByteSpan s : segments) absorb(s);
    Bytes out(out_len);
    crypto_generichash_final(&st, out.data(), out_len);
    return out;
}

}  // namespace

Bytes digest32(std::string_view domain, std::initializer_list<ByteSpan> segments) {
    return digest_n(32, domain, segments);
}

Bytes digest64(std::string_view domain, std::initializer_list<ByteSpan> segments) {
    return digest_n(64, domain, segments);
}

Scalar hash_to_scalar(std::string_view domain, std::initializer_list<ByteSpan> segments) {
    return Scalar::reduce_wide(as_span(digest64(domain, segments)));
}

Element hash_to_group(std::string_view label, ByteSpan input) {
    return Element::from_uniform(as_span(digest64("ctl/h2g", {str_span(label), input})));
}

Scalar kdf_scalar(ByteSpan seed, KdfLabel label) {
    switch (label) {
        case KdfLabel::Track:
            return hash_to_scalar("ctl/kdf/track", {seed});
        case KdfLabel::View:
            return hash_to_scalar("ctl/kdf/view", {seed});
        case KdfLabel::SpendSeed:
            return hash_to_scalar("ctl/kdf/spend-seed", {seed});
    }
    throw std::invalid_argument("unknown kdf label");
}

Bytes kdf_own(ByteSpan seed) {
    return digest32("ctl/kdf/own", {seed});
}

std::variant<Scalar, Bytes> kdf(ByteSpan seed, std::string_view label) {
    if (label == "track") return kdf_scalar(seed, KdfLabel::Track);
    if (label == "view") return kdf_scalar(seed, KdfLabel::View);
    if (label == "spend-seed") return kdf_scalar(seed, KdfLabel::SpendSeed);
    if (label == "own") return kdf_own(seed);
    throw std::invalid_argument("unknown kdf label: " + std::string(label));
}

Transcript::Transcript(std::string_view domain) {
    w_.u8(kProtocolVersion);
    w_.var_bytes(str_span(domain));
}

void Transcript::absorb(std::string_view label, ByteSpan data) {
    w_.var_bytes(str_span(label));
    w_.var_bytes(data);
}

void Transcript::absorb_u64(std::string_view label, uint64_t v) {
    Writer tmp;
    tmp.u64(v);
    absorb(label, as_span(tmp.bytes()));
}

Scalar Transcript::challenge(std::string_view label) const {
    return hash_to_scalar("ctl/challenge", {str_span(label), as_span(w_.bytes())});
}

}  // namespace ctl
