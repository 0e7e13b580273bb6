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

#include "ctl/accounts.hpp"

#include <sodium.h>

namespace ctl {

namespace {

Element element_from_reader(Reader& r) {
    auto e = Element::from_bytes(r.raw(kElementBytes));
    if (!e) throw DecodeError("invalid group element");
    return *e;
}

// One-time key offset binding the shared tracking secret and output index.
Scalar ot_offset(const Element& shared_track, uint64_t output_index) {
    Writer w;
    w.u64(output_index);
    return hash_to_scalar("ctl/ot-offset", {shared_track.bytes(), as_span(w.bytes())});
}

}  // namespace

Bytes LongTermPublic::encode() const {
    Writer w;
    w.raw(vpk.bytes());
    w.raw(tpk.bytes());
    w.raw(pk.bytes());
    return w.take();
}

LongTermPublic LongTermPublic::decode(Reader& r) {
    LongTermPublic p;
    p.vpk = element_from_reader(r);
    p.tpk = element_from_reader(r);
    p.pk = element_from_reader(r);
    return p;
}

LongTermKeys acc_gen(std::optional<ByteSpan> seed) {
    crypto_init();
    Bytes s;
    if (seed) {
        s.assign(seed->begin(), seed->end());
    } else {
        s.resize(32);
        randombytes_buf(s.data(), s.size());
    }
    LongTermKeys keys;
    keys.tsk = kdf_scalar(as_span(s), KdfLabel::Track);
    keys.vsk = kdf_scalar(as_span(s), KdfLabel::View);
    keys.lts = kdf_scalar(as_span(s), KdfLabel::SpendSeed);
    keys.ltp.vpk = Element::mul_base(keys.vsk);
    keys.ltp.tpk = Element::mul_base(keys.tsk);
    keys.ltp.pk = Element::mul_base(*keys.lts);
    return keys;
}

LongTermKeys item_gen(ByteSpan eid) {
    crypto_init();
    if (eid.size() < kMinEidBytes) {
        throw std::invalid_argument("eID must be at least 96 bits");
    }
    LongTermKeys keys;
    keys.tsk = kdf_scalar(eid, KdfLabel::Track);
    keys.vsk = kdf_scalar(eid, KdfLabel::View);
    keys.lts = std::nullopt;
    keys.ltp.vpk = Element::mul_base(keys.vsk);
    keys.ltp.tpk = Element::mul_base(keys.tsk);
    // Spend key without a scalar preimage: tokens sent here are locked.
    keys.ltp.pk = hash_to_group("own", as_span(kdf_own(eid)));
    return keys;
}

Bytes OneTimeAccount::encode() const {
    Writer w;
    w.raw(otpk.bytes());
    w.raw(ephemeral.bytes());
    w.raw(com.bytes());
    w.raw(type_com.bytes());
    w.u64(output_index);
    w.var_bytes(as_span(memo));
    return w.take();
}

OneTimeAccount OneTimeAccount::decode(Reader& r) {
    OneTimeAccount a;
    a.otpk = element_from_reader(r);
    a.ephemeral = element_from_reader(r);
    a.com = element_from_reader(r);
    a.type_com = element_from_reader(r);
    a.output_index = r.u64();
    a.memo = r.var_bytes(1024);
    return a;
}

Scalar type_blind(const Scalar& coin_key) {
    return hash_to_scalar("ctl/type-blind", {coin_key.bytes()});
}

OtGenResult ot_gen(const PublicParams& pp, const LongTermPublic& ltp, const TypeTag& ty,
                   uint64_t amount, uint64_t output_index) {
    if (!pp.amount_in_range(amount)) throw std::out_of_range("amount exceeds range width");

    Scalar e = Scalar::random();
    Scalar ck = Scalar::random();
    Element type_gen = ty.generator();

    OneTimeAccount acc;
    acc.ephemeral = Element::mul_base(e);
    acc.output_index = output_index;
    acc.otpk = ltp.pk + Element::mul_base(ot_offset(ltp.tpk * e, output_index));
    acc.com = commit(pp, amount, type_gen, ck).point;
    acc.type_com = type_gen + Element::mul_base(type_blind(ck));
    acc.memo = memo_seal(ltp.vpk * e, as_span(MemoPlain{amount, ty, ck}.encode()));
    return OtGenResult{std::move(acc), ck};
}

std::optional<ViewResult> view(const PublicParams& pp, const ViewKey& ltv,
                               const OneTimeAccount& acc) {
    // Detection via the tracking key only.
    Scalar h = ot_offset(acc.ephemeral * ltv.tsk, acc.output_index);
    if (!(ltv.ltp.pk + Element::mul_base(h) == acc.otpk)) return std::nullopt;

    // Decryption via the view key.
    auto plain = memo_open(acc.ephemeral * ltv.vsk, as_span(acc.memo));
    if (!plain) return std::nullopt;
    auto m = MemoPlain::decode(as_span(*plain));
    if (!m) return std::nullopt;
    if (!pp.amount_in_range(m->amount)) return std::nullopt;

    // The memo must open the published commitments exactly.
    Element type_gen = m->ty.generator();
    if (!(commit(pp, m->amount, type_gen, m->coin_key).point == acc.com)) return std::nullopt;
    if (!(type_gen + Element::mul_base(type_blind(m->coin_key)) == acc.type_com)) {
        return std::nullopt;
    }
    return ViewResult{m->amount, m->ty, m->coin_key};
}

Scalar receive(const LongTermKeys& keys, const OneTimeAccount& acc) {
    if (!keys.lts) throw NoSpendKeyError();
    Scalar h = ot_offset(acc.ephemeral * keys.tsk, acc.output_index);
    if (!(keys.ltp.pk + Element::mul_base(h) == acc.otpk)) throw NotAddressedError();
    return *keys.lts + h;
}

bool chk_key(const Scalar& sk, const OneTimeAccount& acc) {
    return Element::mul_base(sk) == acc.otpk;
}

bool chk_val(const PublicParams& pp, const Scalar& ck, const TypeTag& ty, uint64_t amount,
             const OneTimeAccount& acc) {
    if (!pp.amount_in_range(amount)) return false;
    return commit(pp, amount, ty.generator(), ck).point == acc.com;
}

Element key_image(const Scalar& sk, const OneTimeAccount& acc) {
    return hash_to_group("ki", acc.otpk.bytes()) * sk;
}

Scalar derivation_offset(const Scalar& tsk, const OneTimeAccount& acc) {
    return ot_offset(acc.ephemeral * tsk, acc.output_index);
}

}  // namespace ctl
