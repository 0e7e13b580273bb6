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

#include "ctl/transactions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ctl {

namespace {

Element element_from_reader(Reader& r) {
    auto e = Element::from_bytes(r.raw(kElementBytes));
    if (!e) throw DecodeError("invalid group element");
    return *e;
}

Bytes proof_ctx(std::string_view role, ByteSpan section_digest, uint64_t index) {
    Writer w;
    w.u64(index);
    return digest32("ctl/proof-ctx", {str_span(role), section_digest, as_span(w.bytes())});
}

Bytes conservation_ctx(const TransactionBody& body) {
    Writer w;
    w.u8(static_cast<uint8_t>(body.kind));
    w.u64(body.sections.size());
    for (size_t i = 0; i < body.sections.size(); i++) w.raw(as_span(body.section_digest(i)));
    return digest32("ctl/conserve-ctx", {as_span(w.bytes())});
}

// Ring clause: knows sk for member m (same sk links the key image), and the
// member's value and type commitments differ from the pseudo commitments by
// known multiples of G.
std::vector<SigmaClause> membership_clauses(const std::vector<OneTimeAccount>& ring,
                                            const Element& key_image,
                                            const Element& pseudo_com,
                                            const Element& type_com) {
    std::vector<SigmaClause> clauses;
    clauses.reserve(ring.size());
    const Element& g = Element::base();
    for (const OneTimeAccount& m : ring) {
        Element hp = hash_to_group("ki", m.otpk.bytes());
        SigmaClause cl;
        cl.relations.push_back(SigmaRelation{{SigmaPair{g, m.otpk}, SigmaPair{hp, key_image}}});
        cl.relations.push_back(SigmaRelation{{SigmaPair{g, m.com - pseudo_com}}});
        cl.relations.push_back(SigmaRelation{{SigmaPair{g, m.type_com - type_com}}});
        clauses.push_back(std::move(cl));
    }
    return clauses;
}

// Output type legitimacy: the blinded type commitment blinds one of the
// first m registered generators.
std::vector<SigmaClause> type_link_clauses(const Element& type_com,
                                           const std::vector<Element>& registry_prefix) {
    std::vector<SigmaClause> clauses;
    clauses.reserve(registry_prefix.size());
    const Element& g = Element::base();
    for (const Element& t : registry_prefix) {
        clauses.push_back(SigmaClause{{SigmaRelation{{SigmaPair{g, type_com - t}}}}});
    }
    return clauses;
}

struct u128 {
    unsigned __int128 v = 0;
};

}  // namespace

Bytes InputBundle::encode() const {
    Writer w;
    w.u64(ring.size());
    for (const Element& m : ring) w.raw(m.bytes());
    w.raw(key_image.bytes());
    w.raw(pseudo_com.bytes());
    w.raw(type_com.bytes());
    return w.take();
}

InputBundle InputBundle::decode(Reader& r) {
    InputBundle b;
    uint64_t n = r.u64();
    if (n == 0 || n > 4096) throw DecodeError("bad ring size");
    for (uint64_t i = 0; i < n; i++) b.ring.push_back(element_from_reader(r));
    b.key_image = element_from_reader(r);
    b.pseudo_com = element_from_reader(r);
    b.type_com = element_from_reader(r);
    return b;
}

Bytes TxSection::encode() const {
    Writer w;
    w.u64(inputs.size());
    for (const InputBundle& in : inputs) w.raw(as_span(in.encode()));
    w.u64(outputs.size());
    for (const OneTimeAccount& out : outputs) w.raw(as_span(out.encode()));
    return w.take();
}

TxSection TxSection::decode(Reader& r) {
    TxSection s;
    uint64_t nin = r.u64();
    if (nin > 4096) throw DecodeError("bad input count");
    for (uint64_t i = 0; i < nin; i++) s.inputs.push_back(InputBundle::decode(r));
    uint64_t nout = r.u64();
    if (nout > 4096) throw DecodeError("bad output count");
    for (uint64_t i = 0; i < nout; i++) s.outputs.push_back(OneTimeAccount::decode(r));
    return s;
}

Bytes TransactionBody::encode() const {
    Writer w;
    w.u8(static_cast<uint8_t>(kind));
    w.u64(sections.size());
    for (const TxSection& s : sections) w.raw(as_span(s.encode()));
    if (kind == TxKind::CoinGen) {
        w.u64(revealed_types.size());
        for (const TypeTag& t : revealed_types) w.raw(as_span(t.encode()));
    }
    return w.take();
}

TransactionBody TransactionBody::decode(Reader& r) {
    TransactionBody b;
    uint8_t kind = r.u8();
    if (kind > 1) throw DecodeError("bad transaction kind");
    b.kind = static_cast<TxKind>(kind);
    uint64_t n = r.u64();
    if (n == 0 || n > 64) throw DecodeError("bad section count");
    for (uint64_t i = 0; i < n; i++) b.sections.push_back(TxSection::decode(r));
    if (b.kind == TxKind::CoinGen) {
        uint64_t nt = r.u64();
        if (nt > 4096) throw DecodeError("bad type count");
        for (uint64_t i = 0; i < nt; i++) b.revealed_types.push_back(TypeTag::decode(r));
    }
    return b;
}

Bytes TransactionBody::digest() const {
    return digest32("ctl/tx-body", {as_span(encode())});
}

Bytes TransactionBody::section_digest(size_t index) const {
    Writer w;
    w.raw(as_span(sections.at(index).encode()));
    if (kind == TxKind::CoinGen) {
        w.u64(revealed_types.size());
        for (const TypeTag& t : revealed_types) w.raw(as_span(t.encode()));
    }
    return digest32("ctl/section", {as_span(w.bytes())});
}

size_t TransactionBody::input_count() const {
    size_t n = 0;
    for (const TxSection& s : sections) n += s.inputs.size();
    return n;
}

size_t TransactionBody::output_count() const {
    size_t n = 0;
    for (const TxSection& s : sections) n += s.outputs.size();
    return n;
}

Bytes InputProofs::encode() const {
    Writer w;
    w.raw(as_span(membership.encode()));
    w.raw(as_span(link.encode()));
    return w.take();
}

InputProofs InputProofs::decode(Reader& r) {
    InputProofs p;
    p.membership = OrProof::decode(r);
    p.link = RepresentationProof::decode(r);
    return p;
}

Bytes OutputProofs::encode(TxKind kind) const {
    Writer w;
    w.raw(as_span(range.encode()));
    if (kind == TxKind::Spend) {
        w.u64(registry_count);
        w.raw(as_span(type_link.encode()));
    } else {
        w.raw(as_span(type_link_direct.encode()));
    }
    return w.take();
}

OutputProofs OutputProofs::decode(Reader& r, TxKind kind) {
    OutputProofs p;
    p.range = RangeProof::decode(r);
    if (kind == TxKind::Spend) {
        p.registry_count = r.u64();
        if (p.registry_count == 0 || p.registry_count > 1u << 20) {
            throw DecodeError("bad registry count");
        }
        p.type_link = OrProof::decode(r);
    } else {
        p.type_link_direct = DlogProof::decode(r);
    }
    return p;
}

Bytes TxSignature::encode(const TransactionBody& body) const {
    Writer w;
    for (size_t si = 0; si < body.sections.size(); si++) {
        for (const InputProofs& ip : inputs[si]) w.raw(as_span(ip.encode()));
        for (const OutputProofs& op : outputs[si]) w.raw(as_span(op.encode(body.kind)));
    }
    if (body.kind == TxKind::Spend) w.raw(as_span(conservation.encode()));
    return w.take();
}

TxSignature TxSignature::decode(Reader& r, const TransactionBody& body) {
    TxSignature sig;
    sig.inputs.resize(body.sections.size());
    sig.outputs.resize(body.sections.size());
    for (size_t si = 0; si < body.sections.size(); si++) {
        for (size_t i = 0; i < body.sections[si].inputs.size(); i++) {
            sig.inputs[si].push_back(InputProofs::decode(r));
        }
        for (size_t i = 0; i < body.sections[si].outputs.size(); i++) {
            sig.outputs[si].push_back(OutputProofs::decode(r, body.kind));
        }
    }
    if (body.kind == TxKind::Spend) sig.conservation = DlogProof::decode(r);
    return sig;
}

Bytes Transaction::encode() const {
    Writer w;
    w.var_bytes(as_span(body.encode()));
    w.var_bytes(as_span(sig.encode(body)));
    return w.take();
}

Transaction Transaction::decode(ByteSpan data) {
    Reader r(data);
    Bytes body_bytes = r.var_bytes(1u << 26);
    Bytes sig_bytes = r.var_bytes(1u << 26);
    r.expect_done();

    Transaction tx;
    Reader br(as_span(body_bytes));
    tx.body = TransactionBody::decode(br);
    br.expect_done();
    Reader sr(as_span(sig_bytes));
    tx.sig = TxSignature::decode(sr, tx.body);
    sr.expect_done();
    return tx;
}

Bytes Transaction::txid() const {
    return digest32("ctl/txid", {as_span(encode())});
}

Bytes Offer::encode() const {
    Writer w;
    w.raw(as_span(section.encode()));
    for (const InputProofs& ip : input_proofs) w.raw(as_span(ip.encode()));
    for (const OutputProofs& op : output_proofs) w.raw(as_span(op.encode(TxKind::Spend)));
    w.raw(blinding_sum.bytes());
    return w.take();
}

Offer Offer::decode(ByteSpan data) {
    Reader r(data);
    Offer o;
    o.section = TxSection::decode(r);
    for (size_t i = 0; i < o.section.inputs.size(); i++) {
        o.input_proofs.push_back(InputProofs::decode(r));
    }
    for (size_t i = 0; i < o.section.outputs.size(); i++) {
        o.output_proofs.push_back(OutputProofs::decode(r, TxKind::Spend));
    }
    auto s = Scalar::from_bytes(r.raw(kScalarBytes));
    if (!s) throw DecodeError("non-canonical blinding sum");
    o.blinding_sum = *s;
    r.expect_done();

    TransactionBody tmp;
    tmp.kind = TxKind::Spend;
    tmp.sections.push_back(o.section);
    o.binding_digest = tmp.section_digest(0);
    return o;
}

namespace {

void check_balanced(const std::vector<SpendInput>& sources,
                    const std::vector<OutputAssignment>& targets) {
    std::map<Bytes, std::pair<u128, u128>> sums;
    for (const SpendInput& s : sources) sums[s.ty.id()].first.v += s.amount;
    for (const OutputAssignment& t : targets) sums[t.ty.id()].second.v += t.amount;
    for (const auto& [id, pair] : sums) {
        if (pair.first.v != pair.second.v) {
            throw TxBuildError(TxBuildErrc::ConservationViolated,
                               "per-type input and output sums differ");
        }
    }
}

}  // namespace

Offer make_offer(const PublicParams& pp, std::vector<SpendInput> sources,
                 std::vector<OutputAssignment> targets, const RingSampler& sampler,
                 const std::vector<Element>& registry_generators, bool require_balanced) {
    if (sources.empty() || targets.empty()) {
        throw TxBuildError(TxBuildErrc::EmptyTransaction, "offer needs inputs and outputs");
    }
    if (pp.ring_size < 2) {
        throw TxBuildError(TxBuildErrc::RingTooSmall, "ring size must be at least 2");
    }

    for (const SpendInput& s : sources) {
        if (!pp.amount_in_range(s.amount)) {
            throw TxBuildError(TxBuildErrc::AmountOutOfRange, "input amount out of range");
        }
        if (!chk_key(s.sk, s.account) || !chk_val(pp, s.coin_key, s.ty, s.amount, s.account)) {
            throw TxBuildError(TxBuildErrc::InputNotOwned, "input keys do not open the account");
        }
    }
    for (const OutputAssignment& t : targets) {
        if (!pp.amount_in_range(t.amount)) {
            throw TxBuildError(TxBuildErrc::AmountOutOfRange, "output amount out of range");
        }
        if (!chk_val(pp, t.coin_key, t.ty, t.amount, t.account)) {
            throw std::invalid_argument("output assignment does not open its account");
        }
    }
    if (require_balanced) check_balanced(sources, targets);

    // Canonical ordering before any hashing.
    struct PreparedInput {
        SpendInput src;
        Element key_image;
    };
    std::vector<PreparedInput> prepared;
    prepared.reserve(sources.size());
    for (SpendInput& s : sources) {
        Element ki = key_image(s.sk, s.account);
        prepared.push_back(PreparedInput{std::move(s), ki});
    }
    std::sort(prepared.begin(), prepared.end(), [](const auto& a, const auto& b) {
        return Bytes(a.key_image.bytes().begin(), a.key_image.bytes().end()) <
               Bytes(b.key_image.bytes().begin(), b.key_image.bytes().end());
    });
    for (size_t i = 1; i < prepared.size(); i++) {
        if (prepared[i].key_image == prepared[i - 1].key_image) {
            throw TxBuildError(TxBuildErrc::DuplicateKeyImage, "offer spends an account twice");
        }
    }
    std::sort(targets.begin(), targets.end(), [](const auto& a, const auto& b) {
        return a.account.encode() < b.account.encode();
    });

    Offer offer;
    Scalar blinding_sum = Scalar::zero();
    struct RingData {
        std::vector<OneTimeAccount> members;
        size_t true_index = 0;
        Scalar delta, tau;
    };
    std::vector<RingData> rings;

    for (const PreparedInput& pi : prepared) {
        const SpendInput& s = pi.src;
        std::vector<OneTimeAccount> ring = sampler(s.account, pp.ring_size - 1);
        // Drop duplicates and the true member itself; clamp to the request.
        std::set<Bytes> seen;
        seen.insert(Bytes(s.account.otpk.bytes().begin(), s.account.otpk.bytes().end()));
        std::vector<OneTimeAccount> members;
        for (OneTimeAccount& m : ring) {
            Bytes k(m.otpk.bytes().begin(), m.otpk.bytes().end());
            if (seen.insert(k).second && members.size() + 1 < pp.ring_size) {
                members.push_back(std::move(m));
            }
        }
        members.push_back(s.account);
        std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) {
            return a.otpk < b.otpk;
        });
        size_t true_index =
            std::find_if(members.begin(), members.end(),
                         [&](const OneTimeAccount& m) { return m.otpk == s.account.otpk; }) -
            members.begin();

        Scalar p = Scalar::random();
        Scalar t = Scalar::random();
        Element type_gen = s.ty.generator();

        InputBundle bundle;
        bundle.ring.reserve(members.size());
        for (const OneTimeAccount& m : members) bundle.ring.push_back(m.otpk);
        bundle.key_image = pi.key_image;
        bundle.pseudo_com = commit(pp, s.amount, type_gen, p).point;
        bundle.type_com = type_gen + Element::mul_base(t);
        offer.section.inputs.push_back(std::move(bundle));

        rings.push_back(RingData{std::move(members), true_index, s.coin_key - p,
                                 type_blind(s.coin_key) - t});
        blinding_sum = blinding_sum + p;
    }

    for (const OutputAssignment& t : targets) {
        offer.section.outputs.push_back(t.account);
        blinding_sum = blinding_sum - t.coin_key;
    }

    TransactionBody tmp;
    tmp.kind = TxKind::Spend;
    tmp.sections.push_back(offer.section);
    offer.binding_digest = tmp.section_digest(0);
    offer.blinding_sum = blinding_sum;

    // Secret-key-dependent part: ring membership and pseudo-commitment links.
    for (size_t i = 0; i < prepared.size(); i++) {
        const SpendInput& s = prepared[i].src;
        const InputBundle& bundle = offer.section.inputs[i];
        const RingData& rd = rings[i];

        InputProofs proofs;
        proofs.membership = or_prove(
            membership_clauses(rd.members, bundle.key_image, bundle.pseudo_com, bundle.type_com),
            rd.true_index, {s.sk, rd.delta, rd.tau},
            as_span(proof_ctx("membership", as_span(offer.binding_digest), i)));
        // pseudo = a*V + (p - a*t)*G
        Scalar a_scalar = Scalar::from_u64(s.amount);
        Scalar g_part = (s.coin_key - rd.delta) - a_scalar * (type_blind(s.coin_key) - rd.tau);
        proofs.link = representation_prove(
            bundle.type_com, Element::base(), bundle.pseudo_com, a_scalar, g_part,
            as_span(proof_ctx("link", as_span(offer.binding_digest), i)));
        offer.input_proofs.push_back(std::move(proofs));
    }

    for (size_t i = 0; i < targets.size(); i++) {
        const OutputAssignment& t = targets[i];
        Scalar s_blind = type_blind(t.coin_key);
        Element type_gen = t.ty.generator();

        OutputProofs proofs;
        Scalar aux_blinding = t.coin_key - Scalar::from_u64(t.amount) * s_blind;
        proofs.range =
            range_prove(pp, t.amount, t.account.type_com, aux_blinding,
                        as_span(proof_ctx("range", as_span(offer.binding_digest), i)));

        size_t link_index = registry_generators.size();
        for (size_t j = 0; j < registry_generators.size(); j++) {
            if (registry_generators[j] == type_gen) {
                link_index = j;
                break;
            }
        }
        if (link_index == registry_generators.size()) {
            throw std::invalid_argument("output type is not registered");
        }
        proofs.registry_count = registry_generators.size();
        Writer ctxw;
        ctxw.raw(as_span(proof_ctx("type-link", as_span(offer.binding_digest), i)));
        ctxw.u64(proofs.registry_count);
        proofs.type_link =
            or_prove(type_link_clauses(t.account.type_com, registry_generators), link_index,
                     {s_blind}, as_span(ctxw.bytes()));
        offer.output_proofs.push_back(std::move(proofs));
    }
    return offer;
}

Transaction seal(const PublicParams& pp, const std::vector<Offer>& offers) {
    (void)pp;
    if (offers.empty()) {
        throw TxBuildError(TxBuildErrc::EmptyTransaction, "seal needs at least one offer");
    }

    std::vector<const Offer*> ordered;
    ordered.reserve(offers.size());
    for (const Offer& o : offers) ordered.push_back(&o);
    std::sort(ordered.begin(), ordered.end(),
              [](const Offer* a, const Offer* b) { return a->binding_digest < b->binding_digest; });

    Transaction tx;
    tx.body.kind = TxKind::Spend;
    std::set<Bytes> images;
    Element z = Element::identity();
    Scalar z_sum = Scalar::zero();
    for (const Offer* o : ordered) {
        for (const InputBundle& in : o->section.inputs) {
            Bytes k(in.key_image.bytes().begin(), in.key_image.bytes().end());
            if (!images.insert(k).second) {
                throw TxBuildError(TxBuildErrc::DuplicateKeyImage,
                                   "offers share a key image");
            }
            z = z + in.pseudo_com;
        }
        for (const OneTimeAccount& out : o->section.outputs) z = z - out.com;
        z_sum = z_sum + o->blinding_sum;
        tx.body.sections.push_back(o->section);
        tx.sig.inputs.push_back(o->input_proofs);
        tx.sig.outputs.push_back(o->output_proofs);
    }

    if (!(Element::mul_base(z_sum) == z)) {
        throw TxBuildError(TxBuildErrc::MergedConservationFailed,
                           "merged offers do not conserve every type");
    }
    tx.sig.conservation =
        dlog_prove(Element::base(), z, z_sum, as_span(conservation_ctx(tx.body)));
    return tx;
}

Transaction spend(const PublicParams& pp, std::vector<SpendInput> sources,
                  std::vector<OutputAssignment> targets, const RingSampler& sampler,
                  const std::vector<Element>& registry_generators) {
    return seal(pp, {make_offer(pp, std::move(sources), std::move(targets), sampler,
                                registry_generators, true)});
}

Transaction coin_gen(const PublicParams& pp, std::vector<OutputAssignment> targets,
                     std::vector<TypeTag> types) {
    if (targets.empty() || targets.size() != types.size()) {
        throw TxBuildError(TxBuildErrc::EmptyTransaction,
                           "coingen needs outputs with one revealed type each");
    }
    std::set<Bytes> ids;
    for (const TypeTag& t : types) {
        if (!ids.insert(t.id()).second) {
            throw TxBuildError(TxBuildErrc::DuplicateType, "duplicate type in coingen");
        }
    }
    for (size_t i = 0; i < targets.size(); i++) {
        if (!pp.amount_in_range(targets[i].amount)) {
            throw TxBuildError(TxBuildErrc::AmountOutOfRange, "output amount out of range");
        }
        if (!(targets[i].ty == types[i]) ||
            !chk_val(pp, targets[i].coin_key, targets[i].ty, targets[i].amount,
                     targets[i].account)) {
            throw std::invalid_argument("output assignment does not open its account");
        }
    }

    std::vector<size_t> order(targets.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return targets[a].account.encode() < targets[b].account.encode();
    });

    Transaction tx;
    tx.body.kind = TxKind::CoinGen;
    tx.body.sections.emplace_back();
    for (size_t i : order) {
        tx.body.sections[0].outputs.push_back(targets[i].account);
        tx.body.revealed_types.push_back(types[i]);
    }

    Bytes sd = tx.body.section_digest(0);
    tx.sig.inputs.emplace_back();
    tx.sig.outputs.emplace_back();
    for (size_t oi = 0; oi < order.size(); oi++) {
        const OutputAssignment& t = targets[order[oi]];
        Scalar s_blind = type_blind(t.coin_key);

        OutputProofs proofs;
        Scalar aux_blinding = t.coin_key - Scalar::from_u64(t.amount) * s_blind;
        proofs.range = range_prove(pp, t.amount, t.account.type_com, aux_blinding,
                                   as_span(proof_ctx("range", as_span(sd), oi)));
        proofs.type_link_direct =
            dlog_prove(Element::base(), t.account.type_com - t.ty.generator(), s_blind,
                       as_span(proof_ctx("type-direct", as_span(sd), oi)));
        tx.sig.outputs[0].push_back(std::move(proofs));
    }
    return tx;
}

std::string_view to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Ok: return "ok";
        case VerifyStatus::DoubleSpend: return "double-spend";
        case VerifyStatus::BadProof: return "bad-proof";
        case VerifyStatus::UnknownRingMember: return "unknown-ring-member";
        case VerifyStatus::TypeReuse: return "type-reuse";
        case VerifyStatus::Malformed: return "malformed";
    }
    return "unknown";
}

VerifyStatus verify_tx(const PublicParams& pp, const VerifyContext& state,
                       const Transaction& tx) {
    const TransactionBody& body = tx.body;

    // Structural checks.
    if (body.sections.empty()) return VerifyStatus::Malformed;
    if (tx.sig.inputs.size() != body.sections.size() ||
        tx.sig.outputs.size() != body.sections.size()) {
        return VerifyStatus::Malformed;
    }
    for (size_t si = 0; si < body.sections.size(); si++) {
        const TxSection& sec = body.sections[si];
        if (tx.sig.inputs[si].size() != sec.inputs.size() ||
            tx.sig.outputs[si].size() != sec.outputs.size()) {
            return VerifyStatus::Malformed;
        }
        if (sec.outputs.empty()) return VerifyStatus::Malformed;
    }
    if (body.kind == TxKind::CoinGen) {
        if (body.sections.size() != 1 || !body.sections[0].inputs.empty()) {
            return VerifyStatus::Malformed;
        }
        if (body.revealed_types.size() != body.sections[0].outputs.size()) {
            return VerifyStatus::Malformed;
        }
    } else {
        if (!body.revealed_types.empty()) return VerifyStatus::Malformed;
        for (const TxSection& sec : body.sections) {
            if (sec.inputs.empty()) return VerifyStatus::Malformed;
        }
    }

    // New outputs must be fresh.
    std::set<Bytes> out_keys;
    for (const TxSection& sec : body.sections) {
        for (const OneTimeAccount& out : sec.outputs) {
            Bytes k(out.otpk.bytes().begin(), out.otpk.bytes().end());
            if (!out_keys.insert(k).second) return VerifyStatus::Malformed;
            if (state.find_unspent(out.otpk)) return VerifyStatus::Malformed;
        }
    }

    // Key images must be unused, inside and outside the transaction.
    std::set<Bytes> images;
    for (const TxSection& sec : body.sections) {
        for (const InputBundle& in : sec.inputs) {
            Bytes k(in.key_image.bytes().begin(), in.key_image.bytes().end());
            if (!images.insert(k).second) return VerifyStatus::DoubleSpend;
            if (state.key_image_spent(in.key_image)) return VerifyStatus::DoubleSpend;
        }
    }

    if (body.kind == TxKind::CoinGen) {
        std::set<Bytes> ids;
        for (const TypeTag& t : body.revealed_types) {
            if (t.preimage_hash.size() != 32) return VerifyStatus::Malformed;
            if (!ids.insert(t.id()).second) return VerifyStatus::TypeReuse;
            if (state.type_registered(t.id())) return VerifyStatus::TypeReuse;
        }
        Bytes sd = body.section_digest(0);
        const TxSection& sec = body.sections[0];
        for (size_t oi = 0; oi < sec.outputs.size(); oi++) {
            const OneTimeAccount& out = sec.outputs[oi];
            const OutputProofs& proofs = tx.sig.outputs[0][oi];
            if (!range_verify(pp, out.com, out.type_com, proofs.range,
                              as_span(proof_ctx("range", as_span(sd), oi)))) {
                return VerifyStatus::BadProof;
            }
            if (!dlog_verify(Element::base(),
                             out.type_com - body.revealed_types[oi].generator(),
                             proofs.type_link_direct,
                             as_span(proof_ctx("type-direct", as_span(sd), oi)))) {
                return VerifyStatus::BadProof;
            }
        }
        return VerifyStatus::Ok;
    }

    // Spend path.
    Element z = Element::identity();
    for (size_t si = 0; si < body.sections.size(); si++) {
        const TxSection& sec = body.sections[si];
        Bytes sd = body.section_digest(si);

        for (size_t ii = 0; ii < sec.inputs.size(); ii++) {
            const InputBundle& in = sec.inputs[ii];
            if (in.ring.empty()) return VerifyStatus::Malformed;
            std::set<Bytes> member_keys;
            std::vector<OneTimeAccount> members;
            members.reserve(in.ring.size());
            for (const Element& otpk : in.ring) {
                Bytes k(otpk.bytes().begin(), otpk.bytes().end());
                if (!member_keys.insert(k).second) return VerifyStatus::Malformed;
                auto acc = state.find_unspent(otpk);
                if (!acc) return VerifyStatus::UnknownRingMember;
                members.push_back(std::move(*acc));
            }
            const InputProofs& proofs = tx.sig.inputs[si][ii];
            if (!or_verify(
                    membership_clauses(members, in.key_image, in.pseudo_com, in.type_com),
                    proofs.membership,
                    as_span(proof_ctx("membership", as_span(sd), ii)))) {
                return VerifyStatus::BadProof;
            }
            if (!representation_verify(in.type_com, Element::base(), in.pseudo_com, proofs.link,
                                       as_span(proof_ctx("link", as_span(sd), ii)))) {
                return VerifyStatus::BadProof;
            }
            z = z + in.pseudo_com;
        }

        for (size_t oi = 0; oi < sec.outputs.size(); oi++) {
            const OneTimeAccount& out = sec.outputs[oi];
            const OutputProofs& proofs = tx.sig.outputs[si][oi];
            if (!range_verify(pp, out.com, out.type_com, proofs.range,
                              as_span(proof_ctx("range", as_span(sd), oi)))) {
                return VerifyStatus::BadProof;
            }
            if (proofs.registry_count == 0 || proofs.registry_count > state.registry_size()) {
                return VerifyStatus::BadProof;
            }
            std::vector<Element> prefix;
            prefix.reserve(proofs.registry_count);
            for (size_t j = 0; j < proofs.registry_count; j++) {
                prefix.push_back(state.registry_generator(j));
            }
            Writer ctxw;
            ctxw.raw(as_span(proof_ctx("type-link", as_span(sd), oi)));
            ctxw.u64(proofs.registry_count);
            if (!or_verify(type_link_clauses(out.type_com, prefix), proofs.type_link,
                           as_span(ctxw.bytes()))) {
                return VerifyStatus::BadProof;
            }
            z = z - out.com;
        }
    }

    if (!dlog_verify(Element::base(), z, tx.sig.conservation,
                     as_span(conservation_ctx(body)))) {
        return VerifyStatus::BadProof;
    }
    return VerifyStatus::Ok;
}

}  // namespace ctl
