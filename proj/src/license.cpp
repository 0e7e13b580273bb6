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

#include "ctl/license.hpp"

#include <algorithm>

namespace ctl {

namespace {

Element element_from_reader(Reader& r) {
    auto e = Element::from_bytes(r.raw(kElementBytes));
    if (!e) throw DecodeError("invalid group element");
    return *e;
}

LedgerRecord apply_or_throw(Ledger& ledger, const Transaction& tx) {
    auto res = ledger.apply(tx);
    if (!res.ok()) {
        throw LicenseError(res.status, std::string("ledger rejected transaction: ") +
                                           std::string(to_string(res.status)));
    }
    return *res.record;
}

}  // namespace

DesignType design_type(ByteSpan cad_bytes) {
    TypeTag tag = make_type_tag(TypeDomain::Design, cad_bytes);
    return DesignType{tag.preimage_hash, tag};
}

PropertyType property_type(std::string_view label) {
    return PropertyType{std::string(label), make_type_tag(TypeDomain::Property, str_span(label))};
}

std::string negation_label(std::string_view label) {
    return "¬" + std::string(label);
}

TypeTag attribute_type(std::string_view label) {
    return make_type_tag(TypeDomain::Attribute, str_span(label));
}

Bytes PartIdentity::salted_eid() const {
    Bytes out = eid;
    if (proxy_salt) out.insert(out.end(), proxy_salt->begin(), proxy_salt->end());
    return out;
}

LongTermKeys PartIdentity::receive_only() const { return item_gen(as_span(salted_eid())); }

LongTermKeys PartIdentity::transient_keys() const { return acc_gen(as_span(eid)); }

LedgerRecord issue_token(Ledger& ledger, uint64_t amount, TypeDomain domain, ByteSpan preimage,
                         const LongTermPublic& ltp) {
    const PublicParams& pp = ledger.params();
    TypeTag ty = make_type_tag(domain, preimage);

    Snapshot snap = ledger.snapshot();
    if (snap.type_registered(ty.id())) {
        throw LicenseError(LicenseErrc::TypeReuse, "type already registered");
    }

    auto [acc, ck] = ot_gen(pp, ltp, ty, amount);
    Transaction tx = coin_gen(pp, {OutputAssignment{ck, amount, ty, acc}}, {ty});
    return apply_or_throw(ledger, tx);
}

LedgerRecord transfer_token(Ledger& ledger, uint64_t amount, const TypeTag& ty,
                            const OneTimeAccount& source, const LongTermKeys& keys,
                            const LongTermPublic& destination) {
    const PublicParams& pp = ledger.params();
    if (!keys.lts) throw LicenseError(LicenseErrc::NoSpendKey, "sender keys cannot spend");

    auto vr = view(pp, keys.view_key(), source);
    if (!vr) throw LicenseError(LicenseErrc::NotViewable, "source account not viewable");
    if (!(vr->ty == ty)) throw LicenseError(LicenseErrc::TypeMismatch, "source holds a different type");
    if (vr->amount < amount) {
        throw LicenseError(LicenseErrc::InsufficientBalance, "source balance too small");
    }

    Scalar sk = receive(keys, source);
    std::vector<SpendInput> sources{SpendInput{vr->amount, ty, vr->coin_key, sk, source}};

    std::vector<OutputAssignment> targets;
    auto [acc_t, ck_t] = ot_gen(pp, destination, ty, amount, 0);
    targets.push_back(OutputAssignment{ck_t, amount, ty, acc_t});
    if (vr->amount > amount) {
        auto [acc_r, ck_r] = ot_gen(pp, keys.ltp, ty, vr->amount - amount, 1);
        targets.push_back(OutputAssignment{ck_r, vr->amount - amount, ty, acc_r});
    }

    Snapshot snap = ledger.snapshot();
    Transaction tx = spend(pp, std::move(sources), std::move(targets), snap.sampler(),
                           snap.registry_generators());
    return apply_or_throw(ledger, tx);
}

LedgerRecord issue_design(Ledger& ledger, ByteSpan cad_bytes, const LongTermPublic& designer,
                          std::optional<uint64_t> amount) {
    uint64_t a = amount.value_or(ledger.params().max_amount());
    return issue_token(ledger, a, TypeDomain::Design, cad_bytes, designer);
}

bool verify_file_integrity(ByteSpan cad_bytes, const TypeTag& ty) {
    return design_type(cad_bytes).tag == ty;
}

LedgerRecord register_item(Ledger& ledger, ByteSpan eid, ByteSpan cad_bytes,
                           const OneTimeAccount& funding, const LongTermKeys& manufacturer,
                           const std::optional<Bytes>& proxy_salt) {
    TypeTag ty = design_type(cad_bytes).tag;
    PartIdentity part{Bytes(eid.begin(), eid.end()), proxy_salt};
    return transfer_token(ledger, 1, ty, funding, manufacturer, part.receive_only().ltp);
}

LedgerRecord issue_certificate_tokens(Ledger& ledger, uint64_t amount, std::string_view label,
                                      const LongTermPublic& issuer) {
    return issue_token(ledger, amount, TypeDomain::Property, str_span(label), issuer);
}

LedgerRecord pool_split(Ledger& ledger, const LongTermKeys& issuer, const TypeTag& ty,
                        size_t pool_size) {
    const PublicParams& pp = ledger.params();
    if (pool_size < 2) throw std::invalid_argument("pool size must be at least 2");
    auto source = pick_unspent(ledger, issuer, ty, 1);
    if (!source) throw LicenseError(LicenseErrc::InsufficientBalance, "no unspent supply to split");

    uint64_t total = source->amount;
    size_t n = std::min<uint64_t>(pool_size, total);
    if (n < 2) throw LicenseError(LicenseErrc::InsufficientBalance, "supply too small to split");

    Scalar sk = receive(issuer, source->account);
    std::vector<SpendInput> sources{
        SpendInput{total, ty, source->coin_key, sk, source->account}};

    std::vector<OutputAssignment> targets;
    uint64_t base = total / n;
    uint64_t rem = total % n;
    for (size_t i = 0; i < n; i++) {
        uint64_t a = base + (i < rem ? 1 : 0);
        auto [acc, ck] = ot_gen(pp, issuer.ltp, ty, a, i);
        targets.push_back(OutputAssignment{ck, a, ty, acc});
    }

    Snapshot snap = ledger.snapshot();
    Transaction tx = spend(pp, std::move(sources), std::move(targets), snap.sampler(),
                           snap.registry_generators());
    return apply_or_throw(ledger, tx);
}

LedgerRecord attest_post_processing(Ledger& ledger, ByteSpan eid, std::string_view label,
                                    uint64_t amount, const OneTimeAccount& source,
                                    const LongTermKeys& certifier,
                                    const std::optional<Bytes>& proxy_salt) {
    TypeTag ty = property_type(label).tag;
    PartIdentity part{Bytes(eid.begin(), eid.end()), proxy_salt};
    return transfer_token(ledger, amount, ty, source, certifier, part.receive_only().ltp);
}

LedgerRecord attest_post_processing(Ledger& ledger, ByteSpan eid, std::string_view label,
                                    uint64_t amount, const LongTermKeys& certifier,
                                    const std::optional<Bytes>& proxy_salt) {
    TypeTag ty = property_type(label).tag;
    auto source = pick_unspent(ledger, certifier, ty, amount);
    if (!source) {
        throw LicenseError(LicenseErrc::InsufficientBalance,
                           "no unspent certificate account covers the amount");
    }
    return attest_post_processing(ledger, eid, label, amount, source->account, certifier,
                                  proxy_salt);
}

std::vector<ItemHistoryEntry> item_verification(Ledger& ledger, ByteSpan eid,
                                                const std::optional<Bytes>& proxy_salt) {
    PartIdentity part{Bytes(eid.begin(), eid.end()), proxy_salt};
    std::vector<ItemHistoryEntry> out;
    for (ScanHit& hit : ledger.scan(part.receive_only())) {
        out.push_back(ItemHistoryEntry{std::move(hit), false});
    }
    for (ScanHit& hit : ledger.scan(part.transient_keys())) {
        out.push_back(ItemHistoryEntry{std::move(hit), true});
    }
    std::sort(out.begin(), out.end(), [](const ItemHistoryEntry& a, const ItemHistoryEntry& b) {
        return a.hit.seq < b.hit.seq;
    });
    return out;
}

std::map<std::string, PropertyStatus> effective_properties(
    const std::vector<ItemHistoryEntry>& history, const std::vector<std::string>& labels) {
    std::map<std::string, PropertyStatus> out;
    for (const std::string& label : labels) {
        TypeTag pos = property_type(label).tag;
        TypeTag neg = property_type(negation_label(label)).tag;
        PropertyStatus st;
        for (const ItemHistoryEntry& e : history) {
            if (e.hit.spent_known && e.hit.spent) continue;  // no longer held
            if (e.hit.ty == pos) st.positive += e.hit.amount;
            if (e.hit.ty == neg) st.negated += e.hit.amount;
        }
        st.valid = st.positive >= 1 && st.negated == 0;
        st.anomalous = st.negated > 0 && st.positive == 0;
        out.emplace(label, st);
    }
    return out;
}

LedgerRecord apply_transient(Ledger& ledger, ByteSpan eid, std::string_view label,
                             uint64_t amount, const OneTimeAccount& source,
                             const LongTermKeys& operator_keys) {
    TypeTag ty = attribute_type(label);
    PartIdentity part{Bytes(eid.begin(), eid.end()), std::nullopt};
    return transfer_token(ledger, amount, ty, source, operator_keys,
                          part.transient_keys().ltp);
}

LedgerRecord recover_transient(Ledger& ledger, ByteSpan eid, uint64_t amount,
                               const OneTimeAccount& part_account,
                               const LongTermPublic& recipient) {
    PartIdentity part{Bytes(eid.begin(), eid.end()), std::nullopt};
    LongTermKeys keys = part.transient_keys();
    auto vr = view(ledger.params(), keys.view_key(), part_account);
    if (!vr) throw LicenseError(LicenseErrc::NotViewable, "account is not the part's");
    return transfer_token(ledger, amount, vr->ty, part_account, keys, recipient);
}

std::optional<ScanHit> pick_unspent(Ledger& ledger, const LongTermKeys& keys, const TypeTag& ty,
                                    uint64_t min_amount) {
    std::optional<ScanHit> best;
    for (ScanHit& hit : ledger.scan(keys)) {
        if (!(hit.ty == ty)) continue;
        if (hit.spent_known && hit.spent) continue;
        if (hit.amount < min_amount) continue;
        if (!best || hit.seq < best->seq) best = std::move(hit);
    }
    return best;
}

Bytes ProxyStatement::encode() const {
    Writer w;
    w.u64(accounts.size());
    for (const OneTimeAccount& a : accounts) w.raw(as_span(a.encode()));
    w.raw(verifier_pk.bytes());
    w.raw(as_span(ty.encode()));
    w.u64(amount);
    w.u8(item_pk.has_value() ? 1 : 0);
    if (item_pk) {
        w.raw(item_pk->bytes());
        w.raw(offset->bytes());
    }
    return w.take();
}

ProxyStatement ProxyStatement::decode(Reader& r) {
    ProxyStatement s;
    uint64_t n = r.u64();
    if (n == 0 || n > 4096) throw DecodeError("bad account count");
    for (uint64_t i = 0; i < n; i++) s.accounts.push_back(OneTimeAccount::decode(r));
    s.verifier_pk = element_from_reader(r);
    s.ty = TypeTag::decode(r);
    s.amount = r.u64();
    if (r.u8()) {
        s.item_pk = element_from_reader(r);
        auto off = Scalar::from_bytes(r.raw(kScalarBytes));
        if (!off) throw DecodeError("non-canonical offset");
        s.offset = *off;
    }
    return s;
}

Bytes DVProof::encode() const {
    Writer w;
    w.var_bytes(as_span(stmt.encode()));
    w.var_bytes(as_span(proof.encode()));
    return w.take();
}

DVProof DVProof::decode(ByteSpan data) {
    Reader r(data);
    DVProof dv;
    Bytes stmt_bytes = r.var_bytes(1u << 24);
    Bytes proof_bytes = r.var_bytes(1u << 24);
    r.expect_done();
    Reader sr(as_span(stmt_bytes));
    dv.stmt = ProxyStatement::decode(sr);
    sr.expect_done();
    Reader pr(as_span(proof_bytes));
    dv.proof = OrProof::decode(pr);
    pr.expect_done();
    return dv;
}

namespace {

// Clause i: knowledge of ck with com_i - a*T = ck*G; final clause: knowledge
// of the designated verifier's spend key.
std::vector<SigmaClause> proxy_clauses(const PublicParams& pp, const ProxyStatement& stmt) {
    (void)pp;
    const Element& g = Element::base();
    Element at = stmt.ty.generator() * Scalar::from_u64(stmt.amount);
    std::vector<SigmaClause> clauses;
    clauses.reserve(stmt.accounts.size() + 1);
    for (const OneTimeAccount& acc : stmt.accounts) {
        clauses.push_back(SigmaClause{{SigmaRelation{{SigmaPair{g, acc.com - at}}}}});
    }
    clauses.push_back(SigmaClause{{SigmaRelation{{SigmaPair{g, stmt.verifier_pk}}}}});
    return clauses;
}

Bytes proxy_ctx(const ProxyStatement& stmt) {
    return digest32("ctl/dv-ctx", {as_span(stmt.encode())});
}

}  // namespace

DVProof proxy_prove_single(const PublicParams& pp, const OneTimeAccount& acc,
                           const LongTermPublic& verifier, const TypeTag& ty, uint64_t amount,
                           const Scalar& coin_key, const LongTermKeys& item_keys) {
    DVProof dv;
    dv.stmt.accounts = {acc};
    dv.stmt.verifier_pk = verifier.pk;
    dv.stmt.ty = ty;
    dv.stmt.amount = amount;
    dv.stmt.item_pk = item_keys.ltp.pk;
    dv.stmt.offset = derivation_offset(item_keys.tsk, acc);
    dv.proof = or_prove(proxy_clauses(pp, dv.stmt), 0, {coin_key}, as_span(proxy_ctx(dv.stmt)));
    return dv;
}

DVProof proxy_prove_ring(const PublicParams& pp, std::vector<OneTimeAccount> ring,
                         size_t true_index, const LongTermPublic& verifier, const TypeTag& ty,
                         uint64_t amount, const Scalar& coin_key) {
    if (true_index >= ring.size()) throw std::invalid_argument("bad ring index");
    DVProof dv;
    dv.stmt.accounts = std::move(ring);
    dv.stmt.verifier_pk = verifier.pk;
    dv.stmt.ty = ty;
    dv.stmt.amount = amount;
    dv.proof = or_prove(proxy_clauses(pp, dv.stmt), true_index, {coin_key},
                        as_span(proxy_ctx(dv.stmt)));
    return dv;
}

DVProof proxy_forge(const PublicParams& pp, ProxyStatement stmt, const Scalar& verifier_lts) {
    DVProof dv;
    dv.stmt = std::move(stmt);
    std::vector<SigmaClause> clauses = proxy_clauses(pp, dv.stmt);
    dv.proof = or_prove(clauses, clauses.size() - 1, {verifier_lts}, as_span(proxy_ctx(dv.stmt)));
    return dv;
}

bool proxy_verify(const PublicParams& pp, const DVProof& dv) {
    if (dv.stmt.accounts.empty()) return false;
    if (dv.stmt.item_pk.has_value() != dv.stmt.offset.has_value()) return false;
    if (dv.stmt.item_pk) {
        if (dv.stmt.accounts.size() != 1) return false;
        if (!(*dv.stmt.item_pk + Element::mul_base(*dv.stmt.offset) ==
              dv.stmt.accounts[0].otpk)) {
            return false;
        }
    }
    if (!pp.amount_in_range(dv.stmt.amount)) return false;
    return or_verify(proxy_clauses(pp, dv.stmt), dv.proof, as_span(proxy_ctx(dv.stmt)));
}

}  // namespace ctl
