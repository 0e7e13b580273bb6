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

#include "ctl/proofs.hpp"

#include <stdexcept>

namespace ctl {

namespace {

Scalar scalar_from_reader(Reader& r) {
    auto s = Scalar::from_bytes(r.raw(kScalarBytes));
    if (!s) throw DecodeError("non-canonical scalar");
    return *s;
}

Element element_from_reader(Reader& r) {
    auto e = Element::from_bytes(r.raw(kElementBytes));
    if (!e) throw DecodeError("invalid group element");
    return *e;
}

}  // namespace

Bytes DlogProof::encode() const {
    Writer w;
    w.raw(c.bytes());
    w.raw(s.bytes());
    return w.take();
}

DlogProof DlogProof::decode(Reader& r) {
    DlogProof p;
    p.c = scalar_from_reader(r);
    p.s = scalar_from_reader(r);
    return p;
}

DlogProof dlog_prove(const Element& base, const Element& target, const Scalar& w, ByteSpan ctx) {
    Scalar alpha = Scalar::random();
    Element a = base * alpha;
    Transcript t("dlog");
    t.absorb("ctx", ctx);
    t.absorb_element("base", base);
    t.absorb_element("target", target);
    t.absorb_element("commit", a);
    DlogProof p;
    p.c = t.challenge("c");
    p.s = alpha + p.c * w;
    return p;
}

bool dlog_verify(const Element& base, const Element& target, const DlogProof& proof,
                 ByteSpan ctx) {
    Element a = base * proof.s - target * proof.c;
    Transcript t("dlog");
    t.absorb("ctx", ctx);
    t.absorb_element("base", base);
    t.absorb_element("target", target);
    t.absorb_element("commit", a);
    return t.challenge("c") == proof.c;
}

Bytes RepresentationProof::encode() const {
    Writer w;
    w.raw(c.bytes());
    w.raw(s1.bytes());
    w.raw(s2.bytes());
    return w.take();
}

RepresentationProof RepresentationProof::decode(Reader& r) {
    RepresentationProof p;
    p.c = scalar_from_reader(r);
    p.s1 = scalar_from_reader(r);
    p.s2 = scalar_from_reader(r);
    return p;
}

RepresentationProof representation_prove(const Element& b1, const Element& b2,
                                         const Element& target, const Scalar& w1,
                                         const Scalar& w2, ByteSpan ctx) {
    Scalar a1 = Scalar::random();
    Scalar a2 = Scalar::random();
    Element a = b1 * a1 + b2 * a2;
    Transcript t("repr");
    t.absorb("ctx", ctx);
    t.absorb_element("b1", b1);
    t.absorb_element("b2", b2);
    t.absorb_element("target", target);
    t.absorb_element("commit", a);
    RepresentationProof p;
    p.c = t.challenge("c");
    p.s1 = a1 + p.c * w1;
    p.s2 = a2 + p.c * w2;
    return p;
}

bool representation_verify(const Element& b1, const Element& b2, const Element& target,
                           const RepresentationProof& proof, ByteSpan ctx) {
    Element a = b1 * proof.s1 + b2 * proof.s2 - target * proof.c;
    Transcript t("repr");
    t.absorb("ctx", ctx);
    t.absorb_element("b1", b1);
    t.absorb_element("b2", b2);
    t.absorb_element("target", target);
    t.absorb_element("commit", a);
    return t.challenge("c") == proof.c;
}

Bytes OrProof::encode() const {
    Writer w;
    w.u64(challenges.size());
    for (size_t i = 0; i < challenges.size(); i++) {
        w.raw(challenges[i].bytes());
        w.u64(responses[i].size());
        for (const Scalar& s : responses[i]) w.raw(s.bytes());
    }
    return w.take();
}

OrProof OrProof::decode(Reader& r) {
    OrProof p;
    uint64_t n = r.u64();
    if (n == 0 || n > 100000) throw DecodeError("bad clause count");
    p.challenges.reserve(n);
    p.responses.reserve(n);
    for (uint64_t i = 0; i < n; i++) {
        p.challenges.push_back(scalar_from_reader(r));
        uint64_t m = r.u64();
        if (m > 64) throw DecodeError("bad response count");
        std::vector<Scalar> resp;
        resp.reserve(m);
        for (uint64_t j = 0; j < m; j++) resp.push_back(scalar_from_reader(r));
        p.responses.push_back(std::move(resp));
    }
    return p;
}

namespace {

// Nonce commitments per (clause, relation, pair), recomputed by the verifier
// as A = s*base - c*target.
void absorb_or_statement(Transcript& t, const std::vector<SigmaClause>& clauses) {
    t.absorb_u64("clauses", clauses.size());
    for (const SigmaClause& cl : clauses) {
        t.absorb_u64("relations", cl.relations.size());
        for (const SigmaRelation& rel : cl.relations) {
            t.absorb_u64("pairs", rel.pairs.size());
            for (const SigmaPair& pr : rel.pairs) {
                t.absorb_element("base", pr.base);
                t.absorb_element("target", pr.target);
            }
        }
    }
}

}  // namespace

OrProof or_prove(const std::vector<SigmaClause>& clauses, size_t true_index,
                 const std::vector<Scalar>& witnesses, ByteSpan ctx) {
    if (true_index >= clauses.size()) throw std::invalid_argument("or_prove: bad clause index");
    if (witnesses.size() != clauses[true_index].relations.size()) {
        throw std::invalid_argument("or_prove: witness count mismatch");
    }

    const size_t n = clauses.size();
    OrProof p;
    p.challenges.resize(n);
    p.responses.resize(n);
    std::vector<std::vector<Element>> commits(n);
    std::vector<Scalar> nonces;

    Scalar sum = Scalar::zero();
    for (size_t i = 0; i < n; i++) {
        const auto& rels = clauses[i].relations;
        p.responses[i].resize(rels.size());
        if (i == true_index) {
            // Honest transcripts; responses filled in after the challenge.
            nonces.resize(rels.size());
            for (size_t rj = 0; rj < rels.size(); rj++) {
                nonces[rj] = Scalar::random();
                for (const SigmaPair& pr : rels[rj].pairs) {
                    commits[i].push_back(pr.base * nonces[rj]);
                }
            }
        } else {
            // Simulated transcripts with self-chosen challenge.
            p.challenges[i] = Scalar::random();
            sum = sum + p.challenges[i];
            for (size_t rj = 0; rj < rels.size(); rj++) {
                Scalar s = Scalar::random();
                p.responses[i][rj] = s;
                for (const SigmaPair& pr : rels[rj].pairs) {
                    commits[i].push_back(pr.base * s - pr.target * p.challenges[i]);
                }
            }
        }
    }

    Transcript t("or");
    t.absorb("ctx", ctx);
    absorb_or_statement(t, clauses);
    for (const auto& cs : commits) {
        for (const Element& a : cs) t.absorb_element("commit", a);
    }
    Scalar master = t.challenge("c");

    p.challenges[true_index] = master - sum;
    const auto& rels = clauses[true_index].relations;
    for (size_t rj = 0; rj < rels.size(); rj++) {
        p.responses[true_index][rj] = nonces[rj] + p.challenges[true_index] * witnesses[rj];
    }
    return p;
}

bool or_verify(const std::vector<SigmaClause>& clauses, const OrProof& proof, ByteSpan ctx) {
    const size_t n = clauses.size();
    if (proof.challenges.size() != n || proof.responses.size() != n) return false;
    for (size_t i = 0; i < n; i++) {
        if (proof.responses[i].size() != clauses[i].relations.size()) return false;
    }

    Transcript t("or");
    t.absorb("ctx", ctx);
    absorb_or_statement(t, clauses);
    Scalar sum = Scalar::zero();
    for (size_t i = 0; i < n; i++) {
        sum = sum + proof.challenges[i];
        const auto& rels = clauses[i].relations;
        for (size_t rj = 0; rj < rels.size(); rj++) {
            for (const SigmaPair& pr : rels[rj].pairs) {
                Element a = pr.base * proof.responses[i][rj] - pr.target * proof.challenges[i];
                t.absorb_element("commit", a);
            }
        }
    }
    return t.challenge("c") == sum;
}

Bytes RangeProof::encode() const {
    Writer w;
    w.u64(bit_commitments.size());
    for (const Element& b : bit_commitments) w.raw(b.bytes());
    for (const OrProof& p : bit_proofs) w.raw(as_span(p.encode()));
    return w.take();
}

RangeProof RangeProof::decode(Reader& r) {
    RangeProof p;
    uint64_t k = r.u64();
    if (k == 0 || k > 64) throw DecodeError("bad range width");
    for (uint64_t i = 0; i < k; i++) p.bit_commitments.push_back(element_from_reader(r));
    for (uint64_t i = 0; i < k; i++) p.bit_proofs.push_back(OrProof::decode(r));
    return p;
}

namespace {

std::vector<SigmaClause> bit_clauses(const Element& bit_com, const Element& aux_base) {
    // bit = 0: B = rho*G;  bit = 1: B - U = rho*G.
    SigmaClause zero{{SigmaRelation{{SigmaPair{Element::base(), bit_com}}}}};
    SigmaClause one{{SigmaRelation{{SigmaPair{Element::base(), bit_com - aux_base}}}}};
    return {zero, one};
}

Bytes range_ctx(ByteSpan ctx, const Element& com, const Element& aux_base,
                const std::vector<Element>& bits) {
    Writer w;
    w.var_bytes(ctx);
    w.raw(com.bytes());
    w.raw(aux_base.bytes());
    for (const Element& b : bits) w.raw(b.bytes());
    return digest32("ctl/range-ctx", {as_span(w.bytes())});
}

}  // namespace

RangeProof range_prove(const PublicParams& pp, uint64_t amount, const Element& aux_base,
                       const Scalar& blinding, ByteSpan ctx) {
    if (!pp.amount_in_range(amount)) throw std::out_of_range("amount exceeds range width");
    const uint32_t k = pp.range_bits;

    // Bit blindings sum (weighted by 2^i) to the commitment blinding, so the
    // verifier can reconstruct com from the bit commitments alone.
    std::vector<Scalar> rho(k);
    Scalar acc = Scalar::zero();
    for (uint32_t i = 0; i + 1 < k; i++) {
        rho[i] = Scalar::random();
        acc = acc + Scalar::from_u64(uint64_t{1} << i) * rho[i];
    }
    Scalar top_weight = Scalar::from_u64(uint64_t{1} << (k - 1));
    rho[k - 1] = (blinding - acc) * top_weight.invert();

    RangeProof proof;
    proof.bit_commitments.resize(k);
    for (uint32_t i = 0; i < k; i++) {
        uint64_t bit = (amount >> i) & 1;
        Element b = Element::mul_base(rho[i]);
        if (bit) b = b + aux_base;
        proof.bit_commitments[i] = b;
    }

    Element com = aux_base * Scalar::from_u64(amount) + Element::mul_base(blinding);
    Bytes inner = range_ctx(ctx, com, aux_base, proof.bit_commitments);
    for (uint32_t i = 0; i < k; i++) {
        Writer w;
        w.raw(as_span(inner));
        w.u64(i);
        uint64_t bit = (amount >> i) & 1;
        proof.bit_proofs.push_back(or_prove(bit_clauses(proof.bit_commitments[i], aux_base),
                                            bit, {rho[i]}, as_span(w.bytes())));
    }
    return proof;
}

bool range_verify(const PublicParams& pp, const Element& com, const Element& aux_base,
                  const RangeProof& proof, ByteSpan ctx) {
    const uint32_t k = pp.range_bits;
    if (proof.bit_commitments.size() != k || proof.bit_proofs.size() != k) return false;

    Element sum = Element::identity();
    for (uint32_t i = 0; i < k; i++) {
        sum = sum + proof.bit_commitments[i] * Scalar::from_u64(uint64_t{1} << i);
    }
    if (!(sum == com)) return false;

    Bytes inner = range_ctx(ctx, com, aux_base, proof.bit_commitments);
    for (uint32_t i = 0; i < k; i++) {
        Writer w;
        w.raw(as_span(inner));
        w.u64(i);
        if (!or_verify(bit_clauses(proof.bit_commitments[i], aux_base), proof.bit_proofs[i],
                       as_span(w.bytes()))) {
            return false;
        }
    }
    return true;
}

}  // namespace ctl
