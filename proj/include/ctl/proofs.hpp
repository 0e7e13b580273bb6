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

#include <vector>

#include "ctl/commit.hpp"

namespace ctl {

// Schnorr proof of knowledge of w with target = w*base, made non-interactive
// by hashing the statement together with a caller-supplied context string.
// Stored as (c, s); the verifier recomputes the nonce commitment.
struct DlogProof {
    Scalar c, s;

    Bytes encode() const;
    static DlogProof decode(Reader& r);
};

DlogProof dlog_prove(const Element& base, const Element& target, const Scalar& w, ByteSpan ctx);
bool dlog_verify(const Element& base, const Element& target, const DlogProof& proof, ByteSpan ctx);

// Knowledge of (w1, w2) with target = w1*b1 + w2*b2.
struct RepresentationProof {
    Scalar c, s1, s2;

    Bytes encode() const;
    static RepresentationProof decode(Reader& r);
};

RepresentationProof representation_prove(const Element& b1, const Element& b2,
                                         const Element& target, const Scalar& w1,
                                         const Scalar& w2, ByteSpan ctx);
bool representation_verify(const Element& b1, const Element& b2, const Element& target,
                           const RepresentationProof& proof, ByteSpan ctx);

// Generic one-of-many composition of sigma clauses. A clause is a conjunction
// of relations; each relation proves one witness across one or more
// (base, target) pairs (two pairs = discrete-log equality). The prover knows
// witnesses for exactly one clause; transcripts of all clauses are
// structurally identical, so the verifier learns nothing about which.
struct SigmaPair {
    Element base;
    Element target;
};

struct SigmaRelation {
    std::vector<SigmaPair> pairs;  // shared witness across all pairs
};

struct SigmaClause {
    std::vector<SigmaRelation> relations;
};

struct OrProof {
    std::vector<Scalar> challenges;               // one per clause; sums to master
    std::vector<std::vector<Scalar>> responses;   // one per relation per clause

    Bytes encode() const;
    static OrProof decode(Reader& r);
};

OrProof or_prove(const std::vector<SigmaClause>& clauses, size_t true_index,
                 const std::vector<Scalar>& witnesses, ByteSpan ctx);
bool or_verify(const std::vector<SigmaClause>& clauses, const OrProof& proof, ByteSpan ctx);

// Bit-decomposition range proof for com = a*U + r*G with a in [0, 2^k).
// Each bit commitment is proven to open to 0 or 1 under base U, and the
// weighted sum of bit commitments reconstructs com exactly.
struct RangeProof {
    std::vector<Element> bit_commitments;
    std::vector<OrProof> bit_proofs;

    Bytes encode() const;
    static RangeProof decode(Reader& r);
};

RangeProof range_prove(const PublicParams& pp, uint64_t amount, const Element& aux_base,
                       const Scalar& blinding, ByteSpan ctx);
bool range_verify(const PublicParams& pp, const Element& com, const Element& aux_base,
                  const RangeProof& proof, ByteSpan ctx);

}  // namespace ctl
