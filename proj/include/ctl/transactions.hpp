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

#include <functional>

#include "ctl/accounts.hpp"

namespace ctl {

enum class TxKind : uint8_t { Spend = 0, CoinGen = 1 };

// Anonymous input reference: a ring of candidate accounts, the spent
// account's key image, a re-blinded pseudo commitment carrying the same
// amount and type as the true member, and a fresh blinded type commitment.
struct InputBundle {
    std::vector<Element> ring;  // otpks, sorted; resolved against the unspent set
    Element key_image;
    Element pseudo_com;
    Element type_com;

    Bytes encode() const;
    static InputBundle decode(Reader& r);
};

// One sealed offer: the unit a single party contributes to a transaction.
// Input proofs are bound to the section digest, so sections survive into the
// final transaction; a counterparty cannot re-attach the inputs to different
// outputs.
struct TxSection {
    std::vector<InputBundle> inputs;
    std::vector<OneTimeAccount> outputs;

    Bytes encode() const;
    static TxSection decode(Reader& r);
};

struct TransactionBody {
    TxKind kind = TxKind::Spend;
    std::vector<TxSection> sections;
    std::vector<TypeTag> revealed_types;  // coingen: one per output, same order

    Bytes encode() const;
    static TransactionBody decode(Reader& r);
    Bytes digest() const;
    // Binding digest of one section (includes revealed types for coingen).
    Bytes section_digest(size_t index) const;

    size_t input_count() const;
    size_t output_count() const;
};

struct InputProofs {
    OrProof membership;             // (sk, key image, value link, type link) per ring slot
    RepresentationProof link;       // knowledge of pseudo_com opening over (type_com, G)

    Bytes encode() const;
    static InputProofs decode(Reader& r);
};

struct OutputProofs {
    RangeProof range;               // over the account's blinded type commitment
    // Spend: the output's type commitment blinds one of the first
    // registry_count registered generators.
    uint64_t registry_count = 0;
    OrProof type_link;
    // CoinGen: direct link to the revealed type.
    DlogProof type_link_direct;

    Bytes encode(TxKind kind) const;
    static OutputProofs decode(Reader& r, TxKind kind);
};

struct TxSignature {
    std::vector<std::vector<InputProofs>> inputs;    // [section][input]
    std::vector<std::vector<OutputProofs>> outputs;  // [section][output]
    DlogProof conservation;                          // spend only

    Bytes encode(const TransactionBody& body) const;
    static TxSignature decode(Reader& r, const TransactionBody& body);
};

struct Transaction {
    TransactionBody body;
    TxSignature sig;

    Bytes encode() const;
    static Transaction decode(ByteSpan data);
    Bytes txid() const;
};

// Spend-side secrets for one input, as produced by View/Receive.
struct SpendInput {
    uint64_t amount = 0;
    TypeTag ty;
    Scalar coin_key;
    Scalar sk;
    OneTimeAccount account;
};

// Output assignment: a pre-generated one-time account plus its opening.
struct OutputAssignment {
    Scalar coin_key;
    uint64_t amount = 0;
    TypeTag ty;
    OneTimeAccount account;
};

// Supplies up to `count` decoy accounts distinct from the true member.
using RingSampler =
    std::function<std::vector<OneTimeAccount>(const OneTimeAccount& true_member, size_t count)>;

struct Offer {
    TxSection section;
    std::vector<InputProofs> input_proofs;
    std::vector<OutputProofs> output_proofs;
    Scalar blinding_sum;  // secret; shared only with seal counterparties
    Bytes binding_digest;

    Bytes encode() const;  // confidential: carries blinding_sum
    static Offer decode(ByteSpan data);
};

enum class TxBuildErrc {
    ConservationViolated,
    InputNotOwned,
    RingTooSmall,
    AmountOutOfRange,
    DuplicateKeyImage,
    MergedConservationFailed,
    DuplicateType,
    EmptyTransaction,
};

struct TxBuildError : std::runtime_error {
    TxBuildErrc code;
    TxBuildError(TxBuildErrc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Builds one party's contribution. When require_balanced is set (the plain
// transfer path), per-type input and output sums must match before any proof
// is built; swap legs pass false and rely on seal's union check.
Offer make_offer(const PublicParams& pp, std::vector<SpendInput> sources,
                 std::vector<OutputAssignment> targets, const RingSampler& sampler,
                 const std::vector<Element>& registry_generators, bool require_balanced = true);

// Merges offers into one atomic transaction; the union must conserve every
// type. Single-offer seal is exactly Spend.
Transaction seal(const PublicParams& pp, const std::vector<Offer>& offers);

Transaction spend(const PublicParams& pp, std::vector<SpendInput> sources,
                  std::vector<OutputAssignment> targets, const RingSampler& sampler,
                  const std::vector<Element>& registry_generators);

// Token initiation: reveals each output's type, keeps amounts hidden.
Transaction coin_gen(const PublicParams& pp, std::vector<OutputAssignment> targets,
                     std::vector<TypeTag> types);

enum class VerifyStatus {
    Ok,
    DoubleSpend,
    BadProof,
    UnknownRingMember,
    TypeReuse,
    Malformed,
};

std::string_view to_string(VerifyStatus s);

// Read-only view of ledger state needed by verification.
class VerifyContext {
public:
    virtual ~VerifyContext() = default;
    virtual std::optional<OneTimeAccount> find_unspent(const Element& otpk) const = 0;
    virtual bool key_image_spent(const Element& key_image) const = 0;
    virtual bool type_registered(const Bytes& type_id) const = 0;
    virtual size_t registry_size() const = 0;
    virtual Element registry_generator(size_t index) const = 0;
};

// Stateless full verification against a state snapshot; deterministic.
VerifyStatus verify_tx(const PublicParams& pp, const VerifyContext& state, const Transaction& tx);

}  // namespace ctl
