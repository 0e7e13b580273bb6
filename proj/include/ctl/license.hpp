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

#include <string>

#include "ctl/ledger.hpp"

namespace ctl {

// A design is identified by the digest of its CAD file; the same bytes
// always yield the same type, any change yields an unrelated one.
struct DesignType {
    Bytes file_digest;
    TypeTag tag;
};

DesignType design_type(ByteSpan cad_bytes);

struct PropertyType {
    std::string label;
    TypeTag tag;
};

PropertyType property_type(std::string_view label);

// Pairing convention: the negation of property L is the property "¬"+L.
// Holding any negated token invalidates the positive property.
std::string negation_label(std::string_view label);

TypeTag attribute_type(std::string_view label);

// A physical part: a receive-only account bound to its identifier (license
// and property tokens are locked there forever) and a spendable secondary
// account for transient tokens, claimable by anyone knowing the eID.
struct PartIdentity {
    Bytes eid;
    std::optional<Bytes> proxy_salt;

    Bytes salted_eid() const;
    LongTermKeys receive_only() const;   // item_gen(eid [|| salt])
    LongTermKeys transient_keys() const; // acc_gen(eid)
};

enum class LicenseErrc {
    TypeReuse,
    TypeMismatch,
    InsufficientBalance,
    NotViewable,
    NoSpendKey,
    VerifyRejected,
};

struct LicenseError : std::runtime_error {
    LicenseErrc code;
    VerifyStatus verify_status = VerifyStatus::Ok;
    LicenseError(LicenseErrc c, const std::string& what) : std::runtime_error(what), code(c) {}
    LicenseError(VerifyStatus vs, const std::string& what)
        : std::runtime_error(what), code(LicenseErrc::VerifyRejected), verify_status(vs) {}
};

// Registers amount `a` of the fresh type H(domain || preimage) to ltp.
LedgerRecord issue_token(Ledger& ledger, uint64_t amount, TypeDomain domain, ByteSpan preimage,
                         const LongTermPublic& ltp);

// Spends `amount` of `ty` from one source account; any remainder returns to
// the sender as change. Fails before touching the ledger on type mismatch or
// insufficient balance.
LedgerRecord transfer_token(Ledger& ledger, uint64_t amount, const TypeTag& ty,
                            const OneTimeAccount& source, const LongTermKeys& keys,
                            const LongTermPublic& destination);

// Design issuance; default supply is the full range width.
LedgerRecord issue_design(Ledger& ledger, ByteSpan cad_bytes, const LongTermPublic& designer,
                          std::optional<uint64_t> amount = std::nullopt);

// Recomputes the design type from the file and compares.
bool verify_file_integrity(ByteSpan cad_bytes, const TypeTag& ty);

// Binds one license token of the file's design to the part's receive-only
// account.
LedgerRecord register_item(Ledger& ledger, ByteSpan eid, ByteSpan cad_bytes,
                           const OneTimeAccount& funding, const LongTermKeys& manufacturer,
                           const std::optional<Bytes>& proxy_salt = std::nullopt);

LedgerRecord issue_certificate_tokens(Ledger& ledger, uint64_t amount, std::string_view label,
                                      const LongTermPublic& issuer);

// Splits an issuer's supply of `ty` into `pool_size` parallel outputs so
// concurrent attestations need not wait on each other's change.
LedgerRecord pool_split(Ledger& ledger, const LongTermKeys& issuer, const TypeTag& ty,
                        size_t pool_size = 16);

// Transfers `amount` certificate tokens of the property `label` to the
// part's receive-only account.
LedgerRecord attest_post_processing(Ledger& ledger, ByteSpan eid, std::string_view label,
                                    uint64_t amount, const OneTimeAccount& source,
                                    const LongTermKeys& certifier,
                                    const std::optional<Bytes>& proxy_salt = std::nullopt);
// Round-robin variant: picks the oldest sufficient unspent pool account.
LedgerRecord attest_post_processing(Ledger& ledger, ByteSpan eid, std::string_view label,
                                    uint64_t amount, const LongTermKeys& certifier,
                                    const std::optional<Bytes>& proxy_salt = std::nullopt);

struct ItemHistoryEntry {
    ScanHit hit;
    bool transient_account = false;
};

// Everything ever sent to the part: the bound account's history plus the
// transient account's, with timestamps for receipt and (where known) spend.
std::vector<ItemHistoryEntry> item_verification(Ledger& ledger, ByteSpan eid,
                                                const std::optional<Bytes>& proxy_salt =
                                                    std::nullopt);

struct PropertyStatus {
    uint64_t positive = 0;
    uint64_t negated = 0;
    bool valid = false;
    bool anomalous = false;  // negation present without any positive token
};

// Evaluates each label against the part history under the negation
// convention; counts exclude tokens known to have left the account.
std::map<std::string, PropertyStatus> effective_properties(
    const std::vector<ItemHistoryEntry>& history, const std::vector<std::string>& labels);

// Sends attribute tokens to the part's spendable secondary account.
LedgerRecord apply_transient(Ledger& ledger, ByteSpan eid, std::string_view label,
                             uint64_t amount, const OneTimeAccount& source,
                             const LongTermKeys& operator_keys);

// Claims transient tokens back from the part; requires only the eID.
LedgerRecord recover_transient(Ledger& ledger, ByteSpan eid, uint64_t amount,
                               const OneTimeAccount& part_account,
                               const LongTermPublic& recipient);

// Oldest unspent account of the given type holding at least min_amount.
std::optional<ScanHit> pick_unspent(Ledger& ledger, const LongTermKeys& keys, const TypeTag& ty,
                                    uint64_t min_amount);

// Designated-verifier proof that an account (or one of a ring of accounts)
// holds `amount` of type `ty`. The verifier could forge the same transcript
// with their own spend key, so it convinces nobody else.
struct ProxyStatement {
    std::vector<OneTimeAccount> accounts;
    Element verifier_pk;
    TypeTag ty;
    uint64_t amount = 0;
    // Single-account form: claimed item spend key and the revealed one-time
    // derivation offset linking the account to it.
    std::optional<Element> item_pk;
    std::optional<Scalar> offset;

    Bytes encode() const;
    static ProxyStatement decode(Reader& r);
};

struct DVProof {
    ProxyStatement stmt;
    OrProof proof;

    Bytes encode() const;
    static DVProof decode(ByteSpan data);
};

DVProof proxy_prove_single(const PublicParams& pp, const OneTimeAccount& acc,
                           const LongTermPublic& verifier, const TypeTag& ty, uint64_t amount,
                           const Scalar& coin_key, const LongTermKeys& item_keys);

DVProof proxy_prove_ring(const PublicParams& pp, std::vector<OneTimeAccount> ring,
                         size_t true_index, const LongTermPublic& verifier, const TypeTag& ty,
                         uint64_t amount, const Scalar& coin_key);

// The designated verifier's forgery: valid-looking proof for any statement.
DVProof proxy_forge(const PublicParams& pp, ProxyStatement stmt, const Scalar& verifier_lts);

bool proxy_verify(const PublicParams& pp, const DVProof& dv);

}  // namespace ctl
