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

#include <cstdio>
#include <map>
#include <memory>
#include <set>
#include <shared_mutex>

#include "ctl/transactions.hpp"

namespace ctl {

struct LedgerRecord {
    uint64_t seq = 0;           // strictly increasing, starts at 1
    uint64_t timestamp_ms = 0;  // assigned at apply time, non-decreasing
    Transaction tx;
};

struct ScanHit {
    OneTimeAccount account;
    uint64_t amount = 0;
    TypeTag ty;
    Scalar coin_key;
    uint64_t seq = 0;
    uint64_t timestamp_ms = 0;
    // Spent status needs the spend key (key images are unlinkable without
    // it); spent_known is false for view-only scans.
    bool spent_known = false;
    bool spent = false;
    uint64_t spent_seq = 0;
    uint64_t spent_timestamp_ms = 0;
};

// Consistent copy of ledger state; verification of independent transactions
// against one snapshot can run from any number of threads.
class Snapshot : public VerifyContext {
public:
    std::map<Bytes, OneTimeAccount> unspent;  // keyed by otpk encoding
    std::map<Bytes, uint64_t> spent_images;   // key image -> consuming seq
    std::vector<TypeTag> registry;            // registration order
    std::set<Bytes> registry_ids;
    uint64_t record_count = 0;

    std::optional<OneTimeAccount> find_unspent(const Element& otpk) const override;
    bool key_image_spent(const Element& key_image) const override;
    bool type_registered(const Bytes& type_id) const override;
    size_t registry_size() const override { return registry.size(); }
    Element registry_generator(size_t index) const override;

    std::vector<Element> registry_generators() const;
    // Uniform decoy sampler over the unspent set.
    RingSampler sampler() const;
};

struct LedgerStats {
    uint64_t records = 0;
    uint64_t unspent = 0;
    uint64_t types = 0;
    uint64_t spent_images = 0;
};

class LedgerError : public std::runtime_error {
public:
    explicit LedgerError(const std::string& what) : std::runtime_error(what) {}
};

// Single-writer state machine over an append-only, checksummed record file.
// apply serializes writers; scans and snapshots take a shared lock.
class Ledger {
public:
    // Creates the file if absent, otherwise replays it. Throws LedgerError on
    // parameter mismatch or corrupted header. A torn tail (crash during
    // append) is truncated to the last whole record.
    Ledger(const std::string& path, const PublicParams& pp);
    ~Ledger();
    Ledger(const Ledger&) = delete;
    Ledger& operator=(const Ledger&) = delete;

    struct ApplyResult {
        VerifyStatus status = VerifyStatus::Malformed;
        std::optional<LedgerRecord> record;
        bool ok() const { return status == VerifyStatus::Ok; }
    };

    // Verifies against current state; on success the record is durably
    // persisted before the new state becomes visible.
    ApplyResult apply(const Transaction& tx);

    // Runs View over every output ever logged (spent outputs included). The
    // spend key, when present, adds spent flags and spend timestamps.
    std::vector<ScanHit> scan(const LongTermKeys& keys) const;
    std::vector<ScanHit> scan(const ViewKey& ltv) const;

    Snapshot snapshot() const;
    Bytes state_digest() const;
    LedgerStats stats() const;
    const PublicParams& params() const { return pp_; }

    void for_each_record(const std::function<void(const LedgerRecord&)>& fn) const;

private:
    std::vector<ScanHit> scan_impl(const ViewKey& ltv, const std::optional<Scalar>& lts) const;
    void replay_record(const LedgerRecord& rec);
    void append_to_file(const LedgerRecord& rec);

    PublicParams pp_;
    std::string path_;
    std::FILE* file_ = nullptr;

    mutable std::shared_mutex mu_;
    std::map<Bytes, OneTimeAccount> unspent_;
    std::map<Bytes, uint64_t> spent_images_;
    std::vector<TypeTag> registry_;
    std::set<Bytes> registry_ids_;
    std::vector<LedgerRecord> log_;
};

}  // namespace ctl
