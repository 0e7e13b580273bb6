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

#include "ctl/ledger.hpp"

#include <sodium.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <mutex>

namespace ctl {

namespace {

constexpr char kMagic[8] = {'C', 'T', 'L', 'E', 'D', 'G', 'R', '1'};
constexpr uint64_t kFileVersion = 1;

Bytes key_of(const Element& e) {
    return Bytes(e.bytes().begin(), e.bytes().end());
}

uint64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

Bytes record_payload(const LedgerRecord& rec) {
    Writer w;
    w.u64(rec.seq);
    w.u64(rec.timestamp_ms);
    w.var_bytes(as_span(rec.tx.encode()));
    return w.take();
}

// Live view over the ledger's own maps; used under the apply lock so verify
// never copies state.
class LiveContext : public VerifyContext {
public:
    LiveContext(const std::map<Bytes, OneTimeAccount>& unspent,
                const std::map<Bytes, uint64_t>& spent, const std::vector<TypeTag>& registry,
                const std::set<Bytes>& registry_ids)
        : unspent_(unspent), spent_(spent), registry_(registry), registry_ids_(registry_ids) {}

    std::optional<OneTimeAccount> find_unspent(const Element& otpk) const override {
        auto it = unspent_.find(key_of(otpk));
        if (it == unspent_.end()) return std::nullopt;
        return it->second;
    }
    bool key_image_spent(const Element& ki) const override {
        return spent_.count(key_of(ki)) > 0;
    }
    bool type_registered(const Bytes& id) const override { return registry_ids_.count(id) > 0; }
    size_t registry_size() const override { return registry_.size(); }
    Element registry_generator(size_t index) const override {
        return registry_.at(index).generator();
    }

private:
    const std::map<Bytes, OneTimeAccount>& unspent_;
    const std::map<Bytes, uint64_t>& spent_;
    const std::vector<TypeTag>& registry_;
    const std::set<Bytes>& registry_ids_;
};

}  // namespace

std::optional<OneTimeAccount> Snapshot::find_unspent(const Element& otpk) const {
    auto it = unspent.find(key_of(otpk));
    if (it == unspent.end()) return std::nullopt;
    return it->second;
}

bool Snapshot::key_image_spent(const Element& ki) const {
    return spent_images.count(key_of(ki)) > 0;
}

bool Snapshot::type_registered(const Bytes& id) const { return registry_ids.count(id) > 0; }

Element Snapshot::registry_generator(size_t index) const {
    return registry.at(index).generator();
}

std::vector<Element> Snapshot::registry_generators() const {
    std::vector<Element> out;
    out.reserve(registry.size());
    for (const TypeTag& t : registry) out.push_back(t.generator());
    return out;
}

RingSampler Snapshot::sampler() const {
    // Copy the account list once; the sampler may outlive the snapshot user.
    auto accounts = std::make_shared<std::vector<OneTimeAccount>>();
    accounts->reserve(unspent.size());
    for (const auto& [k, acc] : unspent) accounts->push_back(acc);

    return [accounts](const OneTimeAccount& true_member, size_t count) {
        std::vector<OneTimeAccount> decoys;
        if (accounts->empty() || count == 0) return decoys;
        // Partial Fisher-Yates over an index array.
        std::vector<uint32_t> idx(accounts->size());
        for (uint32_t i = 0; i < idx.size(); i++) idx[i] = i;
        size_t picked = 0;
        for (size_t i = 0; i < idx.size() && picked < count; i++) {
            uint32_t j = i + randombytes_uniform(static_cast<uint32_t>(idx.size() - i));
            std::swap(idx[i], idx[j]);
            const OneTimeAccount& cand = (*accounts)[idx[i]];
            if (cand.otpk == true_member.otpk) continue;
            decoys.push_back(cand);
            picked++;
        }
        return decoys;
    };
}

Ledger::Ledger(const std::string& path, const PublicParams& pp) : pp_(pp), path_(path) {
    crypto_init();
    const bool exists = std::filesystem::exists(path_);
    file_ = std::fopen(path_.c_str(), exists ? "r+b" : "w+b");
    if (!file_) throw LedgerError("cannot open ledger file: " + path_);

    if (!exists) {
        Writer w;
        w.raw(ByteSpan(reinterpret_cast<const uint8_t*>(kMagic), sizeof kMagic));
        w.u64(kFileVersion);
        w.u64(pp_.range_bits);
        w.u64(pp_.ring_size);
        const Bytes& h = w.bytes();
        if (std::fwrite(h.data(), 1, h.size(), file_) != h.size() || std::fflush(file_) != 0 ||
            fsync(fileno(file_)) != 0) {
            throw LedgerError("cannot write ledger header");
        }
        return;
    }

    // Replay. Stop at the first torn or corrupt frame and truncate to the
    // last whole record.
    std::fseek(file_, 0, SEEK_END);
    long file_size = std::ftell(file_);
    std::fseek(file_, 0, SEEK_SET);
    Bytes data(static_cast<size_t>(file_size));
    if (std::fread(data.data(), 1, data.size(), file_) != data.size()) {
        throw LedgerError("cannot read ledger file");
    }

    constexpr size_t kHeaderBytes = sizeof kMagic + 3 * 8;
    if (data.size() < kHeaderBytes ||
        std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) {
        throw LedgerError("bad ledger header");
    }
    Reader hr(ByteSpan(data.data() + sizeof kMagic, 3 * 8));
    if (hr.u64() != kFileVersion) throw LedgerError("unsupported ledger version");
    uint64_t k = hr.u64();
    uint64_t ring = hr.u64();
    if (k != pp_.range_bits || ring != pp_.ring_size) {
        throw LedgerError("ledger was created with different parameters");
    }

    size_t good_end = kHeaderBytes;
    size_t pos = kHeaderBytes;
    while (pos + 8 <= data.size()) {
        Reader lr(ByteSpan(data.data() + pos, 8));
        uint64_t len = lr.u64();
        if (len > (1u << 26) || pos + 8 + len + 32 > data.size()) break;
        ByteSpan payload(data.data() + pos + 8, static_cast<size_t>(len));
        ByteSpan digest(data.data() + pos + 8 + len, 32);
        Bytes expect = digest32("ctl/ledger-record", {payload});
        if (std::memcmp(expect.data(), digest.data(), 32) != 0) break;

        try {
            Reader pr(payload);
            LedgerRecord rec;
            rec.seq = pr.u64();
            rec.timestamp_ms = pr.u64();
            Bytes tx_bytes = pr.var_bytes(1u << 26);
            pr.expect_done();
            rec.tx = Transaction::decode(as_span(tx_bytes));
            if (rec.seq != log_.size() + 1) break;
            replay_record(rec);
        } catch (const DecodeError&) {
            break;
        }
        pos += 8 + len + 32;
        good_end = pos;
    }

    if (good_end != data.size()) {
        if (truncate(path_.c_str(), static_cast<off_t>(good_end)) != 0) {
            throw LedgerError("cannot truncate torn ledger tail");
        }
    }
    std::fseek(file_, 0, SEEK_END);
}

Ledger::~Ledger() {
    if (file_) std::fclose(file_);
}

void Ledger::replay_record(const LedgerRecord& rec) {
    for (const TxSection& sec : rec.tx.body.sections) {
        for (const InputBundle& in : sec.inputs) {
            spent_images_[key_of(in.key_image)] = rec.seq;
        }
        for (const OneTimeAccount& out : sec.outputs) {
            unspent_[key_of(out.otpk)] = out;
        }
    }
    if (rec.tx.body.kind == TxKind::CoinGen) {
        for (const TypeTag& t : rec.tx.body.revealed_types) {
            registry_.push_back(t);
            registry_ids_.insert(t.id());
        }
    }
    log_.push_back(rec);
}

void Ledger::append_to_file(const LedgerRecord& rec) {
    Bytes payload = record_payload(rec);
    Writer w;
    w.u64(payload.size());
    w.raw(as_span(payload));
    w.raw(as_span(digest32("ctl/ledger-record", {as_span(payload)})));
    const Bytes& frame = w.bytes();
    if (std::fwrite(frame.data(), 1, frame.size(), file_) != frame.size() ||
        std::fflush(file_) != 0 || fsync(fileno(file_)) != 0) {
        throw LedgerError("storage failure while appending record");
    }
}

Ledger::ApplyResult Ledger::apply(const Transaction& tx) {
    std::unique_lock lock(mu_);
    LiveContext ctx(unspent_, spent_images_, registry_, registry_ids_);
    VerifyStatus status = verify_tx(pp_, ctx, tx);
    if (status != VerifyStatus::Ok) return ApplyResult{status, std::nullopt};

    LedgerRecord rec;
    rec.seq = log_.size() + 1;
    rec.timestamp_ms = now_ms();
    if (!log_.empty() && rec.timestamp_ms < log_.back().timestamp_ms) {
        rec.timestamp_ms = log_.back().timestamp_ms;
    }
    rec.tx = tx;

    append_to_file(rec);  // durable before the state change becomes visible

    // Inputs leave the unspent set; ring decoys are untouched. The spent
    // account itself is unidentified, so only the key image is recorded and
    // outputs are added.
    replay_record(rec);
    return ApplyResult{VerifyStatus::Ok, rec};
}

std::vector<ScanHit> Ledger::scan(const LongTermKeys& keys) const {
    return scan_impl(keys.view_key(), keys.lts);
}

std::vector<ScanHit> Ledger::scan(const ViewKey& ltv) const {
    return scan_impl(ltv, std::nullopt);
}

std::vector<ScanHit> Ledger::scan_impl(const ViewKey& ltv,
                                       const std::optional<Scalar>& lts) const {
    std::shared_lock lock(mu_);
    std::vector<ScanHit> hits;
    LongTermKeys keys;
    if (lts) {
        keys.lts = lts;
        keys.vsk = ltv.vsk;
        keys.tsk = ltv.tsk;
        keys.ltp = ltv.ltp;
    }
    for (const LedgerRecord& rec : log_) {
        for (const TxSection& sec : rec.tx.body.sections) {
            for (const OneTimeAccount& out : sec.outputs) {
                auto res = view(pp_, ltv, out);
                if (!res) continue;
                ScanHit hit;
                hit.account = out;
                hit.amount = res->amount;
                hit.ty = res->ty;
                hit.coin_key = res->coin_key;
                hit.seq = rec.seq;
                hit.timestamp_ms = rec.timestamp_ms;
                if (lts) {
                    hit.spent_known = true;
                    Element ki = key_image(receive(keys, out), out);
                    auto it = spent_images_.find(key_of(ki));
                    if (it != spent_images_.end()) {
                        hit.spent = true;
                        hit.spent_seq = it->second;
                        hit.spent_timestamp_ms = log_.at(it->second - 1).timestamp_ms;
                    }
                }
                hits.push_back(std::move(hit));
            }
        }
    }
    return hits;
}

Snapshot Ledger::snapshot() const {
    std::shared_lock lock(mu_);
    Snapshot s;
    s.unspent = unspent_;
    s.spent_images = spent_images_;
    s.registry = registry_;
    s.registry_ids = registry_ids_;
    s.record_count = log_.size();
    return s;
}

Bytes Ledger::state_digest() const {
    std::shared_lock lock(mu_);
    Writer w;
    w.u64(log_.size());
    w.u64(unspent_.size());
    for (const auto& [k, acc] : unspent_) {
        w.var_bytes(as_span(k));
        w.raw(as_span(acc.encode()));
    }
    w.u64(spent_images_.size());
    for (const auto& [k, seq] : spent_images_) {
        w.var_bytes(as_span(k));
        w.u64(seq);
    }
    w.u64(registry_.size());
    for (const TypeTag& t : registry_) w.raw(as_span(t.encode()));
    return digest32("ctl/state-digest", {as_span(w.bytes())});
}

LedgerStats Ledger::stats() const {
    std::shared_lock lock(mu_);
    return LedgerStats{log_.size(), unspent_.size(), registry_.size(), spent_images_.size()};
}

void Ledger::for_each_record(const std::function<void(const LedgerRecord&)>& fn) const {
    std::shared_lock lock(mu_);
    for (const LedgerRecord& rec : log_) fn(rec);
}

}  // namespace ctl
