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

#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctl {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

inline ByteSpan as_span(const Bytes& b) { return ByteSpan(b.data(), b.size()); }

inline ByteSpan str_span(std::string_view s) {
    return ByteSpan(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

std::string to_hex(ByteSpan data);
Bytes from_hex(std::string_view hex);  // throws std::invalid_argument on bad input

// Canonical serialization: 8-byte little-endian integers, length-prefixed
// byte strings. All hashes and wire formats are computed over this encoding.
class Writer {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; i++) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void raw(ByteSpan b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void var_bytes(ByteSpan b) {
        u64(b.size());
        raw(b);
    }
    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

class DecodeError : public std::runtime_error {
public:
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

class Reader {
public:
    explicit Reader(ByteSpan data) : data_(data) {}

    uint8_t u8() {
        need(1);
        return data_[pos_++];
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }
    ByteSpan raw(size_t n) {
        need(n);
        ByteSpan out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    Bytes var_bytes(size_t max_len = 1u << 24) {
        uint64_t n = u64();
        if (n > max_len) throw DecodeError("length prefix too large");
        ByteSpan b = raw(static_cast<size_t>(n));
        return Bytes(b.begin(), b.end());
    }
    bool done() const { return pos_ == data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }
    void expect_done() const {
        if (!done()) throw DecodeError("trailing bytes");
    }

private:
    void need(size_t n) const {
        if (pos_ + n > data_.size()) throw DecodeError("short read");
    }
    ByteSpan data_;
    size_t pos_ = 0;
};

}  // namespace ctl
