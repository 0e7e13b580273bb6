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

#include "ctl/group.hpp"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace ctl {

void crypto_init() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw std::runtime_error("libsodium initialization failed");
    });
}

std::string to_hex(ByteSpan data) {
    std::string out(data.size() * 2 + 1, '\0');
    sodium_bin2hex(out.data(), out.size(), data.data(), data.size());
    out.resize(data.size() * 2);
    return out;
}

Bytes from_hex(std::string_view hex) {
    Bytes out(hex.size() / 2 + 1);
    size_t out_len = 0;
    if (sodium_hex2bin(out.data(), out.size(), hex.data(), hex.size(), nullptr, &out_len,
                       nullptr) != 0) {
        throw std::invalid_argument("invalid hex string");
    }
    out.resize(out_len);
    return out;
}

Scalar Scalar::from_u64(uint64_t v) {
    Scalar s;
    for (int i = 0; i < 8; i++) s.b_[i] = static_cast<uint8_t>(v >> (8 * i));
    return s;
}

Scalar Scalar::random() {
    crypto_init();
    Scalar s;
    crypto_core_ristretto255_scalar_random(s.b_.data());
    return s;
}

Scalar Scalar::reduce_wide(ByteSpan wide64) {
    crypto_init();
    if (wide64.size() != 64) throw std::invalid_argument("reduce_wide expects 64 bytes");
    Scalar s;
    crypto_core_ristretto255_scalar_reduce(s.b_.data(), wide64.data());
    return s;
}

std::optional<Scalar> Scalar::from_bytes(ByteSpan b) {
    crypto_init();
    if (b.size() != kScalarBytes) return std::nullopt;
    // Canonical iff reducing the padded value is the identity map.
    uint8_t wide[64] = {0};
    std::memcpy(wide, b.data(), 32);
    Scalar s;
    crypto_core_ristretto255_scalar_reduce(s.b_.data(), wide);
    if (std::memcmp(s.b_.data(), b.data(), 32) != 0) return std::nullopt;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r;
    crypto_core_ristretto255_scalar_add(r.b_.data(), b_.data(), o.b_.data());
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r;
    crypto_core_ristretto255_scalar_sub(r.b_.data(), b_.data(), o.b_.data());
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r;
    crypto_core_ristretto255_scalar_mul(r.b_.data(), b_.data(), o.b_.data());
    return r;
}

Scalar Scalar::negate() const {
    Scalar r;
    crypto_core_ristretto255_scalar_negate(r.b_.data(), b_.data());
    return r;
}

Scalar Scalar::invert() const {
    Scalar r;
    if (crypto_core_ristretto255_scalar_invert(r.b_.data(), b_.data()) != 0) {
        throw std::domain_error("cannot invert zero scalar");
    }
    return r;
}

bool Scalar::is_zero() const {
    uint8_t acc = 0;
    for (uint8_t v : b_) acc |= v;
    return acc == 0;
}

const Element& Element::base() {
    static const Element g = [] {
        crypto_init();
        Element e;
        if (crypto_scalarmult_ristretto255_base(e.b_.data(), Scalar::one().bytes().data()) != 0) {
            throw std::runtime_error("base point computation failed");
        }
        return e;
    }();
    return g;
}

Element Element::from_uniform(ByteSpan wide64) {
    crypto_init();
    if (wide64.size() != 64) throw std::invalid_argument("from_uniform expects 64 bytes");
    Element e;
    crypto_core_ristretto255_from_hash(e.b_.data(), wide64.data());
    return e;
}

std::optional<Element> Element::from_bytes(ByteSpan b) {
    crypto_init();
    if (b.size() != kElementBytes) return std::nullopt;
    Element e;
    std::memcpy(e.b_.data(), b.data(), kElementBytes);
    if (e.is_identity()) return e;
    if (crypto_core_ristretto255_is_valid_point(e.b_.data()) != 1) return std::nullopt;
    return e;
}

Element Element::operator+(const Element& o) const {
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    Element r;
    if (crypto_core_ristretto255_add(r.b_.data(), b_.data(), o.b_.data()) != 0) {
        throw std::runtime_error("group addition on invalid element");
    }
    return r;
}

Element Element::operator-(const Element& o) const {
    if (o.is_identity()) return *this;
    if (is_identity()) {
        Element r;
        // 0 - P = (-1)*P
        if (crypto_scalarmult_ristretto255(r.b_.data(),
                                           Scalar::one().negate().bytes().data(),
                                           o.b_.data()) != 0) {
            throw std::runtime_error("group negation on invalid element");
        }
        return r;
    }
    Element r;
    if (crypto_core_ristretto255_sub(r.b_.data(), b_.data(), o.b_.data()) != 0) {
        throw std::runtime_error("group subtraction on invalid element");
    }
    return r;
}

Element Element::operator*(const Scalar& s) const {
    // In a prime-order group s*P is the identity iff s == 0 or P == identity;
    // libsodium rejects those, so short-circuit them here.
    if (s.is_zero() || is_identity()) return identity();
    Element r;
    if (crypto_scalarmult_ristretto255(r.b_.data(), s.bytes().data(), b_.data()) != 0) {
        throw std::runtime_error("scalar multiplication on invalid element");
    }
    return r;
}

Element Element::mul_base(const Scalar& s) {
    crypto_init();
    if (s.is_zero()) return identity();
    Element r;
    if (crypto_scalarmult_ristretto255_base(r.b_.data(), s.bytes().data()) != 0) {
        throw std::runtime_error("base multiplication failed");
    }
    return r;
}

bool Element::is_identity() const {
    uint8_t acc = 0;
    for (uint8_t v : b_) acc |= v;
    return acc == 0;
}

}  // namespace ctl
