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

#include <array>
#include <optional>

#include "ctl/bytes.hpp"

namespace ctl {

// Arithmetic over the ristretto255 prime-order group. Scalars are integers
// modulo the group order, elements carry their canonical 32-byte encoding.
// The identity element encodes as all zeros and is a first-class value;
// scalar multiplication and addition handle it without error paths.

inline constexpr size_t kScalarBytes = 32;
inline constexpr size_t kElementBytes = 32;

// Initializes libsodium; must be called before any group operation.
// Safe to call repeatedly from multiple threads.
void crypto_init();

class Scalar {
public:
    Scalar() = default;

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return from_u64(1); }
    static Scalar from_u64(uint64_t v);
    static Scalar random();
    // Reduces 64 uniform bytes modulo the group order.
    static Scalar reduce_wide(ByteSpan wide64);
    // Rejects non-canonical encodings (value >= group order).
    static std::optional<Scalar> from_bytes(ByteSpan b);

    ByteSpan bytes() const { return ByteSpan(b_.data(), b_.size()); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar negate() const;
    Scalar invert() const;  // throws std::domain_error on zero

    bool is_zero() const;
    bool operator==(const Scalar& o) const { return b_ == o.b_; }

private:
    std::array<uint8_t, kScalarBytes> b_{};
};

class Element {
public:
    Element() = default;  // identity

    static Element identity() { return Element(); }
    static const Element& base();  // generator G
    // Maps 64 uniform bytes to a group element with unknown discrete log.
    static Element from_uniform(ByteSpan wide64);
    // Rejects non-canonical encodings; accepts the identity.
    static std::optional<Element> from_bytes(ByteSpan b);

    ByteSpan bytes() const { return ByteSpan(b_.data(), b_.size()); }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Scalar& s) const;
    static Element mul_base(const Scalar& s);  // s*G

    bool is_identity() const;
    bool operator==(const Element& o) const { return b_ == o.b_; }
    bool operator<(const Element& o) const { return b_ < o.b_; }

private:
    std::array<uint8_t, kElementBytes> b_{};
};

}  // namespace ctl
