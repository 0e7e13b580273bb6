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

#include <string_view>

#include "ctl/hashing.hpp"
#include "ctl/params.hpp"

namespace ctl {

enum class TypeDomain : uint8_t {
    Design = 0,
    Property = 1,
    Attribute = 2,
    Currency = 3,
};

std::string_view domain_label(TypeDomain d);
TypeDomain domain_from_label(std::string_view label);  // throws on unknown label

// A token type: a group generator derived by hashing a domain label and the
// digest of the type's preimage (CAD file bytes, property label, ...).
// Nobody knows the discrete log of the generator with respect to G.
struct TypeTag {
    TypeDomain domain = TypeDomain::Currency;
    Bytes preimage_hash;  // 32 bytes

    Element generator() const { return hash_to_group(domain_label(domain), as_span(preimage_hash)); }

    // Registry key identifying this type.
    Bytes id() const {
        return digest32("ctl/type-id", {str_span(domain_label(domain)), as_span(preimage_hash)});
    }

    Bytes encode() const;
    static TypeTag decode(Reader& r);

    bool operator==(const TypeTag& o) const {
        return domain == o.domain && preimage_hash == o.preimage_hash;
    }
};

TypeTag make_type_tag(TypeDomain domain, ByteSpan preimage);

struct Commitment {
    Element point;

    Commitment operator+(const Commitment& o) const { return {point + o.point}; }
    bool operator==(const Commitment& o) const { return point == o.point; }
};

// com = a*T + r*G. Throws std::out_of_range when the amount exceeds the
// range-proof width.
Commitment commit(const PublicParams& pp, uint64_t amount, const Element& type_generator,
                  const Scalar& blinding);

bool verify_open(const PublicParams& pp, const Commitment& com, uint64_t amount,
                 const Element& type_generator, const Scalar& blinding);

}  // namespace ctl
