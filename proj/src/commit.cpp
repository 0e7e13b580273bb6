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

#include "ctl/commit.hpp"

namespace ctl {

std::string_view domain_label(TypeDomain d) {
    switch (d) {
        case TypeDomain::Design: return "design";
        case TypeDomain::Property: return "property";
        case TypeDomain::Attribute: return "attribute";
        case TypeDomain::Currency: return "currency";
    }
    throw std::invalid_argument("unknown type domain");
}

TypeDomain domain_from_label(std::string_view label) {
    if (label == "design") return TypeDomain::Design;
    if (label == "property") return TypeDomain::Property;
    if (label == "attribute") return TypeDomain::Attribute;
    if (label == "currency") return TypeDomain::Currency;
    throw std::invalid_argument("unknown type domain: " + std::string(label));
}

Bytes TypeTag::encode() const {
    Writer w;
    w.u8(static_cast<uint8_t>(domain));
    w.raw(as_span(preimage_hash));
    return w.take();
}

TypeTag TypeTag::decode(Reader& r) {
    TypeTag t;
    uint8_t d = r.u8();
    if (d > static_cast<uint8_t>(TypeDomain::Currency)) throw DecodeError("bad type domain");
    t.domain = static_cast<TypeDomain>(d);
    ByteSpan h = r.raw(32);
    t.preimage_hash.assign(h.begin(), h.end());
    return t;
}

TypeTag make_type_tag(TypeDomain domain, ByteSpan preimage) {
    return TypeTag{domain, digest32("ctl/type-preimage", {preimage})};
}

Commitment commit(const PublicParams& pp, uint64_t amount, const Element& type_generator,
                  const Scalar& blinding) {
    if (!pp.amount_in_range(amount)) throw std::out_of_range("amount exceeds range width");
    return Commitment{type_generator * Scalar::from_u64(amount) + Element::mul_base(blinding)};
}

bool verify_open(const PublicParams& pp, const Commitment& com, uint64_t amount,
                 const Element& type_generator, const Scalar& blinding) {
    if (!pp.amount_in_range(amount)) return false;
    return com == commit(pp, amount, type_generator, blinding);
}

}  // namespace ctl
