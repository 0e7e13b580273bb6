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

#include "ctl/group.hpp"

namespace ctl {

// Version byte folded into every Fiat-Shamir transcript.
inline constexpr uint8_t kProtocolVersion = 1;

struct PublicParams {
    uint32_t security_bits = 128;
    uint32_t range_bits = 16;  // amount range [0, 2^range_bits)
    uint32_t ring_size = 27;   // anonymity set size per input

    uint64_t max_amount() const {
        return range_bits >= 64 ? UINT64_MAX : ((uint64_t{1} << range_bits) - 1);
    }
    bool amount_in_range(uint64_t a) const { return range_bits >= 64 || a <= max_amount(); }

    const Element& g() const { return Element::base(); }

    bool operator==(const PublicParams& o) const {
        return security_bits == o.security_bits && range_bits == o.range_bits &&
               ring_size == o.ring_size;
    }
};

// Deterministic; the only supported security level is 128 bits.
// Throws std::invalid_argument otherwise.
inline PublicParams setup(uint32_t security_bits) {
    if (security_bits != 128) throw std::invalid_argument("unsupported security level");
    crypto_init();
    return PublicParams{.security_bits = 128, .range_bits = 16, .ring_size = 27};
}

// CI-speed profile: narrow range proofs, small rings.
inline PublicParams test_profile() {
    PublicParams p = setup(128);
    p.range_bits = 16;
    p.ring_size = 8;
    return p;
}

// Full-width production profile.
inline PublicParams paper_profile() {
    PublicParams p = setup(128);
    p.range_bits = 64;
    p.ring_size = 27;
    return p;
}

}  // namespace ctl
