#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace prf {

/// 64-bit FNV-1a. Used for analyzer/config/index fingerprints, not security.
inline uint64_t fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ull) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Fixed-width lowercase hex, the printable form used in provenance headers.
inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

} // namespace prf
