#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vqts::core {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic fan-out of one global seed into per-component streams,
// keyed by a component tag so adding components never shifts other streams.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char ch : tag) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = global_seed ^ h;
    return splitmix64(s);
}

}  // namespace vqts::core
