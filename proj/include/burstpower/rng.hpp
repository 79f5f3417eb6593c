#pragma once

#include <cstdint>
#include <random>

namespace burstpower {

using Rng = std::mt19937_64;

/// Independent per-job seed (splitmix64 of base and index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace burstpower
