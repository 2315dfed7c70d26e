#pragma once

#include <cstdint>

namespace courtlab {

// splitmix64 step; used to derive independent per-trial seeds from one
// master seed so results do not depend on thread scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0xd1b54a32d192ed03ULL * (index + 1));
    return splitmix64(s);
}

}  // namespace courtlab
