#pragma once

#include <cstdint>
#include <random>

namespace arbq {

// splitmix64; used to derive independent stream seeds from one base seed
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    splitmix64_next(s);
    return splitmix64_next(s);
}

// uniform in [0, 1); avoids the implementation-defined std distributions so
// results are bit-identical everywhere mt19937_64 is
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
}

}  // namespace arbq
