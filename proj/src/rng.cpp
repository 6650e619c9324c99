// SPDX-License-Identifier: Apache-2.0
#include "ssrs/rng.hpp"

namespace ssrs {

std::uint64_t Rng::mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), eng_(mix(seed)) {}

std::uint64_t Rng::next() { return eng_(); }

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection keeps the draw exact and independent of the standard library's
    // distribution implementation.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
        v = eng_();
    } while (v >= limit);
    return v % bound;
}

Rng Rng::derive(std::uint64_t stage) const { return Rng(mix(seed_ ^ mix(stage + 0x5eed))); }

}  // namespace ssrs
