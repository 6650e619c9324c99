// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace ssrs {

// Seeded source. Independent streams are derived per stage so that adding a
// draw in one stage never shifts the draws of another.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0);

    std::uint64_t next();
    // Uniform in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);
    Rng derive(std::uint64_t stage) const;
    std::uint64_t seed() const { return seed_; }

    static std::uint64_t mix(std::uint64_t x);

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

// Stage identifiers for Rng::derive.
namespace stage {
inline constexpr std::uint64_t keygen = 1;
inline constexpr std::uint64_t encrypt = 2;
inline constexpr std::uint64_t distinguish = 3;
inline constexpr std::uint64_t attack = 4;
inline constexpr std::uint64_t validate = 5;
inline constexpr std::uint64_t reproduce = 6;
inline constexpr std::uint64_t message = 7;
}  // namespace stage

}  // namespace ssrs
