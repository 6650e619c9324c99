// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssrs/expansion.hpp"

namespace ssrs {

struct SchemeParams {
    unsigned q = 0, m = 0, lambda = 0;
    std::size_t n = 0, k = 0;

    std::size_t t() const { return (n - k) / 2; }
    // km - n(m - lambda), clamped at zero.
    std::size_t subcode_dim() const;
    std::string describe() const;
};

inline std::size_t tri(std::size_t l) { return l * (l + 1) / 2; }

// Per block, offset C(s+1,2)+r holds a_r b_s + a_s b_r (r < s) or a_r b_r.
std::vector<elem_t> twisted_product_vec(const Field& K, std::span<const elem_t> a, std::span<const elem_t> b,
                                        std::size_t lambda);

struct TwistedOptions {
    bool sampled = false;       // products of random codewords instead of all pairs
    std::size_t extra = 64;     // samples beyond the code length in sampled mode
    std::uint64_t seed = 0;
};
// Result has block length C(lambda+1, 2).
ExpandedCode twisted_square(const ExpandedCode& E, const TwistedOptions& opt = {});
// {C(lambda+1,2) i + j : j in [m, C(lambda+1,2))}
std::vector<std::size_t> k_set(std::size_t lambda, std::size_t m, std::size_t n);
// Twisted square shortened at K; block length m.
ExpandedCode shortened_twisted_square(const ExpandedCode& E, std::size_t m, const TwistedOptions& opt = {});
// Same, but per block shortens the last coordinates on which the local
// relations among the products are independent, so that every block keeps a
// basis. Equals the above when the first m products of each block are a basis.
ExpandedCode adapted_shortened_twisted_square(const ExpandedCode& E, std::size_t m, const TwistedOptions& opt = {});
// First m elements of the product family in twisted order.
Basis twisted_square_basis(const Field& F, const Basis& S);

struct ExpectedDims {
    std::size_t random_expected = 0;
    std::size_t rs_expected = 0;
    bool condition_ok = false;
};
ExpectedDims expected_dims(unsigned q, unsigned m, unsigned lambda, std::size_t n, std::size_t k);
// Smallest number of blocks to shorten, from max(0, 2k - n), meeting the
// condition with the given relative slack.
std::optional<std::size_t> choose_shortening(const SchemeParams& P, double slack = 0.05);

enum class Verdict { grs_like, random_like, inconclusive };
const char* verdict_name(Verdict v);

struct DistinguisherReport {
    std::size_t observed_dim = 0;
    std::size_t random_expected = 0;
    std::size_t rs_expected = 0;
    bool condition_ok = false;
    Verdict verdict = Verdict::inconclusive;
    std::size_t shorten_blocks_used = 0;
    std::string note;

    std::string to_text() const;
};

struct DistinguishOptions {
    std::optional<std::size_t> shorten_blocks;  // overrides choose_shortening
    bool random_blocks = false;                 // seeded-random block choice instead of the first s
    std::uint64_t seed = 0;
    TwistedOptions twisted;
};
DistinguisherReport distinguish(const ExpandedCode& pub, const SchemeParams& P, const DistinguishOptions& opt = {});

}  // namespace ssrs
