// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "ssrs/rng.hpp"
#include "ssrs/scheme.hpp"
#include "ssrs/twisted.hpp"

using namespace ssrs;

TEST_SUITE("twisted") {
    TEST_CASE("twisted product over GF(5)") {
        auto K = make_field(5, 1);
        const std::vector<elem_t> a{1, 2}, b{3, 4};
        CHECK(twisted_product_vec(*K, a, b, 2) == std::vector<elem_t>{3, 0, 3});
    }

    TEST_CASE("twisted product is symmetric and bilinear") {
        auto K = make_field(7, 1);
        Rng rng(4);
        for (int t = 0; t < 50; ++t) {
            const std::size_t lambda = 1 + rng.below(4), n = 1 + rng.below(5);
            std::vector<elem_t> a(lambda * n), b(lambda * n), c(lambda * n);
            for (auto* v : {&a, &b, &c})
                for (auto& e : *v) e = K->random(rng);
            CHECK(twisted_product_vec(*K, a, b, lambda) == twisted_product_vec(*K, b, a, lambda));
            std::vector<elem_t> bc(b.size());
            for (std::size_t i = 0; i < b.size(); ++i) bc[i] = K->add(b[i], c[i]);
            const auto lhs = twisted_product_vec(*K, a, bc, lambda);
            const auto p1 = twisted_product_vec(*K, a, b, lambda), p2 = twisted_product_vec(*K, a, c, lambda);
            for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == K->add(p1[i], p2[i]));
        }
    }

    TEST_CASE("K set") {
        CHECK(k_set(3, 5, 2) == std::vector<std::size_t>{5, 11});
        CHECK(k_set(2, 3, 4).empty());
    }

    TEST_CASE("expected dimensions of the table rows") {
        const ExpectedDims a = expected_dims(7, 3, 2, 120, 55);
        CHECK(a.random_expected == 360);
        CHECK(a.rs_expected == 327);
        CHECK(a.condition_ok);
        const ExpectedDims b = expected_dims(7, 5, 3, 160, 75);
        CHECK(b.random_expected == 800);
        CHECK(b.rs_expected == 745);
        CHECK(b.condition_ok);
    }

    TEST_CASE("shortening choice at the scaled high-rate parameters") {
        const SchemeParams P{13, 3, 2, 200, 120};
        const auto s = choose_shortening(P);
        REQUIRE(s);
        CHECK(*s >= 2 * P.k - P.n);
        const ExpectedDims d = expected_dims(13, 3, 2, P.n - *s, P.k - *s);
        CHECK(d.condition_ok);
        // The worked value s = 60: n' = 140, k' = 60, 357 < 420.
        const ExpectedDims e = expected_dims(13, 3, 2, 140, 60);
        CHECK(e.rs_expected == 357);
        CHECK(e.random_expected == 420);
        CHECK(e.condition_ok);
        CHECK_FALSE(choose_shortening(SchemeParams{7, 4, 2, 150, 120}));
    }

    TEST_CASE("sampled square matches the exact square") {
        const SchemeParams P{7, 3, 2, 60, 28};
        Rng rng(3);
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        const ExpandedCode E{LinearCode{kp.G_pub}, P.lambda, P.n};
        TwistedOptions opt;
        opt.sampled = true;
        opt.seed = 77;
        CHECK(code_equal(twisted_square(E).code, twisted_square(E, opt).code));
        CHECK(code_equal(shortened_twisted_square(E, 3).code, shortened_twisted_square(E, 3, opt).code));
    }

    TEST_CASE("table row dimensions on a few keys") {
        Rng rng(12);
        const SchemeParams P{7, 3, 2, 120, 55};
        for (int t = 0; t < 3; ++t) {
            const SsrsKeyPair kp = ssrs_keygen(P, rng);
            CHECK(shortened_twisted_square(ExpandedCode{LinearCode{kp.G_pub}, 2, 120}, 3).dim() == 327);
            CHECK(shortened_twisted_square(random_parent_public(P, rng), 3).dim() == 360);
        }
    }

    TEST_CASE("distinguisher verdicts") {
        Rng rng(5);
        const SchemeParams P{13, 3, 2, 120, 50};
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        const DistinguisherReport a = distinguish(ExpandedCode{LinearCode{kp.G_pub}, 2, 120}, P);
        CHECK(a.verdict == Verdict::grs_like);
        CHECK(a.observed_dim == a.rs_expected);
        const DistinguisherReport b = distinguish(random_parent_public(P, rng), P);
        CHECK(b.verdict == Verdict::random_like);
        CHECK(b.observed_dim == b.random_expected);

        const SchemeParams Q{7, 4, 2, 150, 120};
        const SsrsKeyPair kq = ssrs_keygen(Q, rng);
        const DistinguisherReport c = distinguish(ExpandedCode{LinearCode{kq.G_pub}, 2, 150}, Q);
        CHECK(c.verdict == Verdict::inconclusive);
        CHECK(c.note.find("ineffective") != std::string::npos);
    }

    TEST_CASE("distinguisher on a high-rate key uses shortening") {
        Rng rng(6);
        const SchemeParams P{13, 3, 2, 200, 120};
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        DistinguishOptions opt;
        opt.shorten_blocks = 60;
        const DistinguisherReport r = distinguish(ExpandedCode{LinearCode{kp.G_pub}, 2, 200}, P, opt);
        CHECK(r.shorten_blocks_used == 60);
        CHECK(r.observed_dim == 357);
        CHECK(r.random_expected == 420);
        CHECK(r.verdict == Verdict::grs_like);
    }

    TEST_CASE("twisted square basis of a 2-dimensional subspace") {
        auto F = make_field(13, 3);
        Rng rng(2);
        for (int t = 0; t < 20; ++t) {
            const Basis S = random_subspace(*F, 2, rng);
            const Basis B = twisted_square_basis(*F, S);
            CHECK(B == Basis{F->mul(S[0], S[0]), F->mul(S[0], S[1]), F->mul(S[1], S[1])});
        }
    }
}
