// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "ssrs/grs.hpp"
#include "ssrs/poly.hpp"
#include "ssrs/rng.hpp"

using namespace ssrs;

TEST_SUITE("grs") {
    TEST_CASE("generator, parity and encoding agree") {
        for (auto [q, m] : {std::pair{7u, 3u}, {13u, 3u}, {2u, 6u}}) {
            auto F = make_field(q, m);
            Rng rng(q + m);
            for (int t = 0; t < 20; ++t) {
                const std::size_t n = 5 + rng.below(30), k = 1 + rng.below(n - 2);
                const GrsCode C = random_grs(F, n, k, rng);
                const Matrix G = grs_generator(C), H = grs_parity(C);
                CHECK(G.rows() == k);
                CHECK(H.rows() == n - k);
                CHECK(rank(H) == n - k);
                CHECK((G * H.transpose()).is_zero());
                std::vector<elem_t> msg(k);
                for (auto& v : msg) v = F->random(rng);
                const auto c = grs_encode(C, msg);
                CHECK(c == vec_mul(msg, G));
                // Polynomial evaluation oracle.
                for (std::size_t i = 0; i < n; ++i) CHECK(c[i] == F->mul(C.y[i], poly::eval(*F, msg, C.x[i])));
            }
        }
    }

    TEST_CASE("support is distinct and multiplier nonzero") {
        auto F = make_field(7, 3);
        Rng rng(2);
        const auto x = random_support(*F, 343, rng);
        CHECK(std::set<elem_t>(x.begin(), x.end()).size() == 343);
        CHECK_THROWS(rs_code(F, {1, 1, 2}, 1));
    }

    TEST_CASE("Gao decoder corrects up to t errors") {
        for (auto [q, m] : {std::pair{13u, 3u}, {7u, 3u}}) {
            auto F = make_field(q, m);
            Rng rng(m * 17 + q);
            for (int trial = 0; trial < 40; ++trial) {
                const std::size_t n = 10 + rng.below(60), k = 1 + rng.below(n - 2);
                const GrsCode C = random_grs(F, n, k, rng);
                std::vector<elem_t> msg(k);
                for (auto& v : msg) v = F->random(rng);
                const auto c = grs_encode(C, msg);
                const std::size_t t = (n - k) / 2, w = rng.below(t + 1);
                auto r = c;
                std::set<std::size_t> pos;
                while (pos.size() < w) pos.insert(rng.below(n));
                for (auto p : pos) r[p] = F->add(r[p], F->random_nonzero(rng));
                const DecodeResult d = decode(C, r);
                REQUIRE(d.ok);
                CHECK(d.codeword == c);
                CHECK(std::set<std::size_t>(d.error_positions.begin(), d.error_positions.end()) == pos);
            }
        }
    }

    TEST_CASE("projective support frame of a GRS code") {
        auto F = make_field(13, 3);
        Rng rng(3);
        for (int t = 0; t < 20; ++t) {
            const std::size_t n = 12 + rng.below(40), k = 2 + rng.below(n - 4);
            const GrsCode C = random_grs(F, n, k, rng);
            const auto frame = support_frame(grs_generator(C), k);
            REQUIRE(frame);
            CHECK((*frame)[0] == ProjPoint{0, 1});
            CHECK((*frame)[1] == ProjPoint{1, 1});
            CHECK((*frame)[2].infinite());
            // The frame is the support moved by a Moebius map fixing the
            // cross-ratio of every four positions.
            auto cross = [&](elem_t a, elem_t b, elem_t c, elem_t d) {
                return F->div(F->mul(F->sub(a, c), F->sub(b, d)), F->mul(F->sub(a, d), F->sub(b, c)));
            };
            const auto x = finalize_frame(*F, *frame);
            REQUIRE(x);
            for (std::size_t i = 3; i + 1 < n; i += 5)
                CHECK(cross(C.x[0], C.x[1], C.x[i], C.x[i + 1]) == cross((*x)[0], (*x)[1], (*x)[i], (*x)[i + 1]));
        }
    }

    TEST_CASE("Sidelnikov-Shestakov recovers an equal code") {
        for (auto [q, m] : {std::pair{13u, 3u}, {7u, 3u}, {2u, 7u}}) {
            auto F = make_field(q, m);
            Rng rng(q * 11 + m);
            for (int t = 0; t < 20; ++t) {
                const std::size_t n = 10 + rng.below(50), k = 2 + rng.below(n - 4);
                const GrsCode C = random_grs(F, n, k, rng);
                const Matrix G = grs_generator(C);
                const auto R = sidelnikov_shestakov(G, k);
                REQUIRE(R);
                CHECK(R->x[0] == 0);
                CHECK(R->x[1] == 1);
                CHECK(code_equal(grs_generator(*R), G));
                // Normalized output is a fixed point.
                const auto again = sidelnikov_shestakov(grs_generator(*R), k);
                REQUIRE(again);
                CHECK(again->x == R->x);
                CHECK(code_equal(grs_generator(*again), G));
            }
        }
    }

    TEST_CASE("Sidelnikov-Shestakov rejects random codes") {
        auto F = make_field(13, 3);
        Rng rng(8);
        int rejected = 0;
        for (int t = 0; t < 10; ++t) {
            const Matrix G = random_matrix(F, 6, 20, rng);
            if (!sidelnikov_shestakov(G, 6)) ++rejected;
        }
        CHECK(rejected == 10);
    }

    TEST_CASE("renormalize keeps the code") {
        auto F = make_field(7, 3);
        Rng rng(5);
        int done = 0;
        for (int t = 0; t < 20; ++t) {
            const GrsCode C = random_grs(F, 20, 7, rng);
            const auto R = renormalize(C, {{{3, 5}, {7, 0}, {11, 1}}});
            if (!R) continue;  // some position was sent to infinity
            ++done;
            CHECK(R->x[3] == 5);
            CHECK(R->x[7] == 0);
            CHECK(R->x[11] == 1);
            CHECK(code_equal(grs_generator(*R), grs_generator(C)));
        }
        CHECK(done >= 10);
    }
}
