// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ssrs/attack.hpp"
#include "ssrs/rng.hpp"
#include "ssrs/scheme.hpp"

using namespace ssrs;

namespace {

BasisVector random_full_bases(const Field& F, std::size_t n, Rng& rng) {
    BasisVector out(n);
    for (auto& b : out) b = complete_basis(F, random_subspace(F, F.m(), rng));
    return out;
}

// B2_i = a_i sigma^j(B_i) for one common j and some scalars a_i.
std::optional<unsigned> proportional_up_to_frobenius(const Field& F, const BasisVector& B, const BasisVector& B2) {
    for (unsigned j = 0; j < F.m(); ++j) {
        bool ok = true;
        for (std::size_t i = 0; i < B.size() && ok; ++i) {
            const elem_t a = F.div(B2[i][0], F.frobenius(B[i][0], j));
            for (std::size_t l = 0; l < B[i].size() && ok; ++l) ok = B2[i][l] == F.mul(a, F.frobenius(B[i][l], j));
        }
        if (ok) return j;
    }
    return std::nullopt;
}

Matrix frobenius_matrix(const Matrix& G, unsigned j) {
    Matrix out = G;
    for (std::size_t r = 0; r < G.rows(); ++r)
        for (std::size_t c = 0; c < G.cols(); ++c) out(r, c) = G.field().frobenius(G(r, c), j);
    return out;
}

ExpandedCode ssrs_public(const SsrsKeyPair& kp) {
    return ExpandedCode{LinearCode{kp.G_pub}, kp.params.lambda, kp.params.n};
}

}  // namespace

TEST_SUITE("attack") {
    TEST_CASE("guess and squeeze, structure mode") {
        auto F = make_field(7, 3);
        Rng rng(1);
        for (int t = 0; t < 10; ++t) {
            const std::size_t n = 12, k = 4;
            const LinearCode C = random_code(F, n, k, rng);
            const BasisVector B = random_full_bases(*F, n, rng);
            const ExpandedCode E = expand_code(C, B);
            const GuessSqueezeResult gs = guess_and_squeeze(E, F, k, BasisSearch::structure, rng);
            REQUIRE(gs.ok);
            const auto j = proportional_up_to_frobenius(*F, B, gs.bases);
            REQUIRE(j);
            // Squeeze gives back sigma^j(C) scaled by a.
            const Matrix S = squeeze_matrix(F, E.gen(), gs.bases);
            Matrix target = frobenius_matrix(C.gen, *j);
            for (std::size_t i = 0; i < n; ++i) {
                const elem_t a = F->div(gs.bases[i][0], F->frobenius(B[i][0], *j));
                for (std::size_t r = 0; r < target.rows(); ++r) target(r, i) = F->mul(target(r, i), a);
            }
            CHECK(code_equal(S, target));
        }
    }

    TEST_CASE("guess and squeeze, restricted mode") {
        auto F = make_field(7, 3);
        Rng rng(2);
        for (int t = 0; t < 5; ++t) {
            const std::size_t n = 10, k = 3;
            const LinearCode C = random_code(F, n, k, rng);
            BasisVector B(n);
            for (auto& b : B) {
                elem_t g;
                do g = F->random(rng);
                while (F->degree(g) != 3);
                const elem_t a = F->random_nonzero(rng);
                b = F->power_basis(g);
                for (auto& e : b) e = F->mul(e, a);
            }
            const ExpandedCode E = expand_code(C, B);
            const GuessSqueezeResult gs = guess_and_squeeze(E, F, k, BasisSearch::restricted, rng);
            REQUIRE(gs.ok);
            CHECK(proportional_up_to_frobenius(*F, B, gs.bases).has_value());
            CHECK(rank(squeeze_matrix(F, E.gen(), gs.bases)) == k);
            // Candidate count stays within the q^2m + n q^m budget.
            const double qm = 343;
            CHECK(static_cast<double>(gs.candidates) <= 2 * (qm * qm + n * qm));
        }
    }

    TEST_CASE("a wrong basis pair gives a full-rank tiny squeeze") {
        auto F = make_field(13, 3);
        Rng rng(3);
        const std::size_t n = 10, k = 4;
        const LinearCode C = random_code(F, n, k, rng);
        const BasisVector B = random_full_bases(*F, n, rng);
        const ExpandedCode E = expand_code(C, B);
        const ExpandedCode tiny = block_puncture(block_shorten(E, {2, 3, 4}), {2, 3, 4, 5, 6});
        REQUIRE(tiny.n == 2);
        REQUIRE(tiny.dim() == 3);
        CHECK(rank(squeeze_matrix(F, tiny.gen(), {B[0], B[1]})) == 1);
        int full = 0;
        for (int t = 0; t < 50; ++t)
            if (rank(squeeze_matrix(F, tiny.gen(), random_full_bases(*F, 2, rng))) == 2) ++full;
        CHECK(full >= 45);
    }

    TEST_CASE("support recovery on an expanded RS code") {
        auto F = make_field(13, 3);
        Rng rng(4);
        for (int t = 0; t < 5; ++t) {
            const std::size_t n = 40, k2 = 15;
            const auto x = random_support(*F, n, rng);
            const BasisVector B = random_full_bases(*F, n, rng);
            const ExpandedCode T = expand_code(LinearCode{grs_generator(rs_code(F, x, k2))}, B);
            const SupportRecovery sr = recover_support(T, F, k2, BasisSearch::structure, rng);
            REQUIRE(sr.ok);
            CHECK(sr.x[0] == 0);
            CHECK(sr.x[1] == 1);
            // Re-expansion over the returned bases gives back T.
            CHECK(code_equal(expand_code(LinearCode{grs_generator(rs_code(F, sr.x, k2))}, sr.bases).code, T.code));
            CHECK(code_equal(squeeze_matrix(F, T.gen(), sr.bases), grs_generator(rs_code(F, sr.x, k2))));
        }
    }

    TEST_CASE("low-rate attack recovers valid keys") {
        const SchemeParams P{13, 3, 2, 120, 50};
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            Rng rng(seed);
            const SsrsKeyPair kp = ssrs_keygen(P, rng);
            AttackOptions opt;
            opt.seed = seed;
            const RecoveredKey rk = attack_low_rate(ssrs_public(kp), P, opt);
            CHECK_MESSAGE(rk.valid, rk.stage << ": " << rk.error);
            // Stage 2: the recovered support matches the secret one up to a Moebius map.
            const auto a = sidelnikov_shestakov(grs_generator(rs_code(kp.F, kp.x, P.k)), P.k);
            const auto b = sidelnikov_shestakov(grs_generator(rs_code(kp.F, rk.x, P.k)), P.k);
            REQUIRE(a);
            REQUIRE(b);
            bool same_up_to_frobenius = false;
            for (unsigned j = 0; j < P.m; ++j) {
                std::vector<elem_t> xj = a->x;
                for (auto& e : xj) e = kp.F->frobenius(e, j);
                const auto c = sidelnikov_shestakov(grs_generator(rs_code(kp.F, xj, P.k)), P.k);
                if (c && c->x == b->x) same_up_to_frobenius = true;
            }
            CHECK(same_up_to_frobenius);
        }
    }

    TEST_CASE("low-rate attack on an XGRS key at the table row") {
        const SchemeParams P{7, 3, 2, 120, 55};
        Rng rng(11);
        const XgrsKeyPair kp = xgrs_keygen(P, rng);
        AttackOptions opt;
        opt.seed = 11;
        const RecoveredKey rk = attack(xgrs_public_code(kp.H_pub, P.lambda), P, opt);
        CHECK_MESSAGE(rk.valid, rk.stage << ": " << rk.error);
        CHECK(rk.shorten_blocks == 0);
    }

    TEST_CASE("adapted shortening keeps a basis in every block") {
        const SchemeParams P{7, 5, 3, 160, 75};
        Rng rng(3);
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        const Field& F = *kp.F;
        std::size_t dependent = 0;
        for (const auto& S : kp.subs) {
            Basis prods;
            for (unsigned s = 0; s < 3; ++s)
                for (unsigned r = 0; r <= s; ++r) prods.push_back(F.mul(S[r], S[s]));
            prods.resize(P.m);
            if (rank_over_base(F, prods) < P.m) ++dependent;
        }
        REQUIRE(dependent > 0);  // some block defeats the fixed shortening
        const ExpandedCode E{LinearCode{kp.G_pub}, P.lambda, P.n};
        const ExpandedCode fixed = shortened_twisted_square(E, P.m);
        const ExpandedCode adapted = adapted_shortened_twisted_square(E, P.m);
        CHECK(fixed.dim() == 745);
        CHECK(adapted.dim() == 745);
        CHECK_FALSE(guess_and_squeeze(fixed, kp.F, 2 * P.k - 1, BasisSearch::structure, rng).ok);
        const GuessSqueezeResult g = guess_and_squeeze(adapted, kp.F, 2 * P.k - 1, BasisSearch::structure, rng);
        REQUIRE(g.ok);
        // Bases are fixed only up to scalars and a Frobenius twist; the squeeze is still GRS.
        const Matrix Sq = row_basis(squeeze_matrix(kp.F, adapted.gen(), g.bases));
        REQUIRE(Sq.rows() == 2 * P.k - 1);
        const auto R = sidelnikov_shestakov(Sq, 2 * P.k - 1);
        REQUIRE(R);
        CHECK(code_equal(grs_generator(*R), Sq));
    }

    TEST_CASE("low-rate attack with lambda = 3 and m = 5") {
        const SchemeParams P{7, 5, 3, 160, 75};
        for (std::uint64_t s : {1, 2}) {
            Rng rng(500 + s);
            const SsrsKeyPair kp = ssrs_keygen(P, rng);
            AttackOptions opt;
            opt.seed = s;
            const RecoveredKey rk = attack(ExpandedCode{LinearCode{kp.G_pub}, P.lambda, P.n}, P, opt);
            CHECK_MESSAGE(rk.valid, rk.stage << ": " << rk.error);
        }
    }

    TEST_CASE("high-rate attack and order-independent stitching") {
        const SchemeParams P{13, 3, 2, 200, 120};
        Rng rng(21);
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        AttackOptions a;
        a.seed = 1;
        const RecoveredKey ra = attack_high_rate(ssrs_public(kp), P, a);
        REQUIRE_MESSAGE(ra.valid, ra.stage << ": " << ra.error);
        CHECK(ra.runs >= 2);
        AttackOptions b = a;
        b.seed = 2;
        b.random_windows = true;
        b.shorten_blocks = 60;
        const RecoveredKey rb = attack_high_rate(ssrs_public(kp), P, b);
        REQUIRE_MESSAGE(rb.valid, rb.stage << ": " << rb.error);
        CHECK(rb.shorten_blocks == 60);
        CHECK(ra.x == rb.x);
    }

    TEST_CASE("non-SSRS codes fail at the distinguisher stage") {
        const SchemeParams P{13, 3, 2, 120, 50};
        Rng rng(5);
        const RecoveredKey rk = attack_low_rate(random_parent_public(P, rng), P);
        CHECK_FALSE(rk.valid);
        CHECK_FALSE(rk.not_attackable);
        CHECK(rk.stage == "distinguisher");
    }

    TEST_CASE("barrier parameters are not attackable") {
        const SchemeParams P{7, 4, 2, 150, 120};
        Rng rng(6);
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        const RecoveredKey rk = attack(ssrs_public(kp), P);
        CHECK(rk.not_attackable);
        CHECK_FALSE(rk.valid);
    }

    TEST_CASE("basis recovery unknown count") {
        // lambda = 2, m = 3: 2n unknowns over GF(q^3), (3k - n)(n - k) equations.
        const SchemeParams P{13, 3, 2, 120, 50};
        CHECK(P.subcode_dim() * (P.n - P.k) == (3 * P.k - P.n) * (P.n - P.k));
        Rng rng(7);
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        const BasesRecovery br = recover_bases(ssrs_public(kp), kp.F, kp.x, P.k, rng);
        REQUIRE(br.ok);
        CHECK(br.bases.size() == P.n);
        CHECK(br.equations <= P.subcode_dim() * (P.n - P.k));
        // Solutions are the true bases up to one common scalar.
        const elem_t a = kp.F->div(br.bases[0][0], kp.subs[0][0]);
        for (std::size_t i = 0; i < P.n; ++i)
            for (std::size_t j = 0; j < P.lambda; ++j) CHECK(br.bases[i][j] == kp.F->mul(a, kp.subs[i][j]));
    }

    TEST_CASE("key validation") {
        const SchemeParams P{13, 3, 2, 120, 50};
        Rng rng(8);
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        const ExpandedCode pub = ssrs_public(kp);
        RecoveredKey rk;
        rk.params = P;
        rk.x = kp.x;
        rk.bases = kp.subs;
        Rng vr(1);
        CHECK(validate_key(rk, pub, 10, vr));

        RecoveredKey scaled = rk;
        const elem_t c = kp.F->random_nonzero(rng);
        for (auto& b : scaled.bases)
            for (auto& e : b) e = kp.F->mul(e, c);
        CHECK(validate_key(scaled, pub, 10, vr));

        RecoveredKey perturbed = rk;
        elem_t v = perturbed.x[5];
        do v = kp.F->random(rng);
        while (std::find(rk.x.begin(), rk.x.end(), v) != rk.x.end());
        perturbed.x[5] = v;
        CHECK_FALSE(validate_key(perturbed, pub, 10, vr));

        RecoveredKey broken = rk;
        broken.x.pop_back();
        CHECK_FALSE(validate_key(broken, pub, 10, vr));
    }

    TEST_CASE("canonical Frobenius twist is idempotent and orbit-invariant") {
        auto F = make_field(13, 3);
        Rng rng(9);
        std::vector<ProjPoint> frame{{0, 1}, {1, 1}, {1, 0}};
        for (int i = 0; i < 20; ++i) frame.push_back(proj_normalize(*F, F->random(rng), 1));
        const auto c = canonical_frobenius(*F, frame);
        CHECK(canonical_frobenius(*F, c) == c);
        std::vector<ProjPoint> tw(frame.size());
        for (std::size_t i = 0; i < frame.size(); ++i) tw[i] = proj_frobenius(*F, frame[i], 1);
        CHECK(canonical_frobenius(*F, tw) == c);
    }

    TEST_CASE("full Type I shortening dimensions") {
        const SchemeParams P{13, 3, 2, 1258, 1031};
        Rng rng(10);
        const XgrsKeyPair kp = xgrs_keygen(P, rng);
        const ExpandedCode pub = xgrs_public_code(kp.H_pub, P.lambda);
        REQUIRE(pub.dim() == P.subcode_dim());
        std::vector<std::size_t> blocks(820);
        std::iota(blocks.begin(), blocks.end(), 0);
        const ExpandedCode sh = block_shorten(pub, blocks);
        CHECK(sh.dim() == 195);
        TwistedOptions opt;
        opt.sampled = true;
        opt.seed = 1;
        CHECK(shortened_twisted_square(sh, P.m, opt).dim() == 1263);
    }
}
