// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance [--slow] [--only N]
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "ssrs/attack.hpp"
#include "ssrs/cli.hpp"
#include "ssrs/expansion.hpp"
#include "ssrs/grs.hpp"
#include "ssrs/rng.hpp"
#include "ssrs/scheme.hpp"
#include "ssrs/twisted.hpp"

using namespace ssrs;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

const std::pair<unsigned, unsigned> kFields[] = {{2, 2}, {7, 3}, {13, 3}};

BasisVector random_bases(const Field& F, std::size_t n, unsigned len, Rng& rng) {
    BasisVector out(n);
    for (auto& b : out) b = random_subspace(F, len, rng);
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome table_row(const SchemeParams& P, std::size_t trials, std::size_t rs_want, std::size_t random_want,
                  double budget) {
    Rng rng(P.n * 1000 + P.k);
    std::size_t bad = 0;
    double worst = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto t0 = Clock::now();
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        const std::size_t a =
            shortened_twisted_square(ExpandedCode{LinearCode{kp.G_pub}, P.lambda, P.n}, P.m).dim();
        worst = std::max(worst, since(t0));
        t0 = Clock::now();
        const std::size_t b = shortened_twisted_square(random_parent_public(P, rng), P.m).dim();
        worst = std::max(worst, since(t0));
        if (a != rs_want) ++bad;
        if (b != random_want) ++bad;
    }
    return {bad == 0 && worst <= budget, std::to_string(trials) + "+" + std::to_string(trials) + " trials, " +
                                             std::to_string(bad) + " mismatches, worst trial " +
                                             fmt("%.1f s", worst)};
}

Outcome c1() { return table_row({7, 3, 2, 120, 55}, 20, 327, 360, 60); }

Outcome c2() { return table_row({7, 5, 3, 160, 75}, 5, 745, 800, 300); }

Outcome c3() {
    std::size_t grs_ok = 0;
    for (int t = 0; t < 50; ++t) {
        const auto [q, m] = kFields[t % 3];
        const FieldPtr F = make_field(q, m);
        Rng rng(100 + t);
        const std::size_t n = 4 + rng.below(std::min<std::size_t>(30, F->size() - 3));
        const std::size_t k = 1 + rng.below(n / 2);
        const GrsCode C = random_grs(F, n, k, rng);
        GrsCode C2{F, C.x, C.y, 2 * k - 1};
        for (auto& v : C2.y) v = F->mul(v, v);
        if (code_equal(square(LinearCode{grs_generator(C)}), LinearCode{grs_generator(C2)})) ++grs_ok;
    }
    const FieldPtr K = make_field(7, 1);
    Rng rng(7);
    std::size_t full = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t k = 6, n = 30;  // C(7,2) = 21 <= 30
        if (square(random_code(K, n, k, rng)).dim() == k * (k + 1) / 2) ++full;
    }
    return {grs_ok == 50 && full >= 95,
            "GRS square law " + std::to_string(grs_ok) + "/50, random square full " + std::to_string(full) + "/100"};
}

Outcome c4() {
    std::size_t fails = 0, runs = 0;
    auto check = [&](bool ok) {
        ++runs;
        if (!ok) ++fails;
    };
    for (auto [q, m] : kFields) {
        const FieldPtr F = make_field(q, m);
        const FieldPtr K = F->base();
        Rng rng(q * 31 + m);
        for (int t = 0; t < 50; ++t) {
            const std::size_t n = 4 + rng.below(8), k = 1 + rng.below(n - 1);
            const unsigned lambda = 1 + static_cast<unsigned>(rng.below(m - 1));
            const LinearCode C = random_code(F, n, k, rng);
            const BasisVector B = random_bases(*F, n, m, rng);
            const std::vector<std::size_t> L{rng.below(n)};
            BasisVector rest;
            for (std::size_t i = 0; i < n; ++i)
                if (i != L[0]) rest.push_back(B[i]);

            // Shortening is the dual of puncturing the dual.
            check(code_equal(shorten(C, L), dual(puncture(dual(C), L))));

            // Subspace subcode is the shortened expansion.
            const BasisVector S = random_bases(*F, n, lambda, rng);
            BasisVector full(n);
            for (std::size_t i = 0; i < n; ++i) full[i] = complete_basis(*F, S[i]);
            const ExpandedCode E = subspace_subcode(C, S);
            const LinearCode oracle = shorten(expand_code(C, full).code, j_set(lambda, m, n));
            check(E.dim() == oracle.dim() && (E.dim() == 0 || code_equal(E.code, oracle)));

            // Expansion commutes with puncturing and shortening.
            const ExpandedCode X = expand_code(C, B);
            check(code_equal(block_puncture(X, L).code, expand_code(puncture(C, L), rest).code));
            const LinearCode Cs = shorten(C, L);
            const ExpandedCode Xs = block_shorten(X, L);
            check(Xs.dim() == m * Cs.dim() && (Cs.dim() == 0 || code_equal(Xs.code, expand_code(Cs, rest).code)));

            // Dual of an expansion.
            BasisVector D(n);
            for (std::size_t i = 0; i < n; ++i) D[i] = dual_basis(*F, B[i]);
            check(code_equal(dual(X.code), expand_code(dual(C), D).code));

            // Basis change.
            BasisVector B2(n);
            std::vector<Matrix> blocks;
            for (std::size_t i = 0; i < n; ++i) {
                const Matrix P = random_invertible(K, m, rng);
                B2[i].assign(m, 0);
                for (unsigned l = 0; l < m; ++l)
                    for (unsigned j = 0; j < m; ++j) B2[i][l] = F->add(B2[i][l], F->mul(B[i][j], P(j, l)));
                blocks.push_back(inverse(P)->transpose());
            }
            check(code_equal(expand_code(C, B2).gen(), X.gen() * block_diagonal(blocks)));

            // Scalar multiplication moves into the bases.
            std::vector<elem_t> a(n);
            for (auto& v : a) v = F->random_nonzero(rng);
            Matrix aG = C.gen;
            for (std::size_t r = 0; r < aG.rows(); ++r)
                for (std::size_t i = 0; i < n; ++i) aG(r, i) = F->mul(aG(r, i), a[i]);
            BasisVector aB = B;
            for (std::size_t i = 0; i < n; ++i)
                for (auto& e : aB[i]) e = F->mul(e, a[i]);
            check(code_equal(expand_code(LinearCode{aG}, aB).code, X.code));

            // GRS subspace subcode reduces to RS.
            const std::size_t gn = 3 + rng.below(std::min<std::size_t>(10, F->size() - 2));
            const std::size_t gk = 1 + rng.below(gn - 1);
            const GrsCode G = random_grs(F, gn, gk, rng);
            const BasisVector GS = random_bases(*F, gn, lambda, rng);
            BasisVector GSy = GS;
            for (std::size_t i = 0; i < gn; ++i)
                for (auto& e : GSy[i]) e = F->div(e, G.y[i]);
            const ExpandedCode ga = subspace_subcode(LinearCode{grs_generator(G)}, GS);
            const ExpandedCode gb = subspace_subcode(LinearCode{grs_generator(rs_code(F, G.x, gk))}, GSy);
            check(ga.dim() == gb.dim() && (ga.dim() == 0 || code_equal(ga.code, gb.code)));

            // Twisted square of a subcode lies in the square.
            const unsigned tl = std::max(1u, m - 1);
            const std::size_t tk = n / 2 + rng.below(n - n / 2);
            const LinearCode TC = random_code(F, n, tk, rng);
            const BasisVector TS = random_bases(*F, n, tl, rng);
            const ExpandedCode TE = subspace_subcode(TC, TS);
            if (TE.dim()) {
                BasisVector Pr(n);
                for (std::size_t i = 0; i < n; ++i)
                    for (unsigned s = 0; s < tl; ++s)
                        for (unsigned r = 0; r <= s; ++r) Pr[i].push_back(F->mul(TS[i][r], TS[i][s]));
                const ExpandedCode T = twisted_square(TE);
                const LinearCode C2 = square(TC);
                bool in = true;
                for (std::size_t r = 0; r < T.dim() && in; ++r)
                    in = C2.contains(squeeze_vector(*F, T.gen().row_span(r), Pr));
                check(in);
            }
        }
    }
    return {fails == 0, std::to_string(runs - fails) + "/" + std::to_string(runs) + " diagram checks hold"};
}

Outcome c5() {
    const SchemeParams P{13, 3, 2, 120, 50};
    Rng rng(55);
    const SsrsKeyPair sk = ssrs_keygen(P, rng);
    const XgrsKeyPair xk = xgrs_keygen(P, rng);
    const FieldPtr K = sk.F->base();
    std::size_t ok_s = 0, ok_x = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<elem_t> msg(sk.G_pub.rows());
        for (auto& v : msg) v = K->random(rng);
        if (ssrs_decrypt(sk, ssrs_encrypt(sk.G_pub, msg, P, rng)) == msg) ++ok_s;
        const auto y = random_block_error(*K, P.n, P.lambda, P.t(), rng);
        if (xgrs_decrypt(xk, xgrs_encrypt(xk.H_pub, y)) == y) ++ok_x;
    }
    const SchemeParams T{13, 3, 2, 1258, 1031};
    const auto t0 = Clock::now();
    const XgrsKeyPair big = xgrs_keygen(T, rng);
    bool full_ok = true;
    for (int t = 0; t < 3; ++t) {
        const auto y = random_block_error(*big.F->base(), T.n, T.lambda, T.t(), rng);
        full_ok = full_ok && xgrs_decrypt(big, xgrs_encrypt(big.H_pub, y)) == y;
    }
    const double secs = since(t0);
    return {ok_s == 100 && ok_x == 100 && full_ok && secs <= 300,
            "SSRS " + std::to_string(ok_s) + "/100, XGRS " + std::to_string(ok_x) + "/100, full-size XGRS " +
                (full_ok ? "ok" : "FAILED") + " in " + fmt("%.1f s", secs)};
}

Outcome c6() {
    const SchemeParams P{13, 3, 2, 60, 30};
    Rng rng(66);
    std::size_t equal = 0;
    for (int t = 0; t < 50; ++t) {
        const XgrsKeyPair kp = xgrs_keygen(P, rng);
        const ExpandedCode pub = xgrs_public_code(kp.H_pub, P.lambda);
        const SsrsKeyPair s = xgrs_to_ssrs(kp);
        const ExpandedCode E = subspace_subcode(LinearCode{grs_generator(rs_code(kp.F, s.x, P.k))}, s.subs);
        if (E.dim() == pub.dim() && code_equal(E.code, pub.code)) ++equal;
    }
    return {equal == 50, std::to_string(equal) + "/50 keys equal"};
}

Outcome c7() {
    Rng rng(77);
    std::string detail;
    bool pass = true;
    for (auto [P, want] : {std::pair{SchemeParams{13, 3, 2, 1258, 1031}, 579.0},
                           std::pair{SchemeParams{7, 4, 2, 1872, 1666}, 844.0}}) {
        const XgrsKeyPair kp = xgrs_keygen(P, rng);
        const double kb = static_cast<double>(pack_nonsystematic(kp.H_pub).size()) / 1000.0;
        pass = pass && std::abs(kb - want) <= 1.0;
        detail += (detail.empty() ? "" : ", ") + fmt("%.1f kB", kb) + " (target " + fmt("%.0f", want) + ")";
    }
    return {pass, detail};
}

Outcome c8() {
    const SchemeParams P{13, 3, 2, 120, 50};
    std::size_t ok = 0;
    double worst = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(800 + s);
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        AttackOptions opt;
        opt.seed = s;
        const auto t0 = Clock::now();
        const RecoveredKey rk = attack_low_rate(ExpandedCode{LinearCode{kp.G_pub}, P.lambda, P.n}, P, opt);
        worst = std::max(worst, since(t0));
        if (rk.valid) ++ok;
    }
    return {ok >= 19 && worst <= 600, std::to_string(ok) + "/20 keys recovered, worst " + fmt("%.1f s", worst)};
}

Outcome c9(bool slow) {
    const SchemeParams P{13, 3, 2, 200, 120};
    std::size_t ok = 0;
    double worst = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        Rng rng(900 + s);
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        AttackOptions opt;
        opt.seed = s;
        const auto t0 = Clock::now();
        const RecoveredKey rk = attack_high_rate(ExpandedCode{LinearCode{kp.G_pub}, P.lambda, P.n}, P, opt);
        worst = std::max(worst, since(t0));
        if (rk.valid) ++ok;
    }
    Outcome out{ok >= 9 && worst <= 1800, std::to_string(ok) + "/10 keys recovered, worst " + fmt("%.1f s", worst)};
    if (slow) {
        const SchemeParams T{13, 3, 2, 1258, 1031};
        Rng rng(999);
        const XgrsKeyPair kp = xgrs_keygen(T, rng);
        AttackOptions opt;
        opt.seed = 1;
        opt.twisted.sampled = true;
        const auto t0 = Clock::now();
        const RecoveredKey rk = attack(xgrs_public_code(kp.H_pub, T.lambda), T, opt);
        out.pass = out.pass && rk.valid;
        out.detail += "; full Type I " + std::string(rk.valid ? "recovered" : "FAILED at " + rk.stage) + " in " +
                      fmt("%.0f s", since(t0));
    } else {
        out.detail += "; full Type I skipped (pass --slow)";
    }
    return out;
}

Outcome c10() {
    namespace fs = std::filesystem;
    const fs::path w = fs::temp_directory_path() / "ssrs_acceptance_barrier";
    fs::remove_all(w);
    fs::create_directories(w);
    std::size_t ok = 0, runs = 0;
    for (auto [n, k] : {std::pair{150, 120}, std::pair{240, 200}, std::pair{300, 260}}) {
        for (const char* scheme : {"ssrs", "xgrs"}) {
            ++runs;
            const std::string key = (w / (std::string(scheme) + std::to_string(n))).string();
            std::ostringstream out, err;
            if (run_cli({"keygen", "--scheme", scheme, "--q", "7", "--m", "4", "--lambda", "2", "--n",
                         std::to_string(n), "--k", std::to_string(k), "--seed", "10", "--out", key},
                        out, err) != 0)
                continue;
            std::ostringstream dout, derr, aout, aerr;
            const int d = run_cli({"distinguish", "--key", key + ".pub"}, dout, derr);
            const int a = run_cli({"attack", "--key", key + ".pub", "--out", key + ".rec"}, aout, aerr);
            if (d == 0 && dout.str().find("verdict inconclusive") != std::string::npos && a == exit_code::not_attackable)
                ++ok;
        }
    }
    fs::remove_all(w);
    return {ok == runs, std::to_string(ok) + "/" + std::to_string(runs) +
                            " barrier keys: distinguish inconclusive and attack not-attackable"};
}

Outcome c11() {
    const SchemeParams P{7, 3, 2, 120, 55};
    const FieldPtr F = make_field(7, 3);
    Rng rng(1111);
    std::size_t excess = 0;
    for (int t = 0; t < 200; ++t) {
        const auto x = random_support(*F, P.n, rng);
        const BasisVector subs = random_bases(*F, P.n, P.lambda, rng);
        if (subspace_subcode(LinearCode{grs_generator(rs_code(F, x, P.k))}, subs).dim() > P.subcode_dim()) ++excess;
    }
    return {excess <= 10, std::to_string(excess) + "/200 parents above the lower bound"};
}

}  // namespace

int main(int argc, char** argv) {
    bool slow = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--slow")) slow = true;
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: acceptance [--slow] [--only N]\n");
            return 2;
        }
    }
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"dimension table (7,3,2,120,55)", c1},
        {"dimension table (7,5,3,160,75)", c2},
        {"square-code laws", c3},
        {"commuting diagrams", c4},
        {"scheme round trips", c5},
        {"XGRS/SSRS equivalence", c6},
        {"public key sizes", c7},
        {"low-rate attack", c8},
        {"high-rate attack", [slow] { return c9(slow); }},
        {"barrier behaviour", c10},
        {"subcode dimension tail", c11},
    };
    int failed = 0;
    for (int i = 0; i < 11; ++i) {
        if (only && only != i + 1) continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %2d %s: %s (%s) [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), since(t0));
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
