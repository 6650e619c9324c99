// SPDX-License-Identifier: Apache-2.0
#include "ssrs/attack.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "ssrs/poly.hpp"
#include "ssrs/rng.hpp"

namespace ssrs {

namespace {

using poly::Poly;

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) std::swap(v[i], v[i + rng.below(v.size() - i)]);
}

// Unlike block_columns, keeps the given order.
std::vector<std::size_t> block_columns_ordered(std::size_t block_len, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> out;
    out.reserve(block_len * order.size());
    for (auto b : order)
        for (std::size_t j = 0; j < block_len; ++j) out.push_back(b * block_len + j);
    return out;
}

// Minimal polynomial of e_0 under w -> w N, when e_0 generates everything.
std::optional<Poly> cyclic_minpoly(const Matrix& N) {
    const std::size_t m = N.rows();
    const Field& K = N.field();
    Matrix Kr(N.field_ptr(), m, m);
    std::vector<elem_t> v(m, 0);
    v[0] = 1;
    for (std::size_t r = 0; r < m; ++r) {
        std::copy(v.begin(), v.end(), Kr.row(r));
        v = vec_mul(v, N);
    }
    auto Ki = inverse(Kr);
    if (!Ki) return std::nullopt;
    const std::vector<elem_t> c = vec_mul(v, *Ki);
    Poly f(m + 1, 0);
    for (std::size_t r = 0; r < m; ++r) f[r] = K.neg(c[r]);
    f[m] = 1;
    return f;
}

bool irreducible_over(const Field& K, const Poly& f) {
    const std::size_t d = f.size() - 1;
    for (std::size_t j = 1; 2 * j <= d; ++j) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < j; ++i) count *= K.size();
        for (std::size_t idx = 0; idx < count; ++idx) {
            Poly g(j + 1, 0);
            std::size_t t = idx;
            for (std::size_t i = 0; i < j; ++i) {
                g[i] = static_cast<elem_t>(t % K.size());
                t /= K.size();
            }
            g[j] = 1;
            if (poly::divmod(K, f, g).second.empty()) return false;
        }
    }
    return true;
}

std::optional<elem_t> smallest_root(const Field& F, const Poly& f) {
    for (elem_t a = 0; a < F.size(); ++a)
        if (poly::eval(F, f, a) == 0) return a;
    return std::nullopt;
}

// Basis with phi(e_0 D^r) = theta^r.
Basis basis_from_action(const Field& F, const Matrix& D, elem_t theta) {
    const std::size_t m = D.rows();
    Matrix Kr(D.field_ptr(), m, m);
    std::vector<elem_t> v(m, 0);
    v[0] = 1;
    for (std::size_t r = 0; r < m; ++r) {
        std::copy(v.begin(), v.end(), Kr.row(r));
        v = vec_mul(v, D);
    }
    auto Ki = inverse(Kr);
    if (!Ki) throw invariant_error("block action is not cyclic");
    Basis b(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        elem_t s = 0, p = 1;
        for (std::size_t r = 0; r < m; ++r) {
            s = F.add(s, F.mul((*Ki)(j, r), p));
            p = F.mul(p, theta);
        }
        b[j] = s;
    }
    return b;
}

void structure_search(const ExpandedCode& E, const FieldPtr& F, std::size_t k, Rng& rng, GuessSqueezeResult& res) {
    const std::size_t m = F->m(), n = E.n;
    const FieldPtr K = F->base();
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        if (attempt > 0) shuffle(order, rng);
        const Rref R = rref(E.gen().select_columns(block_columns_ordered(m, order)));
        bool systematic = R.pivots.size() >= m * k;
        for (std::size_t i = 0; systematic && i < m * k; ++i) systematic = R.pivots[i] == i;
        if (!systematic || R.pivots.size() != m * k) continue;
        auto A = [&](std::size_t a, std::size_t b) { return R.matrix.submatrix(a * m, m * k + b * m, m, m); };

        const auto A00inv = inverse(A(0, 0));
        if (!A00inv) continue;
        std::optional<Matrix> N;
        Poly f;
        std::size_t tries = 0;
        for (std::size_t a = 1; a < k && !N && tries < 64; ++a)
            for (std::size_t j = 1; j < n - k && !N && tries < 64; ++j, ++tries) {
                const auto Aaj_inv = inverse(A(a, j));
                if (!Aaj_inv) continue;
                Matrix cand = A(0, j) * *Aaj_inv * A(a, 0) * *A00inv;
                auto mp = cyclic_minpoly(cand);
                ++res.candidates;
                if (!mp || !irreducible_over(*K, *mp)) continue;
                N = std::move(cand);
                f = std::move(*mp);
            }
        if (!N) continue;
        const auto theta = smallest_root(*F, f);
        if (!theta) continue;

        res.bases.assign(n, {});
        const Matrix Dr0 = *A00inv * *N * A(0, 0);
        bool ok = true;
        for (std::size_t a = 0; a < k && ok; ++a) {
            if (a == 0) {
                res.bases[order[0]] = basis_from_action(*F, *N, *theta);
                continue;
            }
            const auto inv = inverse(A(a, 0));
            if (!inv) {
                ok = false;
                break;
            }
            res.bases[order[a]] = basis_from_action(*F, A(a, 0) * Dr0 * *inv, *theta);
        }
        for (std::size_t j = 0; j < n - k && ok; ++j) {
            const auto inv = inverse(A(0, j));
            if (!inv) {
                ok = false;
                break;
            }
            res.bases[order[k + j]] = basis_from_action(*F, *inv * *N * A(0, j), *theta);
        }
        if (!ok) continue;
        res.ok = true;
        return;
    }
    res.error = "no block action with an irreducible minimal polynomial";
}

elem_t squeeze_block(const Field& F, const elem_t* w, const elem_t* pw, std::size_t m) {
    elem_t s = 0;
    for (std::size_t l = 0; l < m; ++l)
        if (w[l]) s = F.add(s, F.mul(w[l], pw[l]));
    return s;
}

bool proportional(const Field& F, const std::vector<elem_t>& u, const elem_t* v, std::size_t r0) {
    for (std::size_t r = 0; r < u.size(); ++r)
        if (F.mul(v[r], u[r0]) != F.mul(v[r0], u[r])) return false;
    return v[r0] != 0;
}

void restricted_search(const ExpandedCode& E, const FieldPtr& F, std::size_t k, Rng& rng, GuessSqueezeResult& res) {
    const Field& FF = *F;
    const std::size_t m = FF.m(), n = E.n;
    std::vector<elem_t> cands;
    for (elem_t a = 0; a < FF.size(); ++a)
        if (FF.degree(a) == m) cands.push_back(a);
    std::vector<elem_t> pw(cands.size() * m);
    for (std::size_t c = 0; c < cands.size(); ++c) {
        const Basis b = FF.power_basis(cands[c]);
        std::copy(b.begin(), b.end(), pw.begin() + c * m);
    }
    std::vector<long> assigned(n, -1);

    // First candidate whose squeeze of block rows is proportional to u.
    auto scan = [&](const Matrix& G, std::size_t li, const std::vector<elem_t>& u, std::size_t r0) -> long {
        std::vector<elem_t> v(m);
        for (std::size_t c = 0; c < cands.size(); ++c) {
            ++res.candidates;
            for (std::size_t r = 0; r < m; ++r) v[r] = squeeze_block(FF, G.row(r) + li * m, &pw[c * m], m);
            if (proportional(FF, u, v.data(), r0)) return static_cast<long>(c);
        }
        return -1;
    };

    for (std::size_t iter = 0; iter < 4 * n + 8; ++iter) {
        std::vector<std::size_t> pool_a, pool_u;
        for (std::size_t i = 1; i < n; ++i) (assigned[i] >= 0 ? pool_a : pool_u).push_back(i);
        if (pool_u.empty() && assigned[0] >= 0) break;
        ExpandedCode S;
        std::vector<std::size_t> kept;
        bool good = false;
        for (int retry = 0; retry < 8 && !good; ++retry) {
            shuffle(pool_a, rng);
            shuffle(pool_u, rng);
            std::vector<std::size_t> all = pool_a;
            all.insert(all.end(), pool_u.begin(), pool_u.end());
            if (all.size() < k) {
                res.error = "too few blocks to shorten";
                return;
            }
            std::vector<std::size_t> sh(all.begin(), all.begin() + (k - 1));
            S = block_shorten(E, sh);
            std::set<std::size_t> shs(sh.begin(), sh.end());
            kept.clear();
            for (std::size_t i = 0; i < n; ++i)
                if (!shs.count(i)) kept.push_back(i);
            good = S.dim() == m;
        }
        if (!good) {
            res.error = "shortened dimension differs from m";
            return;
        }
        const Matrix& G = S.gen();
        std::vector<std::size_t> todo;  // local indices
        for (std::size_t li = 1; li < kept.size(); ++li)
            if (assigned[kept[li]] < 0) todo.push_back(li);
        if (todo.empty()) continue;

        auto u_for = [&](std::size_t c0, std::size_t& r0) {
            std::vector<elem_t> u(m);
            for (std::size_t r = 0; r < m; ++r) u[r] = squeeze_block(FF, G.row(r), &pw[c0 * m], m);
            r0 = 0;
            while (r0 < m && u[r0] == 0) ++r0;
            return u;
        };

        if (assigned[0] < 0) {
            for (std::size_t c0 = 0; c0 < cands.size() && assigned[0] < 0; ++c0) {
                std::size_t r0;
                const auto u = u_for(c0, r0);
                if (r0 == m) continue;
                std::vector<long> tentative;
                bool all_ok = true;
                for (std::size_t li : todo) {
                    const long c = scan(G, li, u, r0);
                    if (c < 0) {
                        all_ok = false;
                        break;
                    }
                    tentative.push_back(c);
                }
                if (!all_ok) continue;
                assigned[0] = static_cast<long>(c0);
                for (std::size_t t = 0; t < todo.size(); ++t) assigned[kept[todo[t]]] = tentative[t];
            }
            if (assigned[0] < 0) {
                res.error = "no basis pair gives a one-dimensional squeeze";
                return;
            }
        } else {
            std::size_t r0;
            const auto u = u_for(static_cast<std::size_t>(assigned[0]), r0);
            for (std::size_t li : todo) {
                const long c = scan(G, li, u, r0);
                if (c < 0) {
                    res.error = "block without a matching basis";
                    return;
                }
                assigned[kept[li]] = c;
            }
        }
    }
    if (std::any_of(assigned.begin(), assigned.end(), [](long c) { return c < 0; })) {
        res.error = "blocks left unassigned";
        return;
    }
    res.bases.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(assigned[i]);
        res.bases[i].assign(pw.begin() + c * m, pw.begin() + (c + 1) * m);
    }
    res.ok = true;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void log_line(const AttackOptions& opt, const std::string& s) {
    if (opt.log) opt.log(s);
}

bool finish(RecoveredKey& rk, const ExpandedCode& pub, const FieldPtr& F, const AttackOptions& opt, Rng& rng) {
    const auto t0 = std::chrono::steady_clock::now();
    rk.stage = "bases";
    const BasesRecovery br = recover_bases(pub, F, rk.x, rk.params.k, rng);
    rk.timings.emplace_back("bases", seconds_since(t0));
    if (!br.ok) {
        rk.error = br.error;
        return false;
    }
    rk.bases = br.bases;
    const auto t1 = std::chrono::steady_clock::now();
    rk.stage = "validate";
    Rng vr = rng.derive(stage::validate);
    rk.valid = validate_key(rk, pub, opt.validate_trials, vr);
    rk.timings.emplace_back("validate", seconds_since(t1));
    if (!rk.valid) {
        rk.error = "recovered key fails validation";
        return false;
    }
    rk.stage = "done";
    log_line(opt, "key recovered and validated");
    return true;
}

}  // namespace

GuessSqueezeResult guess_and_squeeze(const ExpandedCode& E, const FieldPtr& F, std::size_t k, BasisSearch mode,
                                     Rng& rng) {
    GuessSqueezeResult res;
    if (E.block_len != F->m()) {
        res.error = "block length differs from m";
        return res;
    }
    if (E.dim() != F->m() * k) {
        res.error = "dimension differs from mk";
        return res;
    }
    if (k < 2 || E.n < k + 2) {
        res.error = "need 2 <= k <= n - 2";
        return res;
    }
    if (mode == BasisSearch::structure)
        structure_search(E, F, k, rng, res);
    else
        restricted_search(E, F, k, rng, res);
    return res;
}

SupportRecovery recover_support(const ExpandedCode& T, const FieldPtr& F, std::size_t k2, BasisSearch mode,
                                Rng& rng) {
    SupportRecovery out;
    const GuessSqueezeResult gs = guess_and_squeeze(T, F, k2, mode, rng);
    out.candidates = gs.candidates;
    if (!gs.ok) {
        out.error = "guess and squeeze: " + gs.error;
        return out;
    }
    const Matrix S = row_basis(squeeze_matrix(F, T.gen(), gs.bases));
    if (S.rows() != k2) {
        out.error = "squeezed code has the wrong dimension";
        return out;
    }
    std::string why;
    auto frame = support_frame(S, k2, &why);
    if (!frame) {
        out.error = "support: " + why;
        return out;
    }
    out.frame = canonical_frobenius(*F, *frame);
    auto x = finalize_frame(*F, out.frame);
    if (!x) {
        out.error = "support: no finite normalization";
        return out;
    }
    // Squeezing over sigma^j of the bases gives sigma^j of the squeezed code.
    // Find the twist j with frame_j = sigma^j(frame) and apply it to bases.
    unsigned twist = 0;
    for (unsigned j = 0; j < F->m(); ++j) {
        bool same = true;
        for (std::size_t i = 0; i < frame->size() && same; ++i)
            same = proj_frobenius(*F, (*frame)[i], j) == out.frame[i];
        if (same) {
            twist = j;
            break;
        }
    }
    BasisVector tb = gs.bases;
    for (auto& b : tb)
        for (auto& e : b) e = F->frobenius(e, twist);
    const Matrix St = row_basis(squeeze_matrix(F, T.gen(), tb));
    auto y = recover_multiplier(St, *x, k2);
    if (!y) {
        out.error = "twisted squeeze is not a GRS code";
        return out;
    }
    out.x = std::move(*x);
    out.y = *y;
    out.bases = tb;
    for (std::size_t i = 0; i < out.bases.size(); ++i) {
        const elem_t yi = F->inv(out.y[i]);
        for (auto& e : out.bases[i]) e = F->mul(e, yi);
    }
    out.ok = true;
    return out;
}

std::vector<ProjPoint> canonical_frobenius(const Field& F, const std::vector<ProjPoint>& frame) {
    std::vector<ProjPoint> best = frame;
    auto key = [](const std::vector<ProjPoint>& f) {
        std::vector<std::uint64_t> k;
        for (const auto& p : f) k.push_back(p.infinite() ? ~std::uint64_t{0} : p.a);
        return k;
    };
    auto best_key = key(best);
    for (unsigned j = 1; j < F.m(); ++j) {
        std::vector<ProjPoint> cand(frame.size());
        for (std::size_t i = 0; i < frame.size(); ++i) cand[i] = proj_frobenius(F, frame[i], j);
        auto ck = key(cand);
        if (ck < best_key) {
            best = std::move(cand);
            best_key = std::move(ck);
        }
    }
    return best;
}

BasesRecovery recover_bases(const ExpandedCode& pub, const FieldPtr& F, const std::vector<elem_t>& x, std::size_t k,
                            Rng& rng) {
    BasesRecovery out;
    const Field& FF = *F;
    const std::size_t lambda = pub.block_len, n = pub.n, Nu = lambda * n;
    const Matrix& G = pub.gen();
    if (x.size() != n) {
        out.error = "support length differs from n";
        return out;
    }
    const Matrix H = grs_parity(rs_code(F, x, k));
    // Unknown b_{i,j} at index lambda i + j; equation (r, l):
    // sum_i H_{l,i} sum_j G_{r, lambda i + j} b_{i,j} = 0.
    std::vector<std::size_t> eqs(G.rows() * H.rows());
    std::iota(eqs.begin(), eqs.end(), 0);
    shuffle(eqs, rng);
    EchelonBuilder eb(F, Nu);
    std::vector<elem_t> coef(Nu);
    for (std::size_t e : eqs) {
        if (eb.rank() + 1 >= Nu) break;
        const std::size_t r = e / H.rows(), l = e % H.rows();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < lambda; ++j) coef[lambda * i + j] = FF.mul(G(r, lambda * i + j), H(l, i));
        eb.add(coef);
        ++out.equations;
    }
    if (eb.rank() + 1 != Nu) {
        out.error = "solution space has dimension " + std::to_string(Nu - eb.rank()) + ", expected 1";
        return out;
    }
    const Matrix ker = right_kernel(eb.matrix());
    std::vector<elem_t> sol = ker.row_vec(0);
    std::size_t first = 0;
    while (first < Nu && sol[first] == 0) ++first;
    if (first == Nu) {
        out.error = "zero solution";
        return out;
    }
    FF.scale(sol.data(), FF.inv(sol[first]), Nu);
    out.bases.assign(n, Basis(lambda));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < lambda; ++j) out.bases[i][j] = sol[lambda * i + j];
        if (rank_over_base(FF, out.bases[i]) != lambda) {
            out.error = "recovered block basis is dependent";
            return out;
        }
    }
    // Full check of every equation.
    const Matrix S = squeeze_matrix(F, G, out.bases);
    if (!(S * H.transpose()).is_zero()) {
        out.error = "system has only the zero solution";
        return out;
    }
    out.ok = true;
    return out;
}

RecoveredKey attack_low_rate(const ExpandedCode& pub, const SchemeParams& P, const AttackOptions& opt) {
    RecoveredKey rk;
    rk.params = P;
    const FieldPtr F = make_field(P.q, P.m);
    Rng rng = Rng(opt.seed).derive(stage::attack);
    const std::size_t k2 = 2 * P.k - 1;

    auto t0 = std::chrono::steady_clock::now();
    rk.stage = "distinguisher";
    const ExpandedCode T = adapted_shortened_twisted_square(pub, P.m, opt.twisted);
    rk.timings.emplace_back("twisted-square", seconds_since(t0));
    log_line(opt, "twisted square dimension " + std::to_string(T.dim()));
    if (T.dim() != P.m * k2) {
        rk.error = "twisted square dimension " + std::to_string(T.dim()) + " differs from " +
                   std::to_string(P.m * k2) + "; not an SSRS public code";
        return rk;
    }
    t0 = std::chrono::steady_clock::now();
    rk.stage = "support";
    const SupportRecovery sr = recover_support(T, F, k2, opt.mode, rng);
    rk.timings.emplace_back("support", seconds_since(t0));
    rk.candidates = sr.candidates;
    rk.runs = 1;
    if (!sr.ok) {
        rk.error = sr.error;
        return rk;
    }
    rk.x = sr.x;
    finish(rk, pub, F, opt, rng);
    return rk;
}

RecoveredKey attack_high_rate(const ExpandedCode& pub, const SchemeParams& P, const AttackOptions& opt) {
    RecoveredKey rk;
    rk.params = P;
    const FieldPtr F = make_field(P.q, P.m);
    Rng rng = Rng(opt.seed).derive(stage::attack);
    const std::size_t n = P.n;

    rk.stage = "shortening";
    const auto s_opt = opt.shorten_blocks ? opt.shorten_blocks : choose_shortening(P);
    if (!s_opt || *s_opt + 3 > n) {
        rk.not_attackable = true;
        rk.error = "no shortening satisfies the dimension condition";
        return rk;
    }
    const std::size_t s = *s_opt;
    rk.shorten_blocks = s;
    const std::size_t ks = P.k - s, k2 = 2 * ks - 1;

    std::vector<std::optional<ProjPoint>> frame(n);
    std::vector<std::size_t> order;  // non-anchor blocks in window order
    for (std::size_t i = 3; i < n; ++i) order.push_back(i);
    Rng wrng = rng.derive(17);
    if (opt.random_windows) shuffle(order, wrng);

    const std::size_t reserve = 8;
    for (std::size_t run = 0; run < 4 * n; ++run) {
        std::vector<std::size_t> known, unknown;
        for (auto i : order) (frame[i] ? known : unknown).push_back(i);
        if (unknown.empty()) break;
        // Keep a few known positions to align the Frobenius twist.
        std::vector<std::size_t> I;
        const std::size_t keep = run == 0 ? 0 : std::min(reserve, known.size());
        for (std::size_t i = keep; i < known.size() && I.size() < s; ++i) I.push_back(known[i]);
        for (std::size_t i = unknown.size(); i-- > 0 && I.size() < s;) I.push_back(unknown[i]);
        std::set<std::size_t> Is(I.begin(), I.end());
        if (I.size() < s || std::all_of(unknown.begin(), unknown.end(), [&](auto u) { return Is.count(u); })) {
            rk.error = "cannot choose a shortening window";
            return rk;
        }
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < n; ++i)
            if (!Is.count(i)) kept.push_back(i);

        auto t0 = std::chrono::steady_clock::now();
        rk.stage = "distinguisher";
        const ExpandedCode sh = block_shorten(pub, I);
        const ExpandedCode T = adapted_shortened_twisted_square(sh, P.m, opt.twisted);
        rk.timings.emplace_back("twisted-square", seconds_since(t0));
        log_line(opt, "run " + std::to_string(run) + ": twisted square dimension " + std::to_string(T.dim()));
        if (T.dim() != P.m * k2) {
            rk.error = "twisted square dimension " + std::to_string(T.dim()) + " differs from " +
                       std::to_string(P.m * k2);
            return rk;
        }
        t0 = std::chrono::steady_clock::now();
        rk.stage = "support";
        const SupportRecovery sr = recover_support(T, F, k2, opt.mode, rng);
        rk.timings.emplace_back("support", seconds_since(t0));
        rk.candidates += sr.candidates;
        ++rk.runs;
        if (!sr.ok) {
            rk.error = sr.error;
            return rk;
        }
        // Align the Frobenius twist on the positions already known.
        unsigned twist = 0;
        bool aligned = run == 0;
        for (unsigned j = 0; j < P.m && !aligned; ++j) {
            bool same = true;
            std::size_t overlap = 0;
            for (std::size_t li = 3; li < kept.size() && same; ++li)
                if (frame[kept[li]]) {
                    same = proj_frobenius(*F, sr.frame[li], j) == *frame[kept[li]];
                    ++overlap;
                }
            if (same && overlap > 0) {
                twist = j;
                aligned = true;
            }
        }
        if (!aligned) {
            rk.error = "partial supports disagree on the overlap";
            return rk;
        }
        for (std::size_t li = 0; li < kept.size(); ++li) {
            const ProjPoint p = proj_frobenius(*F, sr.frame[li], twist);
            if (frame[kept[li]] && !(*frame[kept[li]] == p)) {
                rk.error = "partial supports disagree on the overlap";
                return rk;
            }
            frame[kept[li]] = p;
        }
    }
    std::vector<ProjPoint> full(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!frame[i]) {
            rk.error = "support stitching left gaps";
            return rk;
        }
        full[i] = *frame[i];
    }
    auto x = finalize_frame(*F, canonical_frobenius(*F, full));
    if (!x) {
        rk.error = "no finite normalization";
        return rk;
    }
    rk.x = *x;
    finish(rk, pub, F, opt, rng);
    return rk;
}

RecoveredKey attack(const ExpandedCode& pub, const SchemeParams& P, const AttackOptions& opt) {
    RecoveredKey rk;
    rk.params = P;
    rk.stage = "routing";
    if (2 * P.lambda <= P.m || tri(P.lambda) < P.m) {
        rk.not_attackable = true;
        rk.error = "barrier: lambda <= m/2, the distinguisher is ineffective";
        return rk;
    }
    const auto s = opt.shorten_blocks ? opt.shorten_blocks : choose_shortening(P);
    if (!s) {
        rk.not_attackable = true;
        rk.error = "no shortening satisfies the dimension condition";
        return rk;
    }
    if (*s == 0) return attack_low_rate(pub, P, opt);
    AttackOptions o = opt;
    o.shorten_blocks = s;
    return attack_high_rate(pub, P, o);
}

bool validate_key(const RecoveredKey& rk, const ExpandedCode& pub, std::size_t trials, Rng& rng) {
    const SchemeParams& P = rk.params;
    try {
        const FieldPtr F = make_field(P.q, P.m);
        if (rk.x.size() != P.n || rk.bases.size() != P.n) return false;
        const ExpandedCode E = subspace_subcode(LinearCode{grs_generator(rs_code(F, rk.x, P.k))}, rk.bases);
        if (E.gen().cols() != pub.gen().cols() || !code_equal(E.gen(), pub.gen())) return false;
        SsrsKeyPair kp{P, F, row_basis(pub.gen()), rk.x, rk.bases};
        const FieldPtr K = F->base();
        for (std::size_t t = 0; t < trials; ++t) {
            std::vector<elem_t> msg(kp.G_pub.rows());
            for (auto& v : msg) v = K->random(rng);
            const auto c = ssrs_encrypt(kp.G_pub, msg, P, rng);
            if (ssrs_decrypt(kp, c) != msg) return false;
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace ssrs
