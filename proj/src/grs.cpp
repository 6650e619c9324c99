// SPDX-License-Identifier: Apache-2.0
#include "ssrs/grs.hpp"

#include <algorithm>
#include <unordered_set>

#include "ssrs/poly.hpp"
#include "ssrs/rng.hpp"

namespace ssrs {

void GrsCode::validate() const {
    if (!F) throw parameter_error("GRS code without field");
    if (y.size() != x.size()) throw parameter_error("GRS support and multiplier lengths differ");
    if (k > x.size()) throw parameter_error("GRS dimension exceeds length");
    std::unordered_set<elem_t> seen;
    for (elem_t v : x)
        if (!seen.insert(v).second) throw parameter_error("GRS support not distinct");
    for (elem_t v : y)
        if (v == 0) throw parameter_error("GRS multiplier has a zero entry");
}

GrsCode rs_code(FieldPtr F, std::vector<elem_t> x, std::size_t k) {
    std::vector<elem_t> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw parameter_error("support entries must be distinct");
    std::vector<elem_t> y(x.size(), 1);
    return GrsCode{std::move(F), std::move(x), std::move(y), k};
}

std::vector<elem_t> random_support(const Field& F, std::size_t n, Rng& rng) {
    if (n > F.size()) throw parameter_error("support longer than the field");
    std::vector<elem_t> pool(F.size());
    for (elem_t i = 0; i < F.size(); ++i) pool[i] = i;
    for (std::size_t i = 0; i < n; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(n);
    return pool;
}

GrsCode random_grs(FieldPtr F, std::size_t n, std::size_t k, Rng& rng) {
    std::vector<elem_t> x = random_support(*F, n, rng);
    std::vector<elem_t> y(n);
    for (auto& v : y) v = F->random_nonzero(rng);
    return GrsCode{std::move(F), std::move(x), std::move(y), k};
}

Matrix grs_generator(const GrsCode& C) {
    const Field& F = *C.F;
    Matrix G(C.F, C.k, C.n());
    for (std::size_t j = 0; j < C.n(); ++j) {
        elem_t v = C.y[j];
        for (std::size_t i = 0; i < C.k; ++i) {
            G(i, j) = v;
            v = F.mul(v, C.x[j]);
        }
    }
    return G;
}

std::vector<elem_t> dual_multiplier(const GrsCode& C) {
    const Field& F = *C.F;
    std::vector<elem_t> out(C.n());
    for (std::size_t i = 0; i < C.n(); ++i) {
        elem_t d = C.y[i];
        for (std::size_t j = 0; j < C.n(); ++j)
            if (j != i) d = F.mul(d, F.sub(C.x[i], C.x[j]));
        out[i] = F.inv(d);
    }
    return out;
}

Matrix grs_parity(const GrsCode& C) {
    return grs_generator(GrsCode{C.F, C.x, dual_multiplier(C), C.n() - C.k});
}

std::vector<elem_t> grs_encode(const GrsCode& C, std::span<const elem_t> message) {
    if (message.size() != C.k) throw std::invalid_argument("grs_encode: message length");
    const Field& F = *C.F;
    const poly::Poly f(message.begin(), message.end());
    std::vector<elem_t> c(C.n());
    for (std::size_t j = 0; j < C.n(); ++j) c[j] = F.mul(C.y[j], poly::eval(F, f, C.x[j]));
    return c;
}

DecodeResult decode(const GrsCode& C, std::span<const elem_t> received) {
    using namespace poly;
    const Field& F = *C.F;
    const std::size_t n = C.n(), k = C.k;
    if (received.size() != n) throw std::invalid_argument("decode: length mismatch");
    DecodeResult out;
    if (k == 0) return out;
    const std::size_t t = (n - k) / 2;

    std::vector<elem_t> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = F.div(received[i], C.y[i]);
    Poly r_prev = from_roots(F, C.x);
    Poly r_cur = interpolate(F, C.x, r);
    Poly v_prev, v_cur{1};
    const long stop = static_cast<long>((n + k + 1) / 2);  // stop once deg < (n+k)/2
    while (degree(r_cur) >= stop) {
        auto [q, rem] = divmod(F, r_prev, r_cur);
        Poly v_next = sub(F, v_prev, mul(F, q, v_cur));
        r_prev = std::move(r_cur);
        r_cur = std::move(rem);
        v_prev = std::move(v_cur);
        v_cur = std::move(v_next);
    }
    if (v_cur.empty()) return out;
    auto [f, rem] = divmod(F, r_cur, v_cur);
    if (!rem.empty() || degree(f) >= static_cast<long>(k)) return out;

    out.codeword.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.codeword[i] = F.mul(C.y[i], eval(F, f, C.x[i]));
        if (out.codeword[i] != received[i]) out.error_positions.push_back(i);
    }
    out.ok = out.error_positions.size() <= t;
    if (!out.ok) out.codeword.clear();
    return out;
}

ProjPoint proj_normalize(const Field& F, elem_t a, elem_t b) {
    if (b == 0) {
        if (a == 0) throw invariant_error("degenerate projective point");
        return {1, 0};
    }
    return {F.div(a, b), 1};
}

ProjPoint proj_frobenius(const Field& F, ProjPoint p, unsigned j) {
    if (p.infinite()) return p;
    return {F.frobenius(p.a, j), 1};
}

namespace {

elem_t det2(const Field& F, ProjPoint z, ProjPoint p) { return F.sub(F.mul(z.a, p.b), F.mul(p.a, z.b)); }

// Moebius matrix [[a, b], [c, d]] acting on (z : 1).
struct Mobius {
    elem_t a, b, c, d;
};

// Sends p0, p1, p2 to 0, 1, infinity.
Mobius frame_map(const Field& F, ProjPoint p0, ProjPoint p1, ProjPoint p2) {
    const elem_t d12 = det2(F, p1, p2), d10 = det2(F, p1, p0);
    // det(z, p) = z_a p_b - p_a z_b
    return {F.mul(p0.b, d12), F.neg(F.mul(p0.a, d12)), F.mul(p2.b, d10), F.neg(F.mul(p2.a, d10))};
}

ProjPoint apply(const Field& F, const Mobius& M, ProjPoint z) {
    return proj_normalize(F, F.add(F.mul(M.a, z.a), F.mul(M.b, z.b)), F.add(F.mul(M.c, z.a), F.mul(M.d, z.b)));
}

Mobius compose(const Field& F, const Mobius& X, const Mobius& Y) {  // X after Y
    return {F.add(F.mul(X.a, Y.a), F.mul(X.b, Y.c)), F.add(F.mul(X.a, Y.b), F.mul(X.b, Y.d)),
            F.add(F.mul(X.c, Y.a), F.mul(X.d, Y.c)), F.add(F.mul(X.c, Y.b), F.mul(X.d, Y.d))};
}

Mobius adjugate(const Field& F, const Mobius& M) { return {M.d, F.neg(M.b), F.neg(M.c), M.a}; }

void set_why(std::string* why, const char* msg) {
    if (why) *why = msg;
}

}  // namespace

std::optional<std::vector<ProjPoint>> support_frame(const Matrix& G, std::size_t k, std::string* why) {
    const Field& F = G.field();
    const std::size_t n = G.cols();
    if (k < 2 || k + 2 > n) {
        set_why(why, "support recovery needs 2 <= k <= n - 2");
        return std::nullopt;
    }
    Rref e = rref(G);
    if (e.pivots.size() != k) {
        set_why(why, "generator rank differs from k");
        return std::nullopt;
    }
    for (std::size_t i = 0; i < k; ++i)
        if (e.pivots[i] != i) {
            set_why(why, "leading positions are not an information set");
            return std::nullopt;
        }
    const Matrix& E = e.matrix;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = k; j < n; ++j)
            if (E(i, j) == 0) {
                set_why(why, "systematic form has a zero entry");
                return std::nullopt;
            }

    // Coordinates w with position 0 at infinity, 1 at 0 and k at 1.
    std::vector<ProjPoint> w(n);
    w[0] = {1, 0};
    w[1] = {0, 1};
    const elem_t R0 = F.div(E(0, k), E(1, k));
    for (std::size_t j = k; j < n; ++j) {
        const elem_t Rj = F.div(E(0, j), E(1, j));
        w[j] = {F.div(Rj, R0), 1};
    }
    const elem_t w1 = w[k + 1].a;
    for (std::size_t i = 2; i < k; ++i) {
        const elem_t rho = F.div(F.mul(E(i, k), E(0, k + 1)), F.mul(E(i, k + 1), E(0, k)));
        if (rho == 1) {
            set_why(why, "degenerate cross-ratio");
            return std::nullopt;
        }
        w[i] = {F.div(F.sub(rho, w1), F.sub(rho, 1)), 1};
    }
    const Mobius M = frame_map(F, w[0], w[1], w[2]);
    std::vector<ProjPoint> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = apply(F, M, w[i]);
    return out;
}

std::optional<std::vector<elem_t>> finalize_frame(const Field& F, const std::vector<ProjPoint>& frame) {
    std::unordered_set<elem_t> finite;
    for (const auto& p : frame)
        if (!p.infinite()) finite.insert(p.a);
    for (elem_t v = 2; v < F.size(); ++v) {
        const elem_t P = F.sub(1, v);
        if (finite.count(P)) continue;
        // t -> t (1 - P) / (t - P): 0 -> 0, 1 -> 1, infinity -> 1 - P = v.
        const elem_t onemp = F.sub(1, P);
        std::vector<elem_t> x(frame.size());
        for (std::size_t i = 0; i < frame.size(); ++i) {
            const auto& p = frame[i];
            x[i] = p.infinite() ? v : F.div(F.mul(p.a, onemp), F.sub(p.a, P));
        }
        return x;
    }
    return std::nullopt;
}

std::optional<std::vector<elem_t>> recover_multiplier(const Matrix& G, const std::vector<elem_t>& x, std::size_t k) {
    const Field& F = G.field();
    const std::size_t n = G.cols();
    if (k < 1 || k >= n || x.size() != n) return std::nullopt;
    Rref e = rref(G);
    if (e.pivots.size() != k) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i)
        if (e.pivots[i] != i) return std::nullopt;
    const Matrix& E = e.matrix;

    // Lagrange basis on the information positions: L_i(x_i) = 1.
    auto lagrange = [&](std::size_t i, elem_t z) {
        elem_t num = 1, den = 1;
        for (std::size_t l = 0; l < k; ++l) {
            if (l == i) continue;
            num = F.mul(num, F.sub(z, x[l]));
            den = F.mul(den, F.sub(x[i], x[l]));
        }
        return F.div(num, den);
    };
    // Row i of the systematic form is (y_l L_i(x_l) / y_i)_l.
    std::vector<elem_t> y(n, 0);
    y[0] = 1;
    for (std::size_t j = k; j < n; ++j) {
        const elem_t L = lagrange(0, x[j]);
        if (L == 0 || E(0, j) == 0) return std::nullopt;
        y[j] = F.div(E(0, j), L);
    }
    for (std::size_t i = 1; i < k; ++i) {
        const elem_t L = lagrange(i, x[k]);
        if (L == 0 || E(i, k) == 0) return std::nullopt;
        y[i] = F.div(F.mul(y[k], L), E(i, k));
    }
    GrsCode C{G.field_ptr(), x, y, k};
    if (!code_equal(grs_generator(C), G)) return std::nullopt;
    return y;
}

std::optional<GrsCode> sidelnikov_shestakov(const Matrix& G, std::size_t k, std::string* why) {
    auto frame = support_frame(G, k, why);
    if (!frame) return std::nullopt;
    auto x = finalize_frame(G.field(), *frame);
    if (!x) {
        set_why(why, "no room for a finite normalization");
        return std::nullopt;
    }
    auto y = recover_multiplier(G, *x, k);
    if (!y) {
        set_why(why, "span is not the recovered GRS code");
        return std::nullopt;
    }
    return GrsCode{G.field_ptr(), std::move(*x), std::move(*y), k};
}

std::optional<GrsCode> renormalize(const GrsCode& C, const std::array<std::pair<std::size_t, elem_t>, 3>& anchors) {
    const Field& F = *C.F;
    auto pt = [](elem_t v) { return ProjPoint{v, 1}; };
    const Mobius S = frame_map(F, pt(C.x.at(anchors[0].first)), pt(C.x.at(anchors[1].first)),
                               pt(C.x.at(anchors[2].first)));
    const Mobius T = frame_map(F, pt(anchors[0].second), pt(anchors[1].second), pt(anchors[2].second));
    const Mobius phi = compose(F, adjugate(F, T), S);
    GrsCode out{C.F, C.x, C.y, C.k};
    for (std::size_t i = 0; i < C.n(); ++i) {
        const elem_t den = F.add(F.mul(phi.c, C.x[i]), phi.d);
        if (den == 0) return std::nullopt;
        out.x[i] = F.div(F.add(F.mul(phi.a, C.x[i]), phi.b), den);
        out.y[i] = F.mul(C.y[i], F.pow(den, C.k == 0 ? 0 : C.k - 1));
    }
    return out;
}

}  // namespace ssrs
