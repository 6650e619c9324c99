// SPDX-License-Identifier: Apache-2.0
#include "ssrs/twisted.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ssrs/rng.hpp"

namespace ssrs {

std::size_t SchemeParams::subcode_dim() const {
    const long long d = static_cast<long long>(k) * m - static_cast<long long>(n) * (m - lambda);
    return d > 0 ? static_cast<std::size_t>(d) : 0;
}

std::string SchemeParams::describe() const {
    std::ostringstream os;
    os << "(q=" << q << ", m=" << m << ", lambda=" << lambda << ", n=" << n << ", k=" << k << ")";
    return os.str();
}

std::vector<elem_t> twisted_product_vec(const Field& K, std::span<const elem_t> a, std::span<const elem_t> b,
                                        std::size_t lambda) {
    if (a.size() != b.size() || lambda == 0 || a.size() % lambda)
        throw std::invalid_argument("twisted_product_vec: bad lengths");
    const std::size_t n = a.size() / lambda, T = tri(lambda);
    std::vector<elem_t> out(T * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const elem_t* x = a.data() + i * lambda;
        const elem_t* y = b.data() + i * lambda;
        elem_t* o = out.data() + i * T;
        for (std::size_t s = 0; s < lambda; ++s) {
            const std::size_t base = tri(s);
            for (std::size_t r = 0; r < s; ++r) o[base + r] = K.add(K.mul(x[r], y[s]), K.mul(x[s], y[r]));
            o[base + s] = K.mul(x[s], y[s]);
        }
    }
    return out;
}

ExpandedCode twisted_square(const ExpandedCode& E, const TwistedOptions& opt) {
    const Matrix& G = E.gen();
    const Field& K = G.field();
    const std::size_t lambda = E.block_len, len = tri(lambda) * E.n;
    EchelonBuilder eb(G.field_ptr(), len);
    if (opt.sampled) {
        Rng rng(opt.seed);
        const std::size_t count = len + opt.extra;
        for (std::size_t s = 0; s < count && !eb.full(); ++s) {
            eb.add(twisted_product_vec(K, random_codeword(G, rng), random_codeword(G, rng), lambda));
        }
    } else {
        for (std::size_t i = 0; i < G.rows() && !eb.full(); ++i)
            for (std::size_t j = i; j < G.rows() && !eb.full(); ++j)
                eb.add(twisted_product_vec(K, G.row_span(i), G.row_span(j), lambda));
    }
    return ExpandedCode{LinearCode{eb.matrix()}, tri(lambda), E.n};
}

std::vector<std::size_t> k_set(std::size_t lambda, std::size_t m, std::size_t n) {
    const std::size_t T = tri(lambda);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = m; j < T; ++j) out.push_back(T * i + j);
    return out;
}

ExpandedCode shortened_twisted_square(const ExpandedCode& E, std::size_t m, const TwistedOptions& opt) {
    if (tri(E.block_len) < m) throw std::invalid_argument("square subspace smaller than the field");
    ExpandedCode T = twisted_square(E, opt);
    return ExpandedCode{shorten(T.code, k_set(E.block_len, m, E.n)), m, E.n};
}

ExpandedCode adapted_shortened_twisted_square(const ExpandedCode& E, std::size_t m, const TwistedOptions& opt) {
    const std::size_t L = tri(E.block_len);
    if (L < m) throw std::invalid_argument("square subspace smaller than the field");
    ExpandedCode T = twisted_square(E, opt);
    if (L == m) return T;
    const std::size_t d = L - m;
    const Matrix H = dual(T.code).gen;
    const std::vector<std::size_t> fixed = k_set(E.block_len, m, 1);
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < E.n; ++i) {
        // Local relations among the L products, read off the dual.
        std::vector<std::size_t> rev(L);
        for (std::size_t j = 0; j < L; ++j) rev[j] = i * L + (L - 1 - j);
        const Rref R = rref(right_kernel(H.select_columns(rev)));
        if (R.pivots.size() != d) {
            for (auto c : fixed) cols.push_back(i * L + c);
            continue;
        }
        for (auto p : R.pivots) cols.push_back(i * L + (L - 1 - p));
    }
    return ExpandedCode{shorten(T.code, cols), m, E.n};
}

Basis twisted_square_basis(const Field& F, const Basis& S) {
    Basis out;
    for (std::size_t s = 0; s < S.size(); ++s)
        for (std::size_t r = 0; r <= s; ++r) out.push_back(F.mul(S[r], S[s]));
    out.resize(std::min<std::size_t>(out.size(), F.m()));
    return out;
}

namespace {

long long binom2(long long x) { return x > 0 ? x * (x - 1) / 2 : 0; }

struct Bounds {
    long long random_expected, rs_expected;
};

Bounds bounds(unsigned m, unsigned lambda, long long n, long long k) {
    const long long d = k * m - n * (m - lambda);
    const long long quad = binom2(std::max(d, 0LL) + 1) - n * (static_cast<long long>(tri(lambda)) - m);
    const long long random_expected = std::max(0LL, std::min<long long>(m * n, quad));
    const long long rs_expected = std::min<long long>(m * n, m * (2 * k - 1));
    return {random_expected, rs_expected};
}

}  // namespace

ExpectedDims expected_dims(unsigned, unsigned m, unsigned lambda, std::size_t n, std::size_t k) {
    const Bounds b = bounds(m, lambda, static_cast<long long>(n), static_cast<long long>(k));
    const bool ok = static_cast<long long>(m) * (2 * static_cast<long long>(k) - 1) < b.random_expected;
    return {static_cast<std::size_t>(b.random_expected), static_cast<std::size_t>(b.rs_expected), ok};
}

std::optional<std::size_t> choose_shortening(const SchemeParams& P, double slack) {
    if (tri(P.lambda) < P.m) return std::nullopt;
    const long long n = static_cast<long long>(P.n), k = static_cast<long long>(P.k);
    for (long long s = std::max(0LL, 2 * k - n); s < k; ++s) {
        const long long ns = n - s, ks = k - s;
        if (ks < 1) break;
        if (ks * P.m - ns * (P.m - P.lambda) <= 0) continue;
        const Bounds b = bounds(P.m, P.lambda, ns, ks);
        const double lhs = static_cast<double>(P.m) * (2 * ks - 1);
        if (lhs <= (1.0 - slack) * static_cast<double>(b.random_expected)) return static_cast<std::size_t>(s);
    }
    return std::nullopt;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::grs_like: return "grs-like";
        case Verdict::random_like: return "random-like";
        default: return "inconclusive";
    }
}

std::string DistinguisherReport::to_text() const {
    std::ostringstream os;
    os << "observed_dim " << observed_dim << '\n'
       << "random_expected " << random_expected << '\n'
       << "rs_expected " << rs_expected << '\n'
       << "condition_ok " << (condition_ok ? 1 : 0) << '\n'
       << "verdict " << verdict_name(verdict) << '\n'
       << "shorten_blocks_used " << shorten_blocks_used << '\n';
    if (!note.empty()) os << "note " << note << '\n';
    return os.str();
}

DistinguisherReport distinguish(const ExpandedCode& pub, const SchemeParams& P, const DistinguishOptions& opt) {
    DistinguisherReport rep;
    if (pub.block_len != P.lambda || pub.n != P.n) throw std::invalid_argument("distinguish: shape mismatch");
    if (2 * P.lambda <= P.m) {
        rep.note = "barrier: lambda <= m/2, the distinguisher is ineffective";
        return rep;
    }
    if (tri(P.lambda) < P.m) {
        rep.note = "square subspace smaller than the field";
        return rep;
    }
    std::optional<std::size_t> s = opt.shorten_blocks ? opt.shorten_blocks : choose_shortening(P);
    if (!s) {
        rep.note = "barrier: no shortening satisfies the dimension condition";
        return rep;
    }
    rep.shorten_blocks_used = *s;
    const ExpectedDims ed = expected_dims(P.q, P.m, P.lambda, P.n - *s, P.k - *s);
    rep.random_expected = ed.random_expected;
    rep.rs_expected = ed.rs_expected;
    rep.condition_ok = ed.condition_ok;

    std::vector<std::size_t> blocks(P.n);
    std::iota(blocks.begin(), blocks.end(), 0);
    if (opt.random_blocks) {
        Rng rng(opt.seed);
        for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
            std::swap(blocks[i], blocks[i + rng.below(blocks.size() - i)]);
    }
    blocks.resize(*s);
    const ExpandedCode sh = block_shorten(pub, blocks);
    const ExpandedCode T = shortened_twisted_square(sh, P.m, opt.twisted);
    rep.observed_dim = T.dim();
    if (!rep.condition_ok)
        rep.verdict = Verdict::inconclusive;
    else if (rep.observed_dim <= rep.rs_expected)
        rep.verdict = Verdict::grs_like;
    else if (rep.observed_dim >= rep.random_expected)
        rep.verdict = Verdict::random_like;
    return rep;
}

}  // namespace ssrs
