// SPDX-License-Identifier: Apache-2.0
#include "ssrs/scheme.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssrs/rng.hpp"

namespace ssrs {

namespace {

// Minimal RAII holder for a GMP integer.
struct Big {
    mpz_t v;
    Big() { mpz_init(v); }
    explicit Big(unsigned long x) { mpz_init_set_ui(v, x); }
    Big(const Big&) = delete;
    Big& operator=(const Big&) = delete;
    ~Big() { mpz_clear(v); }
};

void bytes_to_big(Big& out, std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> buf;
    buf.reserve(bytes.size() + 1);
    buf.push_back(1);
    buf.insert(buf.end(), bytes.begin(), bytes.end());
    mpz_import(out.v, buf.size(), 1, 1, 0, 0, buf.data());
}

std::vector<std::uint8_t> big_to_bytes(const Big& N) {
    std::size_t count = 0;
    std::vector<std::uint8_t> buf((mpz_sizeinbase(N.v, 2) + 7) / 8 + 1);
    mpz_export(buf.data(), &count, 1, 1, 0, 0, N.v);
    buf.resize(count);
    if (buf.empty() || buf.front() != 1) throw decrypt_error("plaintext sentinel missing");
    return {buf.begin() + 1, buf.end()};
}

void check_block_shape(std::size_t len, std::size_t lambda, std::size_t n) {
    if (len != lambda * n) throw std::invalid_argument("vector length is not lambda * n");
}

}  // namespace

void check_params(const SchemeParams& P, SchemeKind kind) {
    if (P.m < 2) throw parameter_error("m must be at least 2");
    if (P.lambda < 1 || P.lambda >= P.m) throw parameter_error("lambda must satisfy 1 <= lambda < m");
    if (P.k < 1 || P.k + 2 > P.n) throw parameter_error("need 1 <= k <= n - 2");
    double qm = std::pow(static_cast<double>(P.q), P.m);
    if (static_cast<double>(P.n) > qm) throw parameter_error("n exceeds q^m");
    if (static_cast<long long>(P.k) * P.m <= static_cast<long long>(P.n) * (P.m - P.lambda))
        throw parameter_error("km must exceed n(m - lambda)");
    (void)kind;
}

SsrsKeyPair ssrs_keygen(const SchemeParams& P, Rng& rng) {
    check_params(P, SchemeKind::ssrs);
    const FieldPtr F = make_field(P.q, P.m);
    for (;;) {
        std::vector<elem_t> x = random_support(*F, P.n, rng);
        BasisVector subs(P.n);
        for (auto& s : subs) s = random_subspace(*F, P.lambda, rng);
        const ExpandedCode E = subspace_subcode(LinearCode{grs_generator(rs_code(F, x, P.k))}, subs);
        if (E.dim() != P.subcode_dim()) continue;
        return SsrsKeyPair{P, F, row_basis(E.gen()), std::move(x), std::move(subs)};
    }
}

ExpandedCode random_parent_public(const SchemeParams& P, Rng& rng) {
    const FieldPtr F = make_field(P.q, P.m);
    const LinearCode C = random_code(F, P.n, P.k, rng);
    BasisVector subs(P.n);
    for (auto& s : subs) s = random_subspace(*F, P.lambda, rng);
    return subspace_subcode(C, subs);
}

std::vector<elem_t> random_block_error(const Field& K, std::size_t n, std::size_t lambda, std::size_t t, Rng& rng) {
    if (t > n) throw std::invalid_argument("error weight exceeds block count");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < t; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
    std::vector<elem_t> e(n * lambda, 0);
    for (std::size_t i = 0; i < t; ++i) {
        elem_t* blk = e.data() + idx[i] * lambda;
        do {
            for (std::size_t j = 0; j < lambda; ++j) blk[j] = K.random(rng);
        } while (std::all_of(blk, blk + lambda, [](elem_t v) { return v == 0; }));
    }
    return e;
}

std::vector<elem_t> ssrs_encrypt(const Matrix& G_pub, std::span<const elem_t> message, const SchemeParams& P,
                                 Rng& rng) {
    if (message.size() != G_pub.rows()) throw std::invalid_argument("message length differs from key dimension");
    const Field& K = G_pub.field();
    std::vector<elem_t> c = vec_mul(message, G_pub);
    const auto e = random_block_error(K, P.n, P.lambda, P.t(), rng);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = K.add(c[i], e[i]);
    return c;
}

std::vector<elem_t> ssrs_nearest_codeword(const SsrsKeyPair& kp, std::span<const elem_t> c) {
    const SchemeParams& P = kp.params;
    check_block_shape(c.size(), P.lambda, P.n);
    const std::vector<elem_t> r = squeeze_vector(*kp.F, c, kp.subs);
    const GrsCode C = rs_code(kp.F, kp.x, P.k);
    const DecodeResult d = decode(C, r);
    if (!d.ok) throw decrypt_error("decoding failed");
    try {
        return expand_vector(*kp.F, d.codeword, kp.subs);
    } catch (const membership_error&) {
        throw decrypt_error("decoded word leaves the subspaces");
    }
}

std::vector<elem_t> ssrs_decrypt(const SsrsKeyPair& kp, std::span<const elem_t> c) {
    const std::vector<elem_t> w = ssrs_nearest_codeword(kp, c);
    const Rref e = rref(kp.G_pub);
    std::vector<elem_t> msg(e.pivots.size());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) msg[i] = w[e.pivots[i]];
    // Express msg against the stored generator rather than its RREF.
    Matrix A = kp.G_pub.select_columns(e.pivots).transpose();
    Matrix b(kp.G_pub.field_ptr(), msg.size(), 1);
    for (std::size_t i = 0; i < msg.size(); ++i) b(i, 0) = msg[i];
    auto sol = solve_right(A, b);
    if (!sol) throw decrypt_error("message solve failed");
    std::vector<elem_t> out = sol->particular.column(0);
    if (vec_mul(out, kp.G_pub) != w) throw decrypt_error("codeword outside the public code");
    return out;
}

bool xgrs_derive(XgrsKeyPair& kp) {
    const SchemeParams& P = kp.params;
    const FieldPtr& F = kp.F;
    const FieldPtr K = F->base();
    const std::size_t m = P.m, lambda = P.lambda, n = P.n, r = m * (P.n - P.k);

    Rref hs = rref(grs_parity(GrsCode{F, kp.x, kp.y, P.k}));
    for (std::size_t i = 0; i < P.n - P.k; ++i)
        if (hs.pivots.size() <= i || hs.pivots[i] != i) return false;
    kp.H_sec = std::move(hs.matrix);

    const Basis Bg = F->power_basis(kp.gamma);
    const Basis Bd = dual_basis(*F, Bg);
    const Matrix H = expand_matrix(kp.H_sec, uniform_bases(Bd, n), Bd);
    std::vector<std::size_t> Lcols;
    for (std::size_t i = 0; i < n; ++i)
        for (auto l : kp.L[i]) Lcols.push_back(i * m + l);
    const Matrix HL = H.remove_columns(Lcols);

    Matrix M(K, HL.rows(), HL.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t row = 0; row < HL.rows(); ++row)
            for (std::size_t b = 0; b < lambda; ++b) {
                elem_t s = 0;
                for (std::size_t a = 0; a < lambda; ++a)
                    s = K->add(s, K->mul(HL(row, i * lambda + a), kp.Q[i](a, b)));
                M(row, i * lambda + b) = s;
            }
    Rref e = rref(M);
    if (e.pivots.size() != r) return false;
    for (std::size_t i = 0; i < r; ++i)
        if (e.pivots[i] != i) return false;
    kp.H_pub = std::move(e.matrix);
    kp.S_inv = M.submatrix(0, 0, r, r);
    return true;
}

XgrsKeyPair xgrs_keygen(const SchemeParams& P, Rng& rng) {
    check_params(P, SchemeKind::xgrs);
    const FieldPtr F = make_field(P.q, P.m);
    const FieldPtr K = F->base();
    for (;;) {
        XgrsKeyPair kp;
        kp.params = P;
        kp.F = F;
        const GrsCode C = random_grs(F, P.n, P.k, rng);
        kp.x = C.x;
        kp.y = C.y;
        do {
            kp.gamma = F->random(rng);
        } while (F->degree(kp.gamma) != P.m);
        kp.L.assign(P.n, {});
        for (auto& Li : kp.L) {
            std::vector<std::size_t> pos(P.m);
            std::iota(pos.begin(), pos.end(), 0);
            for (std::size_t i = 0; i < P.m - P.lambda; ++i) std::swap(pos[i], pos[i + rng.below(P.m - i)]);
            Li.assign(pos.begin(), pos.begin() + (P.m - P.lambda));
            std::sort(Li.begin(), Li.end());
        }
        for (int attempt = 0; attempt < 4; ++attempt) {
            kp.Q.clear();
            for (std::size_t i = 0; i < P.n; ++i) kp.Q.push_back(random_invertible(K, P.lambda, rng));
            if (xgrs_derive(kp)) return kp;
        }
    }
}

std::vector<elem_t> xgrs_encrypt(const Matrix& H_pub, std::span<const elem_t> y) { return mat_vec(H_pub, y); }

std::vector<elem_t> xgrs_decrypt(const XgrsKeyPair& kp, std::span<const elem_t> c) {
    const SchemeParams& P = kp.params;
    const Field& F = *kp.F;
    const FieldPtr K = F.base();
    const std::size_t m = P.m, lambda = P.lambda, n = P.n, nk = P.n - P.k;
    if (c.size() != m * nk) throw std::invalid_argument("syndrome length differs from m(n-k)");

    const std::vector<elem_t> cp = mat_vec(kp.S_inv, c);
    const Basis Bg = F.power_basis(kp.gamma);
    const std::vector<elem_t> s = squeeze_vector(F, cp, uniform_bases(Bg, nk));
    std::vector<elem_t> y0(n, 0);
    std::copy(s.begin(), s.end(), y0.begin());
    const DecodeResult d = decode(GrsCode{kp.F, kp.x, kp.y, P.k}, y0);
    if (!d.ok) throw decrypt_error("syndrome decoding failed");
    std::vector<elem_t> err(n);
    for (std::size_t i = 0; i < n; ++i) err[i] = F.sub(y0[i], d.codeword[i]);

    const std::vector<elem_t> full = expand_vector(F, err, uniform_bases(Bg, n));
    std::vector<elem_t> y(lambda * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<elem_t> yp;
        for (std::size_t l = 0; l < m; ++l) {
            if (std::binary_search(kp.L[i].begin(), kp.L[i].end(), l)) {
                if (full[i * m + l] != 0) throw decrypt_error("error leaves the punctured coordinates");
            } else {
                yp.push_back(full[i * m + l]);
            }
        }
        // y_i = y'_i (Q_i^-1)^T, i.e. solve y_i Q_i^T = y'_i.
        auto Qi_inv = inverse(kp.Q[i]);
        for (std::size_t b = 0; b < lambda; ++b) {
            elem_t v = 0;
            for (std::size_t a = 0; a < lambda; ++a) v = K->add(v, K->mul(yp[a], (*Qi_inv)(b, a)));
            y[i * lambda + b] = v;
        }
    }
    if (mat_vec(kp.H_pub, y) != std::vector<elem_t>(c.begin(), c.end()))
        throw decrypt_error("recovered error does not match the syndrome");
    return y;
}

ExpandedCode xgrs_public_code(const Matrix& H_pub, std::size_t lambda) {
    return ExpandedCode{LinearCode{row_basis(right_kernel(H_pub))}, lambda, H_pub.cols() / lambda};
}

SsrsKeyPair xgrs_to_ssrs(const XgrsKeyPair& kp, bool transposed_inverse) {
    const SchemeParams& P = kp.params;
    const Field& F = *kp.F;
    const Basis Bg = F.power_basis(kp.gamma);
    BasisVector subs(P.n);
    for (std::size_t i = 0; i < P.n; ++i) {
        Basis B0;
        for (std::size_t l = 0; l < P.m; ++l)
            if (!std::binary_search(kp.L[i].begin(), kp.L[i].end(), l)) B0.push_back(Bg[l]);
        const Matrix T = transposed_inverse ? inverse(kp.Q[i])->transpose() : kp.Q[i];
        const elem_t yinv = F.inv(kp.y[i]);
        Basis B(P.lambda, 0);
        for (std::size_t j = 0; j < P.lambda; ++j) {
            elem_t s = 0;
            for (std::size_t l = 0; l < P.lambda; ++l) s = F.add(s, F.mul(B0[l], T(l, j)));
            B[j] = F.mul(yinv, s);
        }
        subs[i] = std::move(B);
    }
    const ExpandedCode E = subspace_subcode(LinearCode{grs_generator(rs_code(kp.F, kp.x, P.k))}, subs);
    return SsrsKeyPair{P, kp.F, row_basis(E.gen()), kp.x, std::move(subs)};
}

double public_key_bits(const SchemeParams& P) {
    const double r = static_cast<double>(P.m) * (P.n - P.k);
    const double c = static_cast<double>(P.lambda) * P.n - r;
    return r * c * std::log2(static_cast<double>(P.q));
}

std::size_t packed_row_bytes(std::size_t cols, unsigned q) {
    if (cols == 0) return 0;
    Big N;
    mpz_ui_pow_ui(N.v, q, cols);
    mpz_sub_ui(N.v, N.v, 1);
    return (mpz_sizeinbase(N.v, 2) + 7) / 8;
}

std::vector<std::uint8_t> pack_nonsystematic(const Matrix& H_pub) {
    const std::size_t r = H_pub.rows(), cols = H_pub.cols() - r;
    const unsigned q = H_pub.field().q();
    const std::size_t rb = packed_row_bytes(cols, q);
    std::vector<std::uint8_t> out(r * rb, 0);
    Big N;
    for (std::size_t i = 0; i < r; ++i) {
        mpz_set_ui(N.v, 0);
        for (std::size_t c = cols; c-- > 0;) {
            mpz_mul_ui(N.v, N.v, q);
            mpz_add_ui(N.v, N.v, H_pub(i, r + c));
        }
        std::size_t count = 0;
        std::vector<std::uint8_t> buf(rb + 1);
        mpz_export(buf.data(), &count, -1, 1, 0, 0, N.v);
        std::copy(buf.begin(), buf.begin() + count, out.begin() + i * rb);
    }
    return out;
}

Matrix unpack_nonsystematic(std::span<const std::uint8_t> bytes, std::size_t rows, std::size_t total_cols,
                            FieldPtr K) {
    const std::size_t cols = total_cols - rows;
    const unsigned q = K->q();
    const std::size_t rb = packed_row_bytes(cols, q);
    if (bytes.size() != rows * rb) throw std::runtime_error("packed key has the wrong size");
    Matrix H(K, rows, total_cols);
    Big N;
    for (std::size_t i = 0; i < rows; ++i) {
        H(i, i) = 1;
        mpz_import(N.v, rb, -1, 1, 0, 0, bytes.data() + i * rb);
        for (std::size_t c = 0; c < cols; ++c) H(i, rows + c) = static_cast<elem_t>(mpz_fdiv_q_ui(N.v, N.v, q));
    }
    return H;
}

std::vector<elem_t> ssrs_encode_plaintext(std::span<const std::uint8_t> bytes, unsigned q, std::size_t len) {
    Big N;
    bytes_to_big(N, bytes);
    std::vector<elem_t> out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = static_cast<elem_t>(mpz_fdiv_q_ui(N.v, N.v, q));
    if (mpz_sgn(N.v) != 0) throw parameter_error("plaintext exceeds the message capacity");
    return out;
}

std::vector<std::uint8_t> ssrs_decode_plaintext(std::span<const elem_t> msg, unsigned q) {
    Big N;
    for (std::size_t i = msg.size(); i-- > 0;) {
        mpz_mul_ui(N.v, N.v, q);
        mpz_add_ui(N.v, N.v, msg[i]);
    }
    return big_to_bytes(N);
}

// Capacity: C(n, t) supports times (q^lambda - 1)^t nonzero block values.
std::vector<elem_t> xgrs_encode_plaintext(std::span<const std::uint8_t> bytes, const SchemeParams& P) {
    const std::size_t n = P.n, t = P.t(), lambda = P.lambda;
    const unsigned long vals = static_cast<unsigned long>(std::pow(P.q, lambda)) - 1;
    Big N, V, rank, b;
    bytes_to_big(N, bytes);
    mpz_ui_pow_ui(V.v, vals, t);
    mpz_fdiv_qr(rank.v, N.v, N.v, V.v);  // rank = N / V, N = N mod V
    mpz_bin_uiui(b.v, n, t);
    if (mpz_cmp(rank.v, b.v) >= 0) throw parameter_error("plaintext exceeds the message capacity");

    // Combinatorial number system: rank = sum C(c_i, i), c_t > ... > c_1.
    std::vector<std::size_t> blocks;
    std::size_t hi = n;
    for (std::size_t i = t; i >= 1; --i) {
        std::size_t c = i - 1;
        for (std::size_t cand = hi; cand-- > i - 1;) {
            mpz_bin_uiui(b.v, cand, i);
            if (mpz_cmp(b.v, rank.v) <= 0) {
                c = cand;
                break;
            }
        }
        mpz_bin_uiui(b.v, c, i);
        mpz_sub(rank.v, rank.v, b.v);
        blocks.push_back(c);
        hi = c;
    }
    std::sort(blocks.begin(), blocks.end());
    std::vector<elem_t> y(n * lambda, 0);
    for (auto blk : blocks) {
        unsigned long v = mpz_fdiv_q_ui(N.v, N.v, vals) + 1;
        for (std::size_t j = 0; j < lambda; ++j) {
            y[blk * lambda + j] = static_cast<elem_t>(v % P.q);
            v /= P.q;
        }
    }
    return y;
}

std::vector<std::uint8_t> xgrs_decode_plaintext(std::span<const elem_t> y, const SchemeParams& P) {
    const std::size_t n = P.n, t = P.t(), lambda = P.lambda;
    check_block_shape(y.size(), lambda, n);
    const unsigned long vals = static_cast<unsigned long>(std::pow(P.q, lambda)) - 1;
    std::vector<std::size_t> blocks;
    for (std::size_t i = 0; i < n; ++i)
        if (std::any_of(y.begin() + i * lambda, y.begin() + (i + 1) * lambda, [](elem_t v) { return v != 0; }))
            blocks.push_back(i);
    if (blocks.size() != t) throw decrypt_error("error weight differs from t");
    Big N, rank, b, V;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        mpz_bin_uiui(b.v, blocks[i], i + 1);
        mpz_add(rank.v, rank.v, b.v);
    }
    for (std::size_t i = blocks.size(); i-- > 0;) {
        unsigned long v = 0;
        for (std::size_t j = lambda; j-- > 0;) v = v * P.q + y[blocks[i] * lambda + j];
        mpz_mul_ui(N.v, N.v, vals);
        mpz_add_ui(N.v, N.v, v - 1);
    }
    mpz_ui_pow_ui(V.v, vals, t);
    mpz_addmul(N.v, rank.v, V.v);
    return big_to_bytes(N);
}

}  // namespace ssrs
