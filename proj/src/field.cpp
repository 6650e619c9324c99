// SPDX-License-Identifier: Apache-2.0
#include "ssrs/field.hpp"

#include <algorithm>
#include <functional>

#include "ssrs/rng.hpp"

namespace ssrs {

namespace {

// Arithmetic in the coefficient field used while building a table field.
struct CoefArith {
    unsigned c = 0;
    FieldPtr F;  // null for a prime field

    elem_t add(elem_t a, elem_t b) const { return F ? F->add(a, b) : (a + b) % c; }
    elem_t sub(elem_t a, elem_t b) const { return F ? F->sub(a, b) : (a + c - b) % c; }
    elem_t mul(elem_t a, elem_t b) const {
        return F ? F->mul(a, b) : static_cast<elem_t>((std::uint64_t{a} * b) % c);
    }
};

using Poly = std::vector<elem_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod g for monic g.
Poly poly_mod(const CoefArith& ca, Poly a, const Poly& g) {
    const std::size_t dg = g.size() - 1;
    trim(a);
    while (a.size() > dg) {
        const elem_t t = a.back();
        const std::size_t shift = a.size() - 1 - dg;
        for (std::size_t j = 0; j < dg; ++j) a[shift + j] = ca.sub(a[shift + j], ca.mul(t, g[j]));
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly mulmod(const CoefArith& ca, const Poly& a, const Poly& b, const Poly& f) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ca.add(r[i + j], ca.mul(a[i], b[j]));
    }
    return poly_mod(ca, std::move(r), f);
}

Poly powmod(const CoefArith& ca, Poly base, std::uint64_t k, const Poly& f) {
    Poly r{1};
    while (k) {
        if (k & 1) r = mulmod(ca, r, base, f);
        base = mulmod(ca, base, base, f);
        k >>= 1;
    }
    return r;
}

Poly digits(elem_t v, unsigned c, unsigned d) {
    Poly out(d, 0);
    for (unsigned i = 0; i < d; ++i) {
        out[i] = v % c;
        v /= c;
    }
    trim(out);
    return out;
}

elem_t encode(const Poly& a, unsigned c) {
    elem_t v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = v * c + a[i];
    return v;
}

bool irreducible(const CoefArith& ca, const Poly& f) {
    const unsigned d = static_cast<unsigned>(f.size() - 1);
    for (unsigned j = 1; 2 * j <= d; ++j) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < j; ++i) count *= ca.c;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(j + 1, 0);
            std::uint64_t t = idx;
            for (unsigned i = 0; i < j; ++i) {
                g[i] = static_cast<elem_t>(t % ca.c);
                t /= ca.c;
            }
            g[j] = 1;
            if (poly_mod(ca, f, g).empty()) return false;
        }
    }
    return true;
}

// Smallest monic irreducible of degree d, coefficient tuples (c_0, c_1, ...)
// compared lexicographically.
Poly smallest_irreducible(const CoefArith& ca, unsigned d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= ca.c;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly f(d + 1, 0);
        std::uint64_t t = idx;
        for (unsigned i = d; i-- > 0;) {
            f[i] = static_cast<elem_t>(t % ca.c);
            t /= ca.c;
        }
        f[d] = 1;
        if (d >= 2 && f[0] == 0) continue;
        if (irreducible(ca, f)) return f;
    }
    throw invariant_error("no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Small dense elimination over a base field, used for basis computations.
using SmallMat = std::vector<std::vector<elem_t>>;

std::size_t eliminate(const Field& K, SmallMat& a, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[r], a[piv]);
        const elem_t iv = K.inv(a[r][c]);
        for (auto& v : a[r]) v = K.mul(v, iv);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            const elem_t f = K.neg(a[i][c]);
            for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = K.add(a[i][j], K.mul(f, a[r][j]));
        }
        ++r;
    }
    return r;
}

}  // namespace

struct Field::Build {
    unsigned p, e, q, m;
    elem_t size;
    std::vector<elem_t> modulus;
    std::vector<elem_t> exp;
    std::vector<std::uint32_t> log;
    std::vector<std::int32_t> zech;
    FieldPtr base;
};

namespace {

std::shared_ptr<Field> construct(const CoefArith& ca, unsigned d, unsigned p, unsigned e, unsigned q, unsigned m,
                                 std::vector<elem_t> declared_modulus, FieldPtr base) {
    Field::Build b{p, e, q, m, 0, {}, {}, {}, {}, std::move(base)};
    const Poly f = smallest_irreducible(ca, d);
    std::uint64_t size = 1;
    for (unsigned i = 0; i < d; ++i) size *= ca.c;
    if (size > (1u << 24)) throw parameter_error("field too large for table arithmetic");
    b.size = static_cast<elem_t>(size);
    b.modulus = declared_modulus.empty() ? std::vector<elem_t>(f.begin(), f.end()) : std::move(declared_modulus);

    const std::uint64_t order = size - 1;
    const auto factors = prime_factors(order);
    Poly alpha;
    for (elem_t cand = 1; cand < size; ++cand) {
        Poly a = digits(cand, ca.c, d);
        bool prim = true;
        for (auto r : factors) {
            if (powmod(ca, a, order / r, f) == Poly{1}) {
                prim = false;
                break;
            }
        }
        if (prim) {
            alpha = a;
            break;
        }
    }
    b.exp.assign(2 * order, 0);
    b.log.assign(size, 0);
    Poly cur{1};
    for (std::uint64_t i = 0; i < order; ++i) {
        const elem_t v = encode(cur, ca.c);
        b.exp[i] = v;
        b.exp[i + order] = v;
        b.log[v] = static_cast<std::uint32_t>(i);
        cur = mulmod(ca, cur, alpha, f);
    }
    b.zech.assign(order, -1);
    for (std::uint64_t i = 0; i < order; ++i) {
        const elem_t a = b.exp[i];
        const elem_t c0 = a % ca.c;
        const elem_t s = a - c0 + ca.add(c0, 1);
        b.zech[i] = s == 0 ? -1 : static_cast<std::int32_t>(b.log[s]);
    }
    return std::make_shared<Field>(b);
}

}  // namespace

Field::Field(const Build& b)
    : p_(b.p), e_(b.e), q_(b.q), m_(b.m), size_(b.size), order_(b.size - 1), modulus_(b.modulus), exp_(b.exp),
      log_(b.log), zech_(b.zech), base_(b.base) {
    neg_one_log_ = (p_ == 2) ? 0 : order_ / 2;
    if (size_ <= 256) {
        add_.assign(std::size_t{size_} * size_, 0);
        mul_.assign(std::size_t{size_} * size_, 0);
        for (elem_t a = 0; a < size_; ++a) {
            for (elem_t c = 0; c < size_; ++c) {
                add_[a * size_ + c] = static_cast<std::uint16_t>(
                    a == 0 ? c : (c == 0 ? a : zech_add(a, c)));
                mul_[a * size_ + c] =
                    static_cast<std::uint16_t>((a == 0 || c == 0) ? 0 : exp_[log_[a] + log_[c]]);
            }
        }
        small_ = true;
    }
    trace_.assign(size_, 0);
    for (elem_t a = 1; a < size_; ++a) {
        elem_t s = 0;
        elem_t x = a;
        for (unsigned i = 0; i < m_; ++i) {
            s = add(s, x);
            x = pow(x, q_);
        }
        if (s >= q_) throw invariant_error("trace left the base field");
        trace_[a] = s;
    }
}

FieldPtr Field::base() const { return base_ ? base_ : shared_from_this(); }

elem_t Field::inv(elem_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(order_ - log_[a]) % order_];
}

elem_t Field::pow(elem_t a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t l = (std::uint64_t{log_[a]} * (k % order_)) % order_;
    return exp_[l];
}

elem_t Field::frobenius(elem_t a, unsigned j) const {
    if (a == 0) return 0;
    std::uint64_t e = 1;
    for (unsigned i = 0; i < j; ++i) e = (e * q_) % order_;
    return pow(a, e == 0 ? order_ : e);
}

unsigned Field::degree(elem_t a) const {
    for (unsigned d = 1; d < m_; ++d)
        if (m_ % d == 0 && frobenius(a, d) == a) return d;
    return m_;
}

std::vector<elem_t> Field::coeffs(elem_t a) const {
    std::vector<elem_t> c(m_);
    for (unsigned i = 0; i < m_; ++i) {
        c[i] = a % q_;
        a /= q_;
    }
    return c;
}

elem_t Field::from_coeffs(std::span<const elem_t> c) const {
    elem_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * q_ + c[i];
    return v;
}

Basis Field::power_basis() const {
    Basis b(m_);
    elem_t z = 1;
    for (unsigned i = 0; i < m_; ++i) {
        b[i] = z;
        z *= q_;
    }
    return b;
}

Basis Field::power_basis(elem_t gamma) const {
    Basis b(m_);
    elem_t z = 1;
    for (unsigned i = 0; i < m_; ++i) {
        b[i] = z;
        z = mul(z, gamma);
    }
    return b;
}

elem_t Field::random(Rng& rng) const { return static_cast<elem_t>(rng.below(size_)); }

elem_t Field::random_nonzero(Rng& rng) const { return static_cast<elem_t>(1 + rng.below(size_ - 1)); }

void Field::axpy(elem_t* dst, const elem_t* src, elem_t c, std::size_t len) const {
    if (c == 0) return;
    if (small_) {
        const std::uint16_t* mr = &mul_[std::size_t{c} * size_];
        const std::uint16_t* at = add_.data();
        for (std::size_t i = 0; i < len; ++i) {
            const elem_t s = src[i];
            if (s) dst[i] = at[dst[i] * size_ + mr[s]];
        }
        return;
    }
    const std::uint32_t lc = log_[c];
    for (std::size_t i = 0; i < len; ++i) {
        const elem_t s = src[i];
        if (s == 0) continue;
        const elem_t t = exp_[lc + log_[s]];
        const elem_t d = dst[i];
        dst[i] = d == 0 ? t : zech_add(d, t);
    }
}

void Field::scale(elem_t* row, elem_t c, std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) row[i] = mul(row[i], c);
}

std::string Field::describe() const {
    return "GF(" + std::to_string(q_) + (m_ > 1 ? "^" + std::to_string(m_) : std::string()) + ")";
}

FieldPtr make_field(unsigned q, unsigned m) {
    if (q < 2) throw parameter_error("q must be a prime power >= 2");
    if (m < 1) throw parameter_error("m must be >= 1");
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0;
    for (unsigned t = q; t > 1; t /= p) {
        if (t % p != 0) throw parameter_error("q = " + std::to_string(q) + " is not a prime power");
        ++e;
    }
    if (!is_prime(p)) throw parameter_error("q is not a prime power");

    CoefArith prime{p, nullptr};
    FieldPtr base;
    if (e == 1) {
        base = construct(prime, 1, p, 1, p, 1, {}, nullptr);
    } else {
        base = construct(prime, e, p, e, q, 1, {0, 1}, nullptr);
    }
    if (m == 1) return base;
    CoefArith over{q, base};
    return construct(over, m, p, e, q, m, {}, base);
}

Basis dual_basis(const Field& F, const Basis& B) {
    const unsigned m = F.m();
    if (B.size() != m) throw invariant_error("dual_basis needs a full basis");
    const FieldPtr K = F.base();
    SmallMat a(m, std::vector<elem_t>(2 * m, 0));
    for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = 0; j < m; ++j) a[i][j] = F.trace(F.mul(B[i], B[j]));
        a[i][m + i] = 1;
    }
    if (eliminate(*K, a, m) != m) throw invariant_error("dual_basis: dependent input");
    Basis out(m, 0);
    for (unsigned j = 0; j < m; ++j) {
        elem_t s = 0;
        for (unsigned l = 0; l < m; ++l) s = F.add(s, F.mul(a[l][m + j], B[l]));
        out[j] = s;
    }
    return out;
}

std::size_t rank_over_base(const Field& F, const Basis& elems) {
    SmallMat a;
    a.reserve(elems.size());
    for (elem_t x : elems) a.push_back(F.coeffs(x));
    return eliminate(*F.base(), a, F.m());
}

bool is_basis(const Field& F, const Basis& B) { return B.size() == F.m() && rank_over_base(F, B) == F.m(); }

Basis square_subspace(const Field& F, const Basis& S) {
    Basis out;
    for (std::size_t i = 0; i < S.size(); ++i) {
        for (std::size_t j = i; j < S.size(); ++j) {
            Basis trial = out;
            trial.push_back(F.mul(S[i], S[j]));
            if (rank_over_base(F, trial) == trial.size()) out = std::move(trial);
        }
    }
    return out;
}

Basis random_subspace(const Field& F, unsigned lambda, Rng& rng) {
    if (lambda < 1 || lambda > F.m()) throw parameter_error("lambda must lie in [1, m]");
    for (;;) {
        Basis b(lambda);
        for (auto& x : b) x = F.random(rng);
        if (rank_over_base(F, b) == lambda) return b;
    }
}

Basis complete_basis(const Field& F, const Basis& partial) {
    Basis out = partial;
    if (rank_over_base(F, out) != out.size()) throw invariant_error("complete_basis: dependent input");
    for (elem_t z : F.power_basis()) {
        if (out.size() == F.m()) break;
        Basis trial = out;
        trial.push_back(z);
        if (rank_over_base(F, trial) == trial.size()) out = std::move(trial);
    }
    return out;
}

}  // namespace ssrs
