// SPDX-License-Identifier: Apache-2.0
#include "ssrs/poly.hpp"

#include <algorithm>

namespace ssrs::poly {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long degree(const Poly& a) {
    long d = static_cast<long>(a.size()) - 1;
    while (d >= 0 && a[d] == 0) --d;
    return d;
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(r);
    return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) F.axpy(r.data() + i, b.data(), a[i], b.size());
    trim(r);
    return r;
}

Poly scale(const Field& F, const Poly& a, elem_t c) {
    Poly r = a;
    F.scale(r.data(), c, r.size());
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
    Poly r = a;
    trim(r);
    Poly d = b;
    trim(d);
    if (d.empty()) throw std::domain_error("polynomial division by zero");
    if (r.size() < d.size()) return {Poly{}, r};
    Poly quot(r.size() - d.size() + 1, 0);
    const elem_t lead_inv = F.inv(d.back());
    for (std::size_t i = r.size() - 1;; --i) {
        const elem_t t = F.mul(r[i], lead_inv);
        const std::size_t shift = i + 1 - d.size();
        quot[shift] = t;
        if (t) F.axpy(r.data() + shift, d.data(), F.neg(t), d.size());
        if (i == d.size() - 1) break;
    }
    r.resize(d.size() - 1);
    trim(r);
    trim(quot);
    return {quot, r};
}

elem_t eval(const Field& F, const Poly& a, elem_t x) {
    elem_t v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = F.add(F.mul(v, x), a[i]);
    return v;
}

Poly from_roots(const Field& F, std::span<const elem_t> roots) {
    Poly r{1};
    for (elem_t x : roots) {
        Poly next(r.size() + 1, 0);
        const elem_t nx = F.neg(x);
        for (std::size_t i = 0; i < r.size(); ++i) {
            next[i + 1] = F.add(next[i + 1], r[i]);
            next[i] = F.add(next[i], F.mul(nx, r[i]));
        }
        r = std::move(next);
    }
    return r;
}

Poly interpolate(const Field& F, std::span<const elem_t> xs, std::span<const elem_t> ys) {
    const std::size_t n = xs.size();
    if (ys.size() != n) throw std::invalid_argument("interpolate: length mismatch");
    if (n == 0) return {};
    const Poly g = from_roots(F, xs);
    Poly out(n, 0);
    Poly q(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (ys[i] == 0) continue;
        // g / (X - x_i) by synthetic division, and its value at x_i.
        elem_t carry = 0;
        for (std::size_t j = n; j-- > 0;) {
            carry = F.add(g[j + 1], F.mul(carry, xs[i]));
            q[j] = carry;
        }
        const elem_t denom = eval(F, q, xs[i]);
        F.axpy(out.data(), q.data(), F.div(ys[i], denom), n);
    }
    trim(out);
    return out;
}

}  // namespace ssrs::poly
