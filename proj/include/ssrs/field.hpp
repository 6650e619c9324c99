// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssrs {

class Rng;

// Canonical element encoding: sum of c_i * q^i over the power basis of the
// modulus root. Elements of GF(q) embed as the integers [0, q).
using elem_t = std::uint32_t;

// An ordered tuple of field elements, used both for full bases (m entries)
// and subspace bases (lambda entries).
using Basis = std::vector<elem_t>;

struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field : public std::enable_shared_from_this<Field> {
public:
    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }
    unsigned m() const { return m_; }
    elem_t size() const { return size_; }
    // Modulus coefficients over GF(q), low degree first, monic, length m + 1.
    const std::vector<elem_t>& modulus() const { return modulus_; }
    // GF(q) as a field of its own (this field when m == 1).
    FieldPtr base() const;
    bool same_as(const Field& other) const {
        return p_ == other.p_ && e_ == other.e_ && m_ == other.m_;
    }

    elem_t add(elem_t a, elem_t b) const {
        if (small_) return add_[a * size_ + b];
        if (a == 0) return b;
        if (b == 0) return a;
        return zech_add(a, b);
    }
    elem_t neg(elem_t a) const {
        if (a == 0) return 0;
        return exp_[log_[a] + neg_one_log_];
    }
    elem_t sub(elem_t a, elem_t b) const { return add(a, neg(b)); }
    elem_t mul(elem_t a, elem_t b) const {
        if (small_) return mul_[a * size_ + b];
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    elem_t inv(elem_t a) const;
    elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }
    elem_t pow(elem_t a, std::uint64_t k) const;
    // a^(q^j)
    elem_t frobenius(elem_t a, unsigned j = 1) const;
    // Absolute trace to GF(q); the result is a canonical integer in [0, q).
    elem_t trace(elem_t a) const { return trace_[a]; }
    // Degree of the minimal polynomial of a over GF(q).
    unsigned degree(elem_t a) const;

    std::vector<elem_t> coeffs(elem_t a) const;
    elem_t from_coeffs(std::span<const elem_t> c) const;

    elem_t primitive() const { return exp_[1]; }
    Basis power_basis() const;
    Basis power_basis(elem_t gamma) const;

    elem_t random(Rng& rng) const;
    elem_t random_nonzero(Rng& rng) const;

    // dst[i] += c * src[i] for i in [0, len)
    void axpy(elem_t* dst, const elem_t* src, elem_t c, std::size_t len) const;
    void scale(elem_t* row, elem_t c, std::size_t len) const;

    std::string describe() const;

    // Internal; use make_field.
    struct Build;
    explicit Field(const Build& b);

private:
    elem_t zech_add(elem_t a, elem_t b) const {
        std::uint32_t la = log_[a], lb = log_[b];
        std::uint32_t d = lb >= la ? lb - la : lb + order_ - la;
        std::int32_t z = zech_[d];
        if (z < 0) return 0;
        return exp_[la + static_cast<std::uint32_t>(z)];
    }

    unsigned p_ = 0, e_ = 0, q_ = 0, m_ = 0;
    elem_t size_ = 0;
    std::uint32_t order_ = 0;  // size - 1
    std::uint32_t neg_one_log_ = 0;
    std::vector<elem_t> modulus_;
    std::vector<elem_t> exp_;       // length 2 * order, doubled to skip reductions
    std::vector<std::uint32_t> log_;
    std::vector<std::int32_t> zech_;
    std::vector<elem_t> trace_;
    bool small_ = false;
    std::vector<std::uint16_t> add_, mul_;
    FieldPtr base_;
};

// GF(q^m) with the lexicographically smallest monic irreducible modulus,
// coefficients compared low degree first.
FieldPtr make_field(unsigned q, unsigned m);

Basis dual_basis(const Field& F, const Basis& B);
// Rank over GF(q) of the coefficient vectors of the given elements.
std::size_t rank_over_base(const Field& F, const Basis& elems);
bool is_basis(const Field& F, const Basis& B);
Basis square_subspace(const Field& F, const Basis& S);
Basis random_subspace(const Field& F, unsigned lambda, Rng& rng);
// Extend an independent tuple to a full basis with power-basis vectors.
Basis complete_basis(const Field& F, const Basis& partial);

}  // namespace ssrs
