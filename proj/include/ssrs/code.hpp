// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "ssrs/matrix.hpp"

namespace ssrs {

struct LinearCode {
    Matrix gen;  // full row rank

    // Reduces an arbitrary spanning matrix to a full-rank generator.
    static LinearCode span_of(const Matrix& M);
    std::size_t length() const { return gen.cols(); }
    std::size_t dim() const { return gen.rows(); }
    const Field& field() const { return gen.field(); }
    const FieldPtr& field_ptr() const { return gen.field_ptr(); }
    bool contains(std::span<const elem_t> v) const;
};

bool code_equal(const LinearCode& a, const LinearCode& b);
LinearCode puncture(const LinearCode& C, const std::vector<std::size_t>& L);
LinearCode shorten(const LinearCode& C, const std::vector<std::size_t>& L);
LinearCode dual(const LinearCode& C);
LinearCode random_code(FieldPtr F, std::size_t n, std::size_t k, Rng& rng);

struct StarOptions {
    bool sampled = false;   // products of random codewords instead of all pairs
    std::size_t samples = 0;  // 0 means 4n
    std::uint64_t seed = 0;
};
LinearCode star_product(const LinearCode& A, const LinearCode& B, const StarOptions& opt = {});
LinearCode square(const LinearCode& A, const StarOptions& opt = {});
std::vector<elem_t> hadamard(const Field& F, std::span<const elem_t> a, std::span<const elem_t> b);

// GF(q)-linear codes inside GF(q^m)^n, given by rows whose GF(q)-span is the code.
Matrix fq_coordinates(const Matrix& M);
Matrix fq_basis(const Matrix& M);
std::size_t fq_rank(const Matrix& M);
bool fq_equal(const Matrix& A, const Matrix& B);
Matrix star_product_fq(const Matrix& A, const Matrix& B);

}  // namespace ssrs
