// SPDX-License-Identifier: Apache-2.0
#include "ssrs/code.hpp"

#include <algorithm>

#include "ssrs/rng.hpp"

namespace ssrs {

namespace {

void check_indices(const LinearCode& C, const std::vector<std::size_t>& L) {
    for (auto i : L)
        if (i >= C.length()) throw std::out_of_range("index set exceeds code length");
}

}  // namespace

LinearCode LinearCode::span_of(const Matrix& M) { return LinearCode{row_basis(M)}; }

bool LinearCode::contains(std::span<const elem_t> v) const {
    EchelonBuilder eb(gen.field_ptr(), gen.cols());
    for (std::size_t r = 0; r < gen.rows(); ++r) eb.add(gen.row_span(r));
    return eb.contains(v);
}

bool code_equal(const LinearCode& a, const LinearCode& b) { return code_equal(a.gen, b.gen); }

LinearCode puncture(const LinearCode& C, const std::vector<std::size_t>& L) {
    check_indices(C, L);
    return LinearCode::span_of(C.gen.remove_columns(L));
}

LinearCode dual(const LinearCode& C) { return LinearCode{right_kernel(C.gen)}; }

LinearCode shorten(const LinearCode& C, const std::vector<std::size_t>& L) {
    check_indices(C, L);
    if (L.empty()) return C;
    return dual(puncture(dual(C), L));
}

LinearCode random_code(FieldPtr F, std::size_t n, std::size_t k, Rng& rng) {
    if (k > n) throw parameter_error("random_code: k > n");
    for (;;) {
        Matrix G = random_matrix(F, k, n, rng);
        if (rank(G) == k) return LinearCode{std::move(G)};
    }
}

std::vector<elem_t> hadamard(const Field& F, std::span<const elem_t> a, std::span<const elem_t> b) {
    std::vector<elem_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a[i], b[i]);
    return out;
}

LinearCode star_product(const LinearCode& A, const LinearCode& B, const StarOptions& opt) {
    if (A.length() != B.length()) throw std::invalid_argument("star_product: length mismatch");
    const Field& F = A.field();
    EchelonBuilder eb(A.field_ptr(), A.length());
    if (opt.sampled) {
        Rng rng(opt.seed);
        const std::size_t count = opt.samples ? opt.samples : 4 * A.length();
        for (std::size_t s = 0; s < count && !eb.full(); ++s) {
            // Random codewords, not random generator rows: rows of a
            // systematic generator have sparse products.
            eb.add(hadamard(F, random_codeword(A.gen, rng), random_codeword(B.gen, rng)));
        }
    } else {
        for (std::size_t i = 0; i < A.dim() && !eb.full(); ++i)
            for (std::size_t j = 0; j < B.dim() && !eb.full(); ++j)
                eb.add(hadamard(F, A.gen.row_span(i), B.gen.row_span(j)));
    }
    return LinearCode{eb.matrix()};
}

LinearCode square(const LinearCode& A, const StarOptions& opt) {
    const Field& F = A.field();
    EchelonBuilder eb(A.field_ptr(), A.length());
    if (opt.sampled) return star_product(A, A, opt);
    for (std::size_t i = 0; i < A.dim() && !eb.full(); ++i)
        for (std::size_t j = i; j < A.dim() && !eb.full(); ++j)
            eb.add(hadamard(F, A.gen.row_span(i), A.gen.row_span(j)));
    return LinearCode{eb.matrix()};
}

Matrix fq_coordinates(const Matrix& M) {
    const Field& F = M.field();
    const unsigned m = F.m();
    Matrix out(F.base(), M.rows(), M.cols() * m);
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t c = 0; c < M.cols(); ++c) {
            elem_t v = M(r, c);
            for (unsigned j = 0; j < m; ++j) {
                out(r, c * m + j) = v % F.q();
                v /= F.q();
            }
        }
    return out;
}

Matrix fq_basis(const Matrix& M) {
    const Matrix X = fq_coordinates(M);
    EchelonBuilder eb(X.field_ptr(), X.cols());
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < X.rows(); ++r)
        if (eb.add(X.row_span(r))) keep.push_back(r);
    return M.select_rows(keep);
}

std::size_t fq_rank(const Matrix& M) { return rank(fq_coordinates(M)); }

bool fq_equal(const Matrix& A, const Matrix& B) {
    return code_equal(fq_coordinates(A), fq_coordinates(B));
}

Matrix star_product_fq(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.cols()) throw std::invalid_argument("star_product_fq: length mismatch");
    const Field& F = A.field();
    Matrix prods(A.field_ptr(), 0, A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < B.rows(); ++j) prods.append_row(hadamard(F, A.row_span(i), B.row_span(j)));
    return fq_basis(prods);
}

}  // namespace ssrs
