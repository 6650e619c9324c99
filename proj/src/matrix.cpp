// SPDX-License-Identifier: Apache-2.0
#include "ssrs/matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "ssrs/rng.hpp"

namespace ssrs {

namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* what) {
    if (!a.field().same_as(b.field())) throw std::invalid_argument(std::string(what) + ": field mismatch");
}

}  // namespace

Matrix::Matrix(FieldPtr F, std::size_t rows, std::size_t cols)
    : F_(std::move(F)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(FieldPtr F, std::size_t n) {
    Matrix I(std::move(F), n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Matrix Matrix::from_rows(FieldPtr F, std::size_t cols, const std::vector<std::vector<elem_t>>& rows) {
    Matrix M(std::move(F), 0, cols);
    for (const auto& r : rows) M.append_row(r);
    return M;
}

std::vector<elem_t> Matrix::column(std::size_t c) const {
    std::vector<elem_t> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void Matrix::append_row(std::span<const elem_t> v) {
    if (v.size() != cols_) throw std::invalid_argument("append_row: length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + cols_, row(b));
}

Matrix Matrix::transpose() const {
    Matrix T(F_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) T(c, r) = (*this)(r, c);
    return T;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
    Matrix out(F_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j] >= cols_) throw std::out_of_range("column index out of range");
            out(r, j) = (*this)(r, cols[j]);
        }
    return out;
}

Matrix Matrix::remove_columns(const std::vector<std::size_t>& cols) const {
    std::vector<char> drop(cols_, 0);
    for (auto c : cols) {
        if (c >= cols_) throw std::out_of_range("column index out of range");
        drop[c] = 1;
    }
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!drop[c]) keep.push_back(c);
    return select_columns(keep);
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
    Matrix out(F_, 0, cols_);
    for (auto r : rows) out.append_row(row_span(r));
    return out;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(F_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](elem_t v) { return v == 0; });
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (F_ && o.F_ && !F_->same_as(*o.F_)) return false;
    return data_ == o.data_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    require_same_field(a, b, "matrix product");
    const Field& F = a.field();
    Matrix out(a.field_ptr(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) F.axpy(out.row(i), b.row(l), a(i, l), b.cols());
    return out;
}

std::vector<elem_t> vec_mul(std::span<const elem_t> v, const Matrix& M) {
    if (v.size() != M.rows()) throw std::invalid_argument("vec_mul: shape mismatch");
    std::vector<elem_t> out(M.cols(), 0);
    for (std::size_t l = 0; l < v.size(); ++l) M.field().axpy(out.data(), M.row(l), v[l], M.cols());
    return out;
}

std::vector<elem_t> mat_vec(const Matrix& M, std::span<const elem_t> v) {
    if (v.size() != M.cols()) throw std::invalid_argument("mat_vec: shape mismatch");
    const Field& F = M.field();
    std::vector<elem_t> out(M.rows(), 0);
    for (std::size_t r = 0; r < M.rows(); ++r) {
        elem_t s = 0;
        const elem_t* row = M.row(r);
        for (std::size_t c = 0; c < v.size(); ++c)
            if (row[c] && v[c]) s = F.add(s, F.mul(row[c], v[c]));
        out[r] = s;
    }
    return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Matrix out(a.field_ptr(), a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::copy(a.row(r), a.row(r) + a.cols(), out.row(r));
        std::copy(b.row(r), b.row(r) + b.cols(), out.row(r) + a.cols());
    }
    return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Matrix out = a;
    for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row_span(r));
    return out;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("block_diagonal: no blocks");
    std::size_t R = 0, C = 0;
    for (const auto& b : blocks) {
        R += b.rows();
        C += b.cols();
    }
    Matrix out(blocks.front().field_ptr(), R, C);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

Rref rref(Matrix M) {
    const Field& F = M.field();
    const std::size_t R = M.rows(), C = M.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = r;
        while (piv < R && M(piv, c) == 0) ++piv;
        if (piv == R) continue;
        M.swap_rows(r, piv);
        const elem_t iv = F.inv(M(r, c));
        F.scale(M.row(r) + c, iv, C - c);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r) continue;
            const elem_t f = M(i, c);
            if (f == 0) continue;
            F.axpy(M.row(i) + c, M.row(r) + c, F.neg(f), C - c);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(M), std::move(pivots)};
}

std::size_t rank(const Matrix& M) {
    EchelonBuilder eb(M.field_ptr(), M.cols());
    for (std::size_t r = 0; r < M.rows() && !eb.full(); ++r) eb.add(M.row_span(r));
    return eb.rank();
}

Matrix row_basis(const Matrix& M) {
    Rref e = rref(M);
    Matrix out(M.field_ptr(), 0, M.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) out.append_row(e.matrix.row_span(r));
    return out;
}

Matrix right_kernel(const Matrix& M) {
    const Field& F = M.field();
    Rref e = rref(M);
    std::vector<char> is_pivot(M.cols(), 0);
    for (auto p : e.pivots) is_pivot[p] = 1;
    Matrix K(M.field_ptr(), 0, M.cols());
    std::vector<elem_t> v(M.cols());
    for (std::size_t f = 0; f < M.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = F.neg(e.matrix(i, f));
        K.append_row(v);
    }
    return K;
}

std::optional<Solution> solve_right(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows()) throw std::invalid_argument("solve_right: shape mismatch");
    require_same_field(A, B, "solve_right");
    Rref e = rref(hstack(A, B));
    const std::size_t c = A.cols();
    Matrix X(A.field_ptr(), c, B.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] >= c) return std::nullopt;
        for (std::size_t j = 0; j < B.cols(); ++j) X(e.pivots[i], j) = e.matrix(i, c + j);
    }
    return Solution{std::move(X), right_kernel(A)};
}

std::optional<Matrix> inverse(const Matrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse: matrix not square");
    Rref e = rref(hstack(A, Matrix::identity(A.field_ptr(), A.rows())));
    const std::size_t n = A.rows();
    for (std::size_t i = 0; i < n; ++i)
        if (i >= e.pivots.size() || e.pivots[i] != i) return std::nullopt;
    return e.matrix.submatrix(0, n, n, n);
}

bool code_equal(const Matrix& G1, const Matrix& G2) {
    if (G1.cols() != G2.cols()) throw std::invalid_argument("code_equal: length mismatch");
    require_same_field(G1, G2, "code_equal");
    return row_basis(G1) == row_basis(G2);
}

Matrix random_matrix(FieldPtr F, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix M(F, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) M(r, c) = F->random(rng);
    return M;
}

Matrix random_invertible(FieldPtr F, std::size_t n, Rng& rng) {
    for (;;) {
        Matrix M = random_matrix(F, n, n, rng);
        if (rank(M) == n) return M;
    }
}

std::vector<elem_t> random_codeword(const Matrix& G, Rng& rng) {
    const Field& F = G.field();
    std::vector<elem_t> out(G.cols(), 0);
    for (std::size_t r = 0; r < G.rows(); ++r) {
        const elem_t c = F.random(rng);
        if (c) F.axpy(out.data(), G.row(r), c, G.cols());
    }
    return out;
}

EchelonBuilder::EchelonBuilder(FieldPtr F, std::size_t cols) : F_(std::move(F)), cols_(cols) {}

void EchelonBuilder::reduce(std::vector<elem_t>& v) const {
    const Field& F = *F_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t p = pivots_[i];
        const elem_t f = v[p];
        if (f == 0) continue;
        F.axpy(v.data() + p, rows_[i].data() + p, F.neg(f), cols_ - p);
    }
}

bool EchelonBuilder::add(std::span<const elem_t> in) {
    if (in.size() != cols_) throw std::invalid_argument("EchelonBuilder: length mismatch");
    if (full()) return false;
    std::vector<elem_t> v(in.begin(), in.end());
    reduce(v);
    std::size_t p = 0;
    while (p < cols_ && v[p] == 0) ++p;
    if (p == cols_) return false;
    F_->scale(v.data() + p, F_->inv(v[p]), cols_ - p);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

bool EchelonBuilder::contains(std::span<const elem_t> in) const {
    std::vector<elem_t> v(in.begin(), in.end());
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](elem_t x) { return x == 0; });
}

Matrix EchelonBuilder::matrix() const {
    Matrix M(F_, 0, cols_);
    for (const auto& r : rows_) M.append_row(r);
    return M;
}

void write_matrix(std::ostream& os, const Matrix& M) {
    os << M.rows() << ' ' << M.cols() << ' ' << M.field().q() << ' ' << M.field().m() << '\n';
    for (std::size_t r = 0; r < M.rows(); ++r) {
        for (std::size_t c = 0; c < M.cols(); ++c) {
            if (c) os << ' ';
            os << M(r, c);
        }
        os << '\n';
    }
}

namespace {

Matrix read_body(std::istream& is, FieldPtr F, std::size_t rows, std::size_t cols) {
    Matrix M(F, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            unsigned long v;
            if (!(is >> v)) throw std::runtime_error("matrix text: truncated body");
            if (v >= F->size()) throw std::runtime_error("matrix text: entry out of range");
            M(r, c) = static_cast<elem_t>(v);
        }
    return M;
}

}  // namespace

Matrix read_matrix(std::istream& is) {
    std::size_t rows, cols;
    unsigned q, m;
    if (!(is >> rows >> cols >> q >> m)) throw std::runtime_error("matrix text: bad header");
    return read_body(is, make_field(q, m), rows, cols);
}

Matrix read_matrix(std::istream& is, FieldPtr F) {
    std::size_t rows, cols;
    unsigned q, m;
    if (!(is >> rows >> cols >> q >> m)) throw std::runtime_error("matrix text: bad header");
    if (q != F->q() || m != F->m()) throw std::runtime_error("matrix text: field mismatch");
    return read_body(is, F, rows, cols);
}

}  // namespace ssrs
