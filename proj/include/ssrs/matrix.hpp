// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssrs/field.hpp"

namespace ssrs {

class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr F, std::size_t rows, std::size_t cols);
    static Matrix identity(FieldPtr F, std::size_t n);
    static Matrix from_rows(FieldPtr F, std::size_t cols, const std::vector<std::vector<elem_t>>& rows);

    const FieldPtr& field_ptr() const { return F_; }
    const Field& field() const { return *F_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    elem_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    elem_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    elem_t* row(std::size_t r) { return data_.data() + r * cols_; }
    const elem_t* row(std::size_t r) const { return data_.data() + r * cols_; }
    std::span<const elem_t> row_span(std::size_t r) const { return {row(r), cols_}; }
    std::vector<elem_t> row_vec(std::size_t r) const { return {row(r), row(r) + cols_}; }
    std::vector<elem_t> column(std::size_t c) const;
    const std::vector<elem_t>& data() const { return data_; }

    void append_row(std::span<const elem_t> v);
    void swap_rows(std::size_t a, std::size_t b);
    Matrix transpose() const;
    Matrix select_columns(const std::vector<std::size_t>& cols) const;
    Matrix remove_columns(const std::vector<std::size_t>& cols) const;
    Matrix select_rows(const std::vector<std::size_t>& rows) const;
    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const;

private:
    FieldPtr F_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<elem_t> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
// v * M
std::vector<elem_t> vec_mul(std::span<const elem_t> v, const Matrix& M);
// M * v^T
std::vector<elem_t> mat_vec(const Matrix& M, std::span<const elem_t> v);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

struct Rref {
    Matrix matrix;
    std::vector<std::size_t> pivots;
};
// Reduced row echelon form, leftmost pivots, zero rows kept at the bottom.
Rref rref(Matrix M);
std::size_t rank(const Matrix& M);
// Nonzero rows of the RREF.
Matrix row_basis(const Matrix& M);
// Basis of {v : M v^T = 0}, one vector per row.
Matrix right_kernel(const Matrix& M);

struct Solution {
    Matrix particular;  // A * particular = B
    Matrix kernel;      // rows span the right kernel of A
};
std::optional<Solution> solve_right(const Matrix& A, const Matrix& B);
std::optional<Matrix> inverse(const Matrix& A);
bool code_equal(const Matrix& G1, const Matrix& G2);
Matrix random_matrix(FieldPtr F, std::size_t rows, std::size_t cols, Rng& rng);
Matrix random_invertible(FieldPtr F, std::size_t n, Rng& rng);
// Uniform element of the row space of G.
std::vector<elem_t> random_codeword(const Matrix& G, Rng& rng);

// Incremental echelon basis of a row space. Rows are reduced against earlier
// rows only, so insertion order fixes the representation.
class EchelonBuilder {
public:
    EchelonBuilder(FieldPtr F, std::size_t cols);
    bool add(std::span<const elem_t> v);
    bool contains(std::span<const elem_t> v) const;
    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return cols_; }
    bool full() const { return pivots_.size() == cols_; }
    Matrix matrix() const;

private:
    void reduce(std::vector<elem_t>& v) const;

    FieldPtr F_;
    std::size_t cols_;
    std::vector<std::vector<elem_t>> rows_;
    std::vector<std::size_t> pivots_;
};

void write_matrix(std::ostream& os, const Matrix& M);
Matrix read_matrix(std::istream& is);
Matrix read_matrix(std::istream& is, FieldPtr F);

}  // namespace ssrs
