// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ssrs/code.hpp"

namespace ssrs {

// One basis per position; all of the same length (the block length).
using BasisVector = std::vector<Basis>;

// GF(q)-linear code of length block_len * n, read as n blocks.
struct ExpandedCode {
    LinearCode code;
    std::size_t block_len = 0;
    std::size_t n = 0;

    std::size_t dim() const { return code.dim(); }
    const Matrix& gen() const { return code.gen; }
};

struct membership_error : std::runtime_error {
    std::vector<std::size_t> positions;
    explicit membership_error(std::vector<std::size_t> pos);
};

// Coordinates of field elements on a (possibly partial) basis.
class Decomposer {
public:
    Decomposer(const Field& F, const Basis& B);
    // Writes |B| coordinates; false when x is outside span(B).
    bool coords(elem_t x, elem_t* out) const;
    std::size_t size() const { return lambda_; }

private:
    const Field* F_;
    FieldPtr K_;
    std::size_t lambda_;
    std::vector<elem_t> pinv_;  // m x m, row major
};

std::vector<elem_t> expand_vector(const Field& F, std::span<const elem_t> v, const BasisVector& bases);
std::vector<elem_t> squeeze_vector(const Field& F, std::span<const elem_t> w, const BasisVector& bases);
// Row (r, j) is the expansion of vertical[j] * M_r.
Matrix expand_matrix(const Matrix& M, const BasisVector& bases, const Basis& vertical);
Matrix squeeze_matrix(const FieldPtr& F, const Matrix& W, const BasisVector& bases);

BasisVector uniform_bases(const Basis& B, std::size_t n);
ExpandedCode expand_code(const LinearCode& C, const BasisVector& bases);
// C|S expanded over the given subspace bases.
ExpandedCode subspace_subcode(const LinearCode& C, const BasisVector& subs);
// {i*m + j : j in [lambda, m)}
std::vector<std::size_t> j_set(std::size_t lambda, std::size_t m, std::size_t n);
std::vector<std::size_t> block_columns(std::size_t block_len, const std::vector<std::size_t>& blocks);
ExpandedCode block_shorten(const ExpandedCode& E, const std::vector<std::size_t>& blocks);
ExpandedCode block_puncture(const ExpandedCode& E, const std::vector<std::size_t>& blocks);

}  // namespace ssrs
