// SPDX-License-Identifier: Apache-2.0
#include "ssrs/expansion.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace ssrs {

namespace {

std::string describe_positions(const std::vector<std::size_t>& pos) {
    std::string s = "entries outside the subspace at positions";
    for (std::size_t i = 0; i < pos.size() && i < 8; ++i) s += " " + std::to_string(pos[i]);
    if (pos.size() > 8) s += " ...";
    return s;
}

void check_bases(const BasisVector& bases, std::size_t n) {
    if (bases.size() != n) throw std::invalid_argument("one basis per position required");
    for (const auto& b : bases)
        if (b.size() != bases.front().size()) throw std::invalid_argument("bases of unequal length");
}

std::vector<Decomposer> decomposers(const Field& F, const BasisVector& bases) {
    std::vector<Decomposer> out;
    out.reserve(bases.size());
    for (const auto& b : bases) out.emplace_back(F, b);
    return out;
}

}  // namespace

membership_error::membership_error(std::vector<std::size_t> pos)
    : std::runtime_error(describe_positions(pos)), positions(std::move(pos)) {}

Decomposer::Decomposer(const Field& F, const Basis& B) : F_(&F), K_(F.base()), lambda_(B.size()) {
    const unsigned m = F.m();
    const Basis full = complete_basis(F, B);
    Matrix P(K_, m, m);
    for (unsigned i = 0; i < m; ++i) {
        const auto c = F.coeffs(full[i]);
        for (unsigned j = 0; j < m; ++j) P(i, j) = c[j];
    }
    auto inv = inverse(P);
    if (!inv) throw invariant_error("Decomposer: dependent basis");
    pinv_ = inv->data();
}

bool Decomposer::coords(elem_t x, elem_t* out) const {
    const unsigned m = F_->m(), q = F_->q();
    const Field& K = *K_;
    elem_t d[32];
    for (unsigned j = 0; j < m; ++j) {
        d[j] = x % q;
        x /= q;
    }
    for (unsigned t = 0; t < m; ++t) {
        elem_t s = 0;
        for (unsigned j = 0; j < m; ++j)
            if (d[j]) s = K.add(s, K.mul(d[j], pinv_[j * m + t]));
        if (t < lambda_)
            out[t] = s;
        else if (s != 0)
            return false;
    }
    return true;
}

std::vector<elem_t> expand_vector(const Field& F, std::span<const elem_t> v, const BasisVector& bases) {
    check_bases(bases, v.size());
    const std::size_t L = bases.empty() ? 0 : bases.front().size();
    std::vector<elem_t> out(L * v.size());
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Decomposer d(F, bases[i]);
        if (!d.coords(v[i], out.data() + i * L)) bad.push_back(i);
    }
    if (!bad.empty()) throw membership_error(std::move(bad));
    return out;
}

std::vector<elem_t> squeeze_vector(const Field& F, std::span<const elem_t> w, const BasisVector& bases) {
    const std::size_t n = bases.size();
    check_bases(bases, n);
    const std::size_t L = n ? bases.front().size() : 0;
    if (w.size() != L * n) throw std::invalid_argument("squeeze_vector: length mismatch");
    std::vector<elem_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < L; ++j)
            if (w[i * L + j]) out[i] = F.add(out[i], F.mul(w[i * L + j], bases[i][j]));
    return out;
}

Matrix expand_matrix(const Matrix& M, const BasisVector& bases, const Basis& vertical) {
    const Field& F = M.field();
    check_bases(bases, M.cols());
    const std::size_t L = M.cols() ? bases.front().size() : 0;
    const auto dec = decomposers(F, bases);
    Matrix out(F.base(), M.rows() * vertical.size(), L * M.cols());
    std::vector<std::size_t> bad;
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t j = 0; j < vertical.size(); ++j) {
            elem_t* dst = out.row(r * vertical.size() + j);
            for (std::size_t c = 0; c < M.cols(); ++c)
                if (!dec[c].coords(F.mul(vertical[j], M(r, c)), dst + c * L)) bad.push_back(c);
        }
    if (!bad.empty()) {
        std::sort(bad.begin(), bad.end());
        bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
        throw membership_error(std::move(bad));
    }
    return out;
}

Matrix squeeze_matrix(const FieldPtr& F, const Matrix& W, const BasisVector& bases) {
    Matrix out(F, 0, bases.size());
    for (std::size_t r = 0; r < W.rows(); ++r) out.append_row(squeeze_vector(*F, W.row_span(r), bases));
    return out;
}

BasisVector uniform_bases(const Basis& B, std::size_t n) { return BasisVector(n, B); }

ExpandedCode expand_code(const LinearCode& C, const BasisVector& bases) {
    const Field& F = C.field();
    const Matrix E = expand_matrix(C.gen, bases, F.power_basis());
    return ExpandedCode{LinearCode::span_of(E), bases.empty() ? 0 : bases.front().size(), C.length()};
}

ExpandedCode subspace_subcode(const LinearCode& C, const BasisVector& subs) {
    const Field& F = C.field();
    const std::size_t n = C.length(), m = F.m();
    check_bases(subs, n);
    const std::size_t lambda = n ? subs.front().size() : 0;
    // Exp over completed bases has parity Exp over their duals; the subcode is
    // that code shortened at the completion coordinates.
    BasisVector duals;
    duals.reserve(n);
    for (const auto& s : subs) duals.push_back(dual_basis(F, complete_basis(F, s)));
    const LinearCode H = dual(C);
    const Matrix Hexp = expand_matrix(H.gen, duals, F.power_basis());
    const Matrix P = Hexp.remove_columns(j_set(lambda, m, n));
    return ExpandedCode{LinearCode{right_kernel(P)}, lambda, n};
}

std::vector<std::size_t> j_set(std::size_t lambda, std::size_t m, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = lambda; j < m; ++j) out.push_back(i * m + j);
    return out;
}

std::vector<std::size_t> block_columns(std::size_t block_len, const std::vector<std::size_t>& blocks) {
    std::set<std::size_t> uniq(blocks.begin(), blocks.end());
    std::vector<std::size_t> out;
    for (auto b : uniq)
        for (std::size_t j = 0; j < block_len; ++j) out.push_back(b * block_len + j);
    return out;
}

ExpandedCode block_shorten(const ExpandedCode& E, const std::vector<std::size_t>& blocks) {
    std::set<std::size_t> uniq(blocks.begin(), blocks.end());
    for (auto b : uniq)
        if (b >= E.n) throw std::out_of_range("block index out of range");
    return ExpandedCode{shorten(E.code, block_columns(E.block_len, blocks)), E.block_len, E.n - uniq.size()};
}

ExpandedCode block_puncture(const ExpandedCode& E, const std::vector<std::size_t>& blocks) {
    std::set<std::size_t> uniq(blocks.begin(), blocks.end());
    for (auto b : uniq)
        if (b >= E.n) throw std::out_of_range("block index out of range");
    return ExpandedCode{puncture(E.code, block_columns(E.block_len, blocks)), E.block_len, E.n - uniq.size()};
}

}  // namespace ssrs
