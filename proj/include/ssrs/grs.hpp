// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssrs/matrix.hpp"

namespace ssrs {

struct GrsCode {
    FieldPtr F;
    std::vector<elem_t> x;  // support, pairwise distinct
    std::vector<elem_t> y;  // multiplier, nonzero
    std::size_t k = 0;

    std::size_t n() const { return x.size(); }
    void validate() const;
};

// Reed-Solomon code: multiplier all ones.
GrsCode rs_code(FieldPtr F, std::vector<elem_t> x, std::size_t k);
GrsCode random_grs(FieldPtr F, std::size_t n, std::size_t k, Rng& rng);
std::vector<elem_t> random_support(const Field& F, std::size_t n, Rng& rng);

// Rows (y_j x_j^i)_j for i < k.
Matrix grs_generator(const GrsCode& C);
// Multiplier of the dual code GRS_{n-k}(x, y').
std::vector<elem_t> dual_multiplier(const GrsCode& C);
Matrix grs_parity(const GrsCode& C);
std::vector<elem_t> grs_encode(const GrsCode& C, std::span<const elem_t> message);

struct DecodeResult {
    std::vector<elem_t> codeword;
    std::vector<std::size_t> error_positions;
    bool ok = false;
};
// Gao decoder up to t = floor((n-k)/2) errors.
DecodeResult decode(const GrsCode& C, std::span<const elem_t> received);

// Point of the projective line; (1:0) is infinity. Stored normalized.
struct ProjPoint {
    elem_t a = 0;
    elem_t b = 1;
    bool infinite() const { return b == 0; }
    bool operator==(const ProjPoint&) const = default;
};
ProjPoint proj_normalize(const Field& F, elem_t a, elem_t b);
ProjPoint proj_frobenius(const Field& F, ProjPoint p, unsigned j);

// Projective support of span(G) in the frame sending positions 0, 1, 2 to
// 0, 1 and infinity. Unique for a GRS code, so it can be compared across
// codes that share those three positions.
std::optional<std::vector<ProjPoint>> support_frame(const Matrix& G, std::size_t k, std::string* why = nullptr);
// Affine support from a frame: x_0 = 0, x_1 = 1 and x_2 the smallest
// canonical element that keeps every position finite.
std::optional<std::vector<elem_t>> finalize_frame(const Field& F, const std::vector<ProjPoint>& frame);
// Multiplier y with y_0 = 1 such that GRS_k(x, y) = span(G), if one exists.
std::optional<std::vector<elem_t>> recover_multiplier(const Matrix& G, const std::vector<elem_t>& x, std::size_t k);
std::optional<GrsCode> sidelnikov_shestakov(const Matrix& G, std::size_t k, std::string* why = nullptr);
// Same code with support moved by the unique Moebius map sending x[a_i] to v_i.
std::optional<GrsCode> renormalize(const GrsCode& C, const std::array<std::pair<std::size_t, elem_t>, 3>& anchors);

}  // namespace ssrs
