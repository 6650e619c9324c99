// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ssrs/expansion.hpp"
#include "ssrs/grs.hpp"
#include "ssrs/twisted.hpp"

namespace ssrs {

struct decrypt_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SchemeKind { ssrs, xgrs };

// Throws parameter_error when the parameters do not define a scheme instance.
void check_params(const SchemeParams& P, SchemeKind kind);

struct SsrsKeyPair {
    SchemeParams params;
    FieldPtr F;              // GF(q^m)
    Matrix G_pub;            // over GF(q), reduced row echelon form
    std::vector<elem_t> x;   // support of the parent RS code
    BasisVector subs;        // lambda-element basis per position
};

SsrsKeyPair ssrs_keygen(const SchemeParams& P, Rng& rng);
// Public code of a random parent with random subspaces (distinguisher bait).
ExpandedCode random_parent_public(const SchemeParams& P, Rng& rng);
// Exactly t nonzero lambda-blocks, each uniform nonzero.
std::vector<elem_t> random_block_error(const Field& K, std::size_t n, std::size_t lambda, std::size_t t, Rng& rng);
std::vector<elem_t> ssrs_encrypt(const Matrix& G_pub, std::span<const elem_t> message, const SchemeParams& P,
                                 Rng& rng);
std::vector<elem_t> ssrs_decrypt(const SsrsKeyPair& kp, std::span<const elem_t> c);
// Decoding part of decryption: the codeword of the public code nearest to c.
std::vector<elem_t> ssrs_nearest_codeword(const SsrsKeyPair& kp, std::span<const elem_t> c);

struct XgrsKeyPair {
    SchemeParams params;
    FieldPtr F;
    Matrix H_pub;                               // m(n-k) x lambda n over GF(q), systematic
    std::vector<elem_t> x, y;                   // secret GRS code
    elem_t gamma = 0;                           // power basis generator
    std::vector<std::vector<std::size_t>> L;    // punctured in-block positions, sorted
    std::vector<Matrix> Q;                      // lambda x lambda, invertible
    // Derived from the secret parts.
    Matrix H_sec;  // parity of GRS_k(x, y) as [I | P]
    Matrix S_inv;  // first m(n-k) columns of the unreduced public parity matrix
};

XgrsKeyPair xgrs_keygen(const SchemeParams& P, Rng& rng);
// Recomputes H_sec, H_pub and S_inv; false if the punctured matrix has no
// systematic form.
bool xgrs_derive(XgrsKeyPair& kp);
std::vector<elem_t> xgrs_encrypt(const Matrix& H_pub, std::span<const elem_t> y);
std::vector<elem_t> xgrs_decrypt(const XgrsKeyPair& kp, std::span<const elem_t> c);
ExpandedCode xgrs_public_code(const Matrix& H_pub, std::size_t lambda);
// Equivalent SSRS description of an XGRS key. basis_i = y_i^-1 (B_gamma
// without L_i) Q_i; the transposed-inverse variant is kept for comparison.
SsrsKeyPair xgrs_to_ssrs(const XgrsKeyPair& kp, bool transposed_inverse = false);

// Public key size in bits: m(n-k)(lambda n - m(n-k)) log2 q.
double public_key_bits(const SchemeParams& P);
std::size_t packed_row_bytes(std::size_t cols, unsigned q);
// Row-by-row base-q packing of the part right of the identity block.
std::vector<std::uint8_t> pack_nonsystematic(const Matrix& H_pub);
Matrix unpack_nonsystematic(std::span<const std::uint8_t> bytes, std::size_t rows, std::size_t total_cols,
                            FieldPtr K);

// Plaintext bytes <-> message vectors. A 0x01 sentinel byte is prepended so
// leading zero bytes survive; the resulting integer must fit the capacity.
std::vector<elem_t> ssrs_encode_plaintext(std::span<const std::uint8_t> bytes, unsigned q, std::size_t len);
std::vector<std::uint8_t> ssrs_decode_plaintext(std::span<const elem_t> msg, unsigned q);
std::vector<elem_t> xgrs_encode_plaintext(std::span<const std::uint8_t> bytes, const SchemeParams& P);
std::vector<std::uint8_t> xgrs_decode_plaintext(std::span<const elem_t> y, const SchemeParams& P);

}  // namespace ssrs
