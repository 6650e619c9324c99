// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssrs/grs.hpp"
#include "ssrs/scheme.hpp"
#include "ssrs/twisted.hpp"

namespace ssrs {

// structure: per-block multiplication maps read off the systematic form.
// restricted: enumerate power bases (1, g, ..., g^(m-1)) per block.
enum class BasisSearch { structure, restricted };

struct GuessSqueezeResult {
    BasisVector bases;  // each defined up to a nonzero scalar
    std::size_t candidates = 0;
    bool ok = false;
    std::string error;
};

// E = Exp over unknown full bases of an [n, k] code over F.
GuessSqueezeResult guess_and_squeeze(const ExpandedCode& E, const FieldPtr& F, std::size_t k, BasisSearch mode,
                                     Rng& rng);

struct SupportRecovery {
    std::vector<ProjPoint> frame;  // positions 0, 1, 2 at 0, 1, infinity
    std::vector<elem_t> x;
    std::vector<elem_t> y;
    BasisVector bases;  // T = Exp over these bases of RS_k2(x)
    std::size_t candidates = 0;
    bool ok = false;
    std::string error;
};
SupportRecovery recover_support(const ExpandedCode& T, const FieldPtr& F, std::size_t k2, BasisSearch mode,
                                Rng& rng);

struct BasesRecovery {
    BasisVector bases;
    std::size_t equations = 0;
    bool ok = false;
    std::string error;
};
BasesRecovery recover_bases(const ExpandedCode& pub, const FieldPtr& F, const std::vector<elem_t>& x, std::size_t k,
                            Rng& rng);

// Frobenius twist of a frame minimizing its canonical encoding.
std::vector<ProjPoint> canonical_frobenius(const Field& F, const std::vector<ProjPoint>& frame);

struct RecoveredKey {
    SchemeParams params;
    std::vector<elem_t> x;
    BasisVector bases;
    bool valid = false;
    bool not_attackable = false;
    std::string stage;  // last stage reached, or the failing stage
    std::string error;
    std::size_t shorten_blocks = 0;
    std::size_t runs = 0;
    std::size_t candidates = 0;
    std::vector<std::pair<std::string, double>> timings;
};

struct AttackOptions {
    BasisSearch mode = BasisSearch::structure;
    std::uint64_t seed = 0;
    std::optional<std::size_t> shorten_blocks;
    bool random_windows = false;  // seeded-random shortening windows
    TwistedOptions twisted;
    std::size_t validate_trials = 10;
    std::function<void(const std::string&)> log;
};

RecoveredKey attack_low_rate(const ExpandedCode& pub, const SchemeParams& P, const AttackOptions& opt = {});
RecoveredKey attack_high_rate(const ExpandedCode& pub, const SchemeParams& P, const AttackOptions& opt = {});
// Routes on the shortening needed: none means low rate.
RecoveredKey attack(const ExpandedCode& pub, const SchemeParams& P, const AttackOptions& opt = {});

// Regenerates the public code from the key and decrypts fresh ciphertexts.
bool validate_key(const RecoveredKey& rk, const ExpandedCode& pub, std::size_t trials, Rng& rng);

}  // namespace ssrs
