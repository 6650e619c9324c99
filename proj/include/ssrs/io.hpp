// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ssrs/attack.hpp"
#include "ssrs/scheme.hpp"

namespace ssrs {

struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat text record:
//   key value
//   matrix NAME          followed by "rows cols q m" and the rows
//   list NAME LEN        followed by LEN integers on one line
// Keys, matrices and lists keep insertion order, so write -> read -> write
// is a fixed point.
class Record {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }
    void set_matrix(const std::string& name, Matrix M);
    void set_list(const std::string& name, std::vector<std::uint64_t> v);

    std::optional<std::string> get(const std::string& key) const;
    std::string require(const std::string& key) const;
    std::uint64_t require_uint(const std::string& key) const;
    const Matrix& matrix(const std::string& name) const;
    const std::vector<std::uint64_t>& list(const std::string& name) const;
    bool has_matrix(const std::string& name) const;

    std::string to_text() const;
    static Record parse(const std::string& text);

private:
    std::vector<std::pair<std::string, std::string>> fields_;
    std::vector<std::pair<std::string, Matrix>> matrices_;
    std::vector<std::pair<std::string, std::vector<std::uint64_t>>> lists_;
};

std::string read_file(const std::string& path);
// Writes to a temporary sibling and renames it over the target.
void write_file_atomic(const std::string& path, const std::string& data);

void put_params(Record& r, const SchemeParams& P);
SchemeParams get_params(const Record& r);
SchemeKind get_scheme(const Record& r);

Record ssrs_public_record(const SchemeParams& P, const Matrix& G_pub);
Record ssrs_secret_record(const SsrsKeyPair& kp);
SsrsKeyPair ssrs_secret_from(const Record& r);

Record xgrs_public_record(const XgrsKeyPair& kp);
Record xgrs_secret_record(const XgrsKeyPair& kp);
XgrsKeyPair xgrs_secret_from(const Record& r);

// Public code of either scheme as an expanded code over GF(q).
ExpandedCode public_code_from(const Record& r);

Record ciphertext_record(SchemeKind kind, const SchemeParams& P, const std::vector<elem_t>& c,
                         std::size_t plaintext_bytes);
Record recovered_key_record(const RecoveredKey& rk);
RecoveredKey recovered_key_from(const Record& r);

}  // namespace ssrs
