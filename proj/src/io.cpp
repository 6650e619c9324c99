// SPDX-License-Identifier: Apache-2.0
#include "ssrs/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ssrs {

namespace {

template <class V>
auto find_named(V& vec, const std::string& name) {
    return std::find_if(vec.begin(), vec.end(), [&](const auto& p) { return p.first == name; });
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw format_error("bad integer for " + what + ": '" + s + "'");
    }
    if (pos != s.size()) throw format_error("bad integer for " + what + ": '" + s + "'");
    return v;
}

std::vector<std::uint64_t> to_list(const std::vector<elem_t>& v) { return {v.begin(), v.end()}; }

std::vector<elem_t> to_elems(const std::vector<std::uint64_t>& v, elem_t bound, const std::string& what) {
    std::vector<elem_t> out;
    out.reserve(v.size());
    for (auto e : v) {
        if (e >= bound) throw format_error(what + ": entry out of range");
        out.push_back(static_cast<elem_t>(e));
    }
    return out;
}

std::vector<std::uint64_t> flatten(const BasisVector& bases) {
    std::vector<std::uint64_t> out;
    for (const auto& b : bases) out.insert(out.end(), b.begin(), b.end());
    return out;
}

BasisVector unflatten(const std::vector<std::uint64_t>& v, std::size_t n, std::size_t len, elem_t bound) {
    if (v.size() != n * len) throw format_error("bases: wrong entry count");
    BasisVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].resize(len);
        for (std::size_t j = 0; j < len; ++j) {
            if (v[i * len + j] >= bound) throw format_error("bases: entry out of range");
            out[i][j] = static_cast<elem_t>(v[i * len + j]);
        }
    }
    return out;
}

const char* scheme_name(SchemeKind k) { return k == SchemeKind::ssrs ? "ssrs" : "xgrs"; }

}  // namespace

void Record::set(const std::string& key, const std::string& value) {
    if (key.empty() || key.find_first_of(" \n") != std::string::npos || key == "matrix" || key == "list")
        throw std::invalid_argument("record: bad key '" + key + "'");
    if (value.find('\n') != std::string::npos) throw std::invalid_argument("record: value contains a newline");
    auto it = find_named(fields_, key);
    if (it != fields_.end())
        it->second = value;
    else
        fields_.emplace_back(key, value);
}

void Record::set_matrix(const std::string& name, Matrix M) {
    auto it = find_named(matrices_, name);
    if (it != matrices_.end())
        it->second = std::move(M);
    else
        matrices_.emplace_back(name, std::move(M));
}

void Record::set_list(const std::string& name, std::vector<std::uint64_t> v) {
    auto it = find_named(lists_, name);
    if (it != lists_.end())
        it->second = std::move(v);
    else
        lists_.emplace_back(name, std::move(v));
}

std::optional<std::string> Record::get(const std::string& key) const {
    auto it = find_named(fields_, key);
    if (it == fields_.end()) return std::nullopt;
    return it->second;
}

std::string Record::require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw format_error("missing field '" + key + "'");
    return *v;
}

std::uint64_t Record::require_uint(const std::string& key) const { return parse_uint(require(key), key); }

const Matrix& Record::matrix(const std::string& name) const {
    auto it = find_named(matrices_, name);
    if (it == matrices_.end()) throw format_error("missing matrix '" + name + "'");
    return it->second;
}

bool Record::has_matrix(const std::string& name) const { return find_named(matrices_, name) != matrices_.end(); }

const std::vector<std::uint64_t>& Record::list(const std::string& name) const {
    auto it = find_named(lists_, name);
    if (it == lists_.end()) throw format_error("missing list '" + name + "'");
    return it->second;
}

std::string Record::to_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : fields_) os << k << ' ' << v << '\n';
    for (const auto& [name, v] : lists_) {
        os << "list " << name << ' ' << v.size() << '\n';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
        os << '\n';
    }
    for (const auto& [name, M] : matrices_) {
        os << "matrix " << name << '\n';
        write_matrix(os, M);
    }
    return os.str();
}

Record Record::parse(const std::string& text) {
    Record r;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto sp = line.find(' ');
        const std::string key = line.substr(0, sp);
        const std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
        if (key == "matrix") {
            if (rest.empty()) throw format_error("matrix without a name");
            try {
                r.set_matrix(rest, read_matrix(is));
            } catch (const std::runtime_error& e) {
                throw format_error(rest + ": " + e.what());
            }
            std::getline(is, line);  // rest of the last row
        } else if (key == "list") {
            std::istringstream ls(rest);
            std::string name;
            std::size_t len;
            if (!(ls >> name >> len)) throw format_error("bad list header '" + line + "'");
            std::vector<std::uint64_t> v(len);
            for (auto& e : v)
                if (!(is >> e)) throw format_error("list " + name + ": truncated");
            std::getline(is, line);
            r.set_list(name, std::move(v));
        } else {
            if (sp == std::string::npos) throw format_error("field without a value: '" + line + "'");
            r.set(key, rest);
        }
    }
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& data) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename onto " + path);
    }
}

void put_params(Record& r, const SchemeParams& P) {
    r.set("q", P.q);
    r.set("m", P.m);
    r.set("lambda", P.lambda);
    r.set("n", P.n);
    r.set("k", P.k);
}

SchemeParams get_params(const Record& r) {
    SchemeParams P;
    P.q = static_cast<unsigned>(r.require_uint("q"));
    P.m = static_cast<unsigned>(r.require_uint("m"));
    P.lambda = static_cast<unsigned>(r.require_uint("lambda"));
    P.n = r.require_uint("n");
    P.k = r.require_uint("k");
    return P;
}

SchemeKind get_scheme(const Record& r) {
    const std::string s = r.require("scheme");
    if (s == "ssrs") return SchemeKind::ssrs;
    if (s == "xgrs") return SchemeKind::xgrs;
    throw format_error("unknown scheme '" + s + "'");
}

Record ssrs_public_record(const SchemeParams& P, const Matrix& G_pub) {
    Record r;
    r.set("kind", "public-key");
    r.set("scheme", "ssrs");
    put_params(r, P);
    r.set_matrix("G_pub", G_pub);
    return r;
}

Record ssrs_secret_record(const SsrsKeyPair& kp) {
    Record r = ssrs_public_record(kp.params, kp.G_pub);
    r.set("kind", "secret-key");
    r.set_list("x", to_list(kp.x));
    r.set_list("bases", flatten(kp.subs));
    return r;
}

SsrsKeyPair ssrs_secret_from(const Record& r) {
    if (r.require("kind") != "secret-key" || get_scheme(r) != SchemeKind::ssrs)
        throw format_error("not an SSRS secret key");
    SsrsKeyPair kp;
    kp.params = get_params(r);
    check_params(kp.params, SchemeKind::ssrs);
    kp.F = make_field(kp.params.q, kp.params.m);
    kp.G_pub = r.matrix("G_pub");
    kp.x = to_elems(r.list("x"), kp.F->size(), "x");
    if (kp.x.size() != kp.params.n) throw format_error("x: wrong length");
    kp.subs = unflatten(r.list("bases"), kp.params.n, kp.params.lambda, kp.F->size());
    return kp;
}

Record xgrs_public_record(const XgrsKeyPair& kp) {
    Record r;
    r.set("kind", "public-key");
    r.set("scheme", "xgrs");
    put_params(r, kp.params);
    r.set_matrix("H_pub", kp.H_pub);
    return r;
}

Record xgrs_secret_record(const XgrsKeyPair& kp) {
    Record r = xgrs_public_record(kp);
    r.set("kind", "secret-key");
    r.set("gamma", kp.gamma);
    r.set_list("x", to_list(kp.x));
    r.set_list("y", to_list(kp.y));
    std::vector<std::uint64_t> L, Q;
    for (const auto& Li : kp.L) L.insert(L.end(), Li.begin(), Li.end());
    for (const auto& Qi : kp.Q) Q.insert(Q.end(), Qi.data().begin(), Qi.data().end());
    r.set_list("L", std::move(L));
    r.set_list("Q", std::move(Q));
    return r;
}

XgrsKeyPair xgrs_secret_from(const Record& r) {
    if (r.require("kind") != "secret-key" || get_scheme(r) != SchemeKind::xgrs)
        throw format_error("not an XGRS secret key");
    XgrsKeyPair kp;
    kp.params = get_params(r);
    const SchemeParams& P = kp.params;
    check_params(P, SchemeKind::xgrs);
    kp.F = make_field(P.q, P.m);
    const FieldPtr K = kp.F->base();
    kp.gamma = static_cast<elem_t>(r.require_uint("gamma"));
    if (kp.gamma >= kp.F->size() || kp.F->degree(kp.gamma) != P.m) throw format_error("gamma is not a generator");
    kp.x = to_elems(r.list("x"), kp.F->size(), "x");
    kp.y = to_elems(r.list("y"), kp.F->size(), "y");
    if (kp.x.size() != P.n || kp.y.size() != P.n) throw format_error("x, y: wrong length");
    const std::size_t nl = P.m - P.lambda;
    const auto& L = r.list("L");
    if (L.size() != P.n * nl) throw format_error("L: wrong entry count");
    kp.L.assign(P.n, {});
    for (std::size_t i = 0; i < P.n; ++i)
        for (std::size_t j = 0; j < nl; ++j) {
            if (L[i * nl + j] >= P.m) throw format_error("L: entry out of range");
            kp.L[i].push_back(L[i * nl + j]);
        }
    const auto& Q = r.list("Q");
    const std::size_t ll = std::size_t{P.lambda} * P.lambda;
    if (Q.size() != P.n * ll) throw format_error("Q: wrong entry count");
    for (std::size_t i = 0; i < P.n; ++i) {
        Matrix Qi(K, P.lambda, P.lambda);
        for (std::size_t e = 0; e < ll; ++e) {
            if (Q[i * ll + e] >= P.q) throw format_error("Q: entry out of range");
            Qi(e / P.lambda, e % P.lambda) = static_cast<elem_t>(Q[i * ll + e]);
        }
        kp.Q.push_back(std::move(Qi));
    }
    if (!xgrs_derive(kp)) throw format_error("secret key has no systematic public form");
    if (!(kp.H_pub == r.matrix("H_pub"))) throw format_error("stored public matrix does not match the secret key");
    return kp;
}

ExpandedCode public_code_from(const Record& r) {
    const SchemeParams P = get_params(r);
    if (get_scheme(r) == SchemeKind::ssrs) {
        const Matrix& G = r.matrix("G_pub");
        if (G.cols() != P.lambda * P.n || G.field().m() != 1 || G.field().q() != P.q)
            throw format_error("G_pub: wrong shape");
        return ExpandedCode{LinearCode::span_of(G), P.lambda, P.n};
    }
    const Matrix& H = r.matrix("H_pub");
    if (H.cols() != P.lambda * P.n || H.field().m() != 1 || H.field().q() != P.q)
        throw format_error("H_pub: wrong shape");
    return xgrs_public_code(H, P.lambda);
}

Record ciphertext_record(SchemeKind kind, const SchemeParams& P, const std::vector<elem_t>& c,
                         std::size_t plaintext_bytes) {
    Record r;
    r.set("kind", "ciphertext");
    r.set("scheme", scheme_name(kind));
    put_params(r, P);
    r.set("plaintext_bytes", plaintext_bytes);
    r.set_list("c", to_list(c));
    return r;
}

Record recovered_key_record(const RecoveredKey& rk) {
    Record r;
    r.set("kind", "recovered-key");
    r.set("scheme", "ssrs");
    put_params(r, rk.params);
    r.set("valid", rk.valid ? "1" : "0");
    r.set("not_attackable", rk.not_attackable ? "1" : "0");
    r.set("stage", rk.stage.empty() ? "none" : rk.stage);
    if (!rk.error.empty()) r.set("error", rk.error);
    r.set("shorten_blocks", rk.shorten_blocks);
    r.set("runs", rk.runs);
    r.set("candidates", rk.candidates);
    r.set_list("x", to_list(rk.x));
    r.set_list("bases", flatten(rk.bases));
    return r;
}

RecoveredKey recovered_key_from(const Record& r) {
    if (r.require("kind") != "recovered-key") throw format_error("not a recovered key");
    RecoveredKey rk;
    rk.params = get_params(r);
    const FieldPtr F = make_field(rk.params.q, rk.params.m);
    rk.valid = r.require("valid") == "1";
    rk.not_attackable = r.require("not_attackable") == "1";
    rk.stage = r.require("stage");
    rk.error = r.get("error").value_or("");
    rk.shorten_blocks = r.require_uint("shorten_blocks");
    rk.runs = r.require_uint("runs");
    rk.candidates = r.require_uint("candidates");
    rk.x = to_elems(r.list("x"), F->size(), "x");
    const auto& b = r.list("bases");
    if (!b.empty()) rk.bases = unflatten(b, rk.params.n, rk.params.lambda, F->size());
    return rk;
}

}  // namespace ssrs
