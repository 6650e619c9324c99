// SPDX-License-Identifier: Apache-2.0
#include "ssrs/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "ssrs/attack.hpp"
#include "ssrs/io.hpp"
#include "ssrs/rng.hpp"
#include "ssrs/scheme.hpp"

namespace ssrs {

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct stage_error : std::runtime_error {
    stage_error(std::string stage, const std::string& msg) : std::runtime_error(msg), stage(std::move(stage)) {}
    std::string stage;
};

// ExperimentConfig: everything a command may read from the command line.
struct Config {
    std::string scheme = "ssrs";
    unsigned q = 13, m = 3, lambda = 2;
    std::size_t n = 120, k = 50;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::string out, key, in, parent = "rs", row = "all";
    std::size_t shorten = 0;
    bool shorten_set = false;
    bool slow = false, restricted = false, sampled = false;
};

SchemeParams params_of(const Config& c) { return SchemeParams{c.q, c.m, c.lambda, c.n, c.k}; }

SchemeKind scheme_of(const std::string& s) {
    if (s == "ssrs") return SchemeKind::ssrs;
    if (s == "xgrs") return SchemeKind::xgrs;
    throw usage_error("--scheme must be ssrs or xgrs");
}

std::vector<std::uint8_t> as_bytes(const std::string& s) { return {s.begin(), s.end()}; }

Record load_record(const std::string& path) {
    try {
        return Record::parse(read_file(path));
    } catch (const std::exception& e) {
        throw stage_error("read", e.what());
    }
}

void print_timings(std::ostream& out, const std::vector<std::pair<std::string, double>>& t) {
    for (const auto& [stage, sec] : t)
        out << "time " << stage << ' ' << std::fixed << std::setprecision(3) << sec << "s\n";
    out.unsetf(std::ios::fixed);
}

int cmd_keygen(const Config& c, std::ostream& out) {
    const SchemeParams P = params_of(c);
    const SchemeKind kind = scheme_of(c.scheme);
    try {
        check_params(P, kind);
    } catch (const parameter_error& e) {
        throw usage_error(e.what());
    }
    if (c.out.empty()) throw usage_error("--out PREFIX is required");
    Rng rng = Rng(c.seed).derive(stage::keygen);
    if (c.parent == "random") {
        if (kind != SchemeKind::ssrs) throw usage_error("--parent random is only defined for ssrs");
        const ExpandedCode E = random_parent_public(P, rng);
        Record r = ssrs_public_record(P, E.gen());
        r.set("parent", "random");
        write_file_atomic(c.out + ".pub", r.to_text());
        out << "public_dim " << E.dim() << '\n';
        return exit_code::ok;
    }
    if (c.parent != "rs") throw usage_error("--parent must be rs or random");
    if (kind == SchemeKind::ssrs) {
        const SsrsKeyPair kp = ssrs_keygen(P, rng);
        write_file_atomic(c.out + ".pub", ssrs_public_record(P, kp.G_pub).to_text());
        write_file_atomic(c.out + ".sec", ssrs_secret_record(kp).to_text());
        out << "public_dim " << kp.G_pub.rows() << '\n';
    } else {
        const XgrsKeyPair kp = xgrs_keygen(P, rng);
        write_file_atomic(c.out + ".pub", xgrs_public_record(kp).to_text());
        write_file_atomic(c.out + ".sec", xgrs_secret_record(kp).to_text());
        const auto packed = pack_nonsystematic(kp.H_pub);
        write_file_atomic(c.out + ".pub.bin", std::string(packed.begin(), packed.end()));
        out << "public_key_bytes " << packed.size() << '\n';
        out << "public_key_kB " << std::fixed << std::setprecision(1) << packed.size() / 1000.0 << '\n';
        out.unsetf(std::ios::fixed);
    }
    out << "formula_kB " << std::fixed << std::setprecision(1) << public_key_bits(P) / 8000.0 << '\n';
    out.unsetf(std::ios::fixed);
    return exit_code::ok;
}

int cmd_encrypt(const Config& c, std::ostream& out) {
    if (c.key.empty() || c.in.empty() || c.out.empty()) throw usage_error("encrypt needs --key, --in and --out");
    const Record r = load_record(c.key);
    const SchemeParams P = get_params(r);
    const SchemeKind kind = get_scheme(r);
    const auto bytes = as_bytes(read_file(c.in));
    Rng rng = Rng(c.seed).derive(stage::encrypt);
    std::vector<elem_t> ct;
    try {
        if (kind == SchemeKind::ssrs) {
            const Matrix& G = r.matrix("G_pub");
            const auto msg = ssrs_encode_plaintext(bytes, P.q, G.rows());
            ct = ssrs_encrypt(G, msg, P, rng);
        } else {
            const auto y = xgrs_encode_plaintext(bytes, P);
            ct = xgrs_encrypt(r.matrix("H_pub"), y);
        }
    } catch (const parameter_error& e) {
        throw stage_error("encode", e.what());
    }
    write_file_atomic(c.out, ciphertext_record(kind, P, ct, bytes.size()).to_text());
    out << "ciphertext_len " << ct.size() << '\n';
    return exit_code::ok;
}

int cmd_decrypt(const Config& c, std::ostream& out) {
    if (c.key.empty() || c.in.empty() || c.out.empty()) throw usage_error("decrypt needs --key, --in and --out");
    const Record kr = load_record(c.key);
    const Record cr = load_record(c.in);
    if (cr.require("kind") != "ciphertext") throw stage_error("read", "not a ciphertext file");
    const SchemeKind kind = get_scheme(kr);
    if (get_scheme(cr) != kind) throw stage_error("read", "ciphertext and key use different schemes");
    std::vector<std::uint8_t> bytes;
    try {
        if (kind == SchemeKind::ssrs) {
            const SsrsKeyPair kp = ssrs_secret_from(kr);
            std::vector<elem_t> c_vec;
            for (auto v : cr.list("c")) c_vec.push_back(static_cast<elem_t>(v));
            bytes = ssrs_decode_plaintext(ssrs_decrypt(kp, c_vec), kp.params.q);
        } else {
            const XgrsKeyPair kp = xgrs_secret_from(kr);
            std::vector<elem_t> c_vec;
            for (auto v : cr.list("c")) c_vec.push_back(static_cast<elem_t>(v));
            bytes = xgrs_decode_plaintext(xgrs_decrypt(kp, c_vec), kp.params);
        }
    } catch (const decrypt_error& e) {
        throw stage_error("decrypt", e.what());
    } catch (const std::invalid_argument& e) {
        throw stage_error("decrypt", e.what());
    }
    write_file_atomic(c.out, std::string(bytes.begin(), bytes.end()));
    out << "plaintext_bytes " << bytes.size() << '\n';
    return exit_code::ok;
}

int cmd_distinguish(const Config& c, std::ostream& out) {
    if (c.key.empty()) throw usage_error("distinguish needs --key");
    const Record r = load_record(c.key);
    const SchemeParams P = get_params(r);
    const ExpandedCode pub = public_code_from(r);
    DistinguishOptions opt;
    if (c.shorten_set) opt.shorten_blocks = c.shorten;
    opt.seed = Rng(c.seed).derive(stage::distinguish).next();
    opt.twisted.sampled = c.sampled;
    opt.twisted.seed = opt.seed;
    const DistinguisherReport rep = distinguish(pub, P, opt);
    Record rec;
    rec.set("kind", "distinguisher-report");
    put_params(rec, P);
    const std::string text = rec.to_text() + rep.to_text();
    if (!c.out.empty()) write_file_atomic(c.out, text);
    out << text;
    return exit_code::ok;
}

int cmd_attack(const Config& c, std::ostream& out) {
    if (c.key.empty() || c.out.empty()) throw usage_error("attack needs --key and --out");
    const Record r = load_record(c.key);
    const SchemeParams P = get_params(r);
    if (P.n > 400 && !c.slow) throw usage_error("n > 400 runs for hours; pass --slow to proceed");
    const ExpandedCode pub = public_code_from(r);
    AttackOptions opt;
    opt.seed = c.seed;
    opt.mode = c.restricted ? BasisSearch::restricted : BasisSearch::structure;
    if (c.shorten_set) opt.shorten_blocks = c.shorten;
    opt.twisted.sampled = c.sampled || P.n > 400;
    opt.twisted.seed = Rng(c.seed).derive(stage::attack).next();
    if (c.trials) opt.validate_trials = c.trials;
    opt.log = [&out](const std::string& s) { out << "log " << s << '\n' << std::flush; };
    const RecoveredKey rk = attack(pub, P, opt);
    write_file_atomic(c.out, recovered_key_record(rk).to_text());
    print_timings(out, rk.timings);
    out << "stage " << rk.stage << '\n' << "valid " << (rk.valid ? 1 : 0) << '\n';
    if (rk.not_attackable) {
        out << "not-attackable: " << rk.error << '\n';
        return exit_code::not_attackable;
    }
    if (!rk.valid) throw stage_error(rk.stage, rk.error);
    return exit_code::ok;
}

struct TableRow {
    const char* id;
    SchemeParams P;
    bool random_parent;
    std::size_t expected;
};

int cmd_reproduce(const Config& c, std::ostream& out) {
    const std::vector<TableRow> rows = {
        {"row1", {7, 3, 2, 120, 55}, false, 327},
        {"row2", {7, 3, 2, 120, 55}, true, 360},
        {"row3", {7, 5, 3, 160, 75}, false, 745},
        {"row4", {7, 5, 3, 160, 75}, true, 800},
    };
    const std::size_t trials = c.trials ? c.trials : 20;
    Record rep;
    rep.set("kind", "reproduce-report");
    rep.set("trials", trials);
    bool any = false;
    std::size_t total_mismatch = 0;
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        const TableRow& row = rows[ri];
        if (c.row != "all" && c.row != row.id) continue;
        any = true;
        std::size_t mismatches = 0;
        std::map<std::size_t, std::size_t> seen;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng = Rng(c.seed).derive(stage::reproduce).derive(ri * 1000003 + t);
            const ExpandedCode E = row.random_parent
                                       ? random_parent_public(row.P, rng)
                                       : ExpandedCode{LinearCode{ssrs_keygen(row.P, rng).G_pub}, row.P.lambda, row.P.n};
            const std::size_t d = shortened_twisted_square(E, row.P.m).dim();
            ++seen[d];
            if (d != row.expected) ++mismatches;
        }
        total_mismatch += mismatches;
        const std::string p = row.id;
        rep.set(p + "_params", row.P.describe());
        rep.set(p + "_parent", row.random_parent ? "random" : "rs");
        rep.set(p + "_expected", row.expected);
        std::ostringstream os;
        for (const auto& [d, cnt] : seen) os << (os.tellp() ? " " : "") << d << 'x' << cnt;
        rep.set(p + "_observed", os.str());
        rep.set(p + "_mismatches", mismatches);
        out << row.id << ' ' << row.P.describe() << ' ' << (row.random_parent ? "random" : "rs") << " expected "
            << row.expected << " observed " << os.str() << " mismatches " << mismatches << '\n'
            << std::flush;
    }
    if (!any) throw usage_error("--row must be all, row1, row2, row3 or row4");
    rep.set("mismatches", total_mismatch);
    if (!c.out.empty()) write_file_atomic(c.out, rep.to_text());
    return exit_code::ok;
}

void add_params(CLI::App* sub, Config& c) {
    sub->add_option("--scheme", c.scheme, "ssrs or xgrs");
    sub->add_option("--q", c.q, "base field size");
    sub->add_option("--m", c.m, "extension degree");
    sub->add_option("--lambda", c.lambda, "subspace dimension");
    sub->add_option("--n", c.n, "code length");
    sub->add_option("--k", c.k, "parent dimension");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Subspace subcode schemes and their twisted-square attack"};
    app.require_subcommand(1);
    Config c;
    auto seed_opt = [&](CLI::App* s) { s->add_option("--seed", c.seed, "seed for every random choice"); };

    auto* keygen = app.add_subcommand("keygen", "generate a key pair (PREFIX.pub, PREFIX.sec)");
    add_params(keygen, c);
    seed_opt(keygen);
    keygen->add_option("--out", c.out, "output prefix");
    keygen->add_option("--parent", c.parent, "rs, or random for a non-structured public code");

    auto* encrypt = app.add_subcommand("encrypt", "encrypt a file");
    seed_opt(encrypt);
    encrypt->add_option("--key", c.key, "public key file");
    encrypt->add_option("--in", c.in, "plaintext file");
    encrypt->add_option("--out", c.out, "ciphertext file");

    auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
    decrypt->add_option("--key", c.key, "secret key file");
    decrypt->add_option("--in", c.in, "ciphertext file");
    decrypt->add_option("--out", c.out, "plaintext file");

    auto* dist = app.add_subcommand("distinguish", "run the twisted-square distinguisher");
    seed_opt(dist);
    dist->add_option("--key", c.key, "public key file");
    dist->add_option("--out", c.out, "report file");
    dist->add_option("--shorten", c.shorten, "number of blocks to shorten")->each([&](const std::string&) {
        c.shorten_set = true;
    });
    dist->add_flag("--sampled", c.sampled, "products of random codewords for the square");

    auto* atk = app.add_subcommand("attack", "recover an equivalent secret key");
    seed_opt(atk);
    atk->add_option("--key", c.key, "public key file");
    atk->add_option("--out", c.out, "recovered key file");
    atk->add_option("--trials", c.trials, "validation ciphertexts");
    atk->add_option("--shorten", c.shorten, "number of blocks to shorten")->each([&](const std::string&) {
        c.shorten_set = true;
    });
    atk->add_flag("--slow", c.slow, "allow full-scale parameters");
    atk->add_flag("--restricted-bases", c.restricted, "search power bases only");
    atk->add_flag("--sampled", c.sampled, "products of random codewords for the square");

    auto* repro = app.add_subcommand("reproduce", "twisted-square dimension table");
    seed_opt(repro);
    repro->add_option("--trials", c.trials, "trials per row");
    repro->add_option("--row", c.row, "all, row1, row2, row3 or row4");
    repro->add_option("--out", c.out, "report file");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << '\n';
        return exit_code::usage;
    }

    try {
        if (*keygen) return cmd_keygen(c, out);
        if (*encrypt) return cmd_encrypt(c, out);
        if (*decrypt) return cmd_decrypt(c, out);
        if (*dist) return cmd_distinguish(c, out);
        if (*atk) return cmd_attack(c, out);
        if (*repro) return cmd_reproduce(c, out);
    } catch (const usage_error& e) {
        err << "usage: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const stage_error& e) {
        err << "error in " << e.stage << ": " << e.what() << '\n';
        return exit_code::stage_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::stage_failure;
    }
    return exit_code::usage;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace ssrs
