// Command-line front end over the C API.
//
// Exit status: 0 success, 1 an L-value did not stabilize or a verify check failed,
// 2 usage or parse error, 3 computation error.

#include <drinfeld.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnstable = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCompute = 3;

const char* kCarlitz = R"({"type": "drinfeld", "coeffs": [[1]]})";

struct Config {
    std::string command;
    std::optional<unsigned> q, p, m;
    std::vector<unsigned> modulus;
    std::optional<std::string> module;
    std::optional<int> n;
    int max_deg = 6;
    long prec = 15;
    int t_prec = 12;
    std::string format = "text";
    std::string cache;
    std::string suite = "all";
    bool no_q = false;
};

struct FieldDeleter {
    void operator()(drf_field* f) const { drf_field_free(f); }
};
struct ModuleDeleter {
    void operator()(drf_module* m) const { drf_module_free(m); }
};
using FieldHandle = std::unique_ptr<drf_field, FieldDeleter>;
using ModuleHandle = std::unique_ptr<drf_module, ModuleDeleter>;

class Failure {
public:
    Failure(int code, std::string msg) : code_(code), msg_(std::move(msg)) {}
    int code() const { return code_; }
    const std::string& message() const { return msg_; }

private:
    int code_;
    std::string msg_;
};

[[noreturn]] void raise(drf_status s) {
    const int code = (s == DRF_EINVAL || s == DRF_EPARSE) ? kExitUsage : kExitCompute;
    throw Failure(code, std::string(drf_status_name(s)) + ": " + drf_last_error());
}

void check(drf_status s) {
    if (s != DRF_OK) raise(s);
}

// q = p^m with p prime, or nullopt
std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned q) {
    if (q < 2) return std::nullopt;
    unsigned p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    unsigned m = 0;
    while (q % p == 0) {
        q /= p;
        ++m;
    }
    if (q != 1) return std::nullopt;
    return std::make_pair(p, m);
}

// Field from --q / --p / --m / --modulus; nullptr when none was given.
FieldHandle field_from_flags(const Config& c) {
    if (!c.q && !c.p && !c.m && c.modulus.empty()) return nullptr;
    unsigned p = 0, m = 1;
    if (c.q) {
        auto pm = prime_power(*c.q);
        if (!pm) throw Failure(kExitUsage, "--q must be a prime power");
        p = pm->first;
        m = pm->second;
        if ((c.p && *c.p != p) || (c.m && *c.m != m)) throw Failure(kExitUsage, "--q disagrees with --p/--m");
    } else {
        if (!c.p) throw Failure(kExitUsage, "--m and --modulus need --p (or use --q)");
        p = *c.p;
        m = c.m.value_or(1);
    }
    if (!c.modulus.empty() && c.modulus.size() != m + 1)
        throw Failure(kExitUsage, "--modulus needs m+1 = " + std::to_string(m + 1) + " coefficients, lowest degree first");
    drf_field* f = nullptr;
    check(drf_field_new(p, m, c.modulus.empty() ? nullptr : c.modulus.data(), c.modulus.size(), &f));
    return FieldHandle(f);
}

// --module is a path to a JSON file or inline JSON.
std::string module_text(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') return arg;
    throw Failure(kExitUsage, "--module: no such file and not inline JSON: " + arg);
}

FieldHandle default_field() {
    drf_field* f = nullptr;
    check(drf_field_new(2, 1, nullptr, 0, &f));
    return FieldHandle(f);
}

// Without --module the Carlitz module, over F_2 unless a field is given.
ModuleHandle load_module(const Config& c, const drf_field* field, bool default_n) {
    FieldHandle f2;
    if (!c.module && !field) {
        f2 = default_field();
        field = f2.get();
    }
    const std::string text = c.module ? module_text(*c.module) : std::string(kCarlitz);
    drf_module* m = nullptr;
    check(drf_module_parse(text.c_str(), field, default_n && c.n ? *c.n : -1, &m));
    return ModuleHandle(m);
}

drf_format format_of(const Config& c) { return c.format == "json" ? DRF_FORMAT_JSON : DRF_FORMAT_TEXT; }

int emit(char* s) {
    std::fputs(s, stdout);
    drf_free_string(s);
    return kExitOk;
}

int run(const Config& c) {
    const drf_format fmt = format_of(c);
    FieldHandle field = field_from_flags(c);
    const char* cache = c.cache.empty() ? nullptr : c.cache.c_str();
    char* out = nullptr;
    int flag = 0;
    if (c.command == "construct") {
        ModuleHandle m = load_module(c, field.get(), true);
        check(drf_module_describe(m.get(), fmt, &out));
        return emit(out);
    }
    if (c.command == "zeta") {
        if (c.module) throw Failure(kExitUsage, "zeta takes a field (--q or --p/--m), not --module");
        if (!field) field = default_field();
        check(drf_zeta(field.get(), c.n.value_or(1), c.max_deg, c.prec, fmt, &out, &flag));
        emit(out);
        return flag ? kExitOk : kExitUnstable;
    }
    if (c.command == "taelman") {
        ModuleHandle m = load_module(c, field.get(), true);
        check(drf_taelman(m.get(), c.max_deg, c.prec, cache, fmt, &out, &flag));
        emit(out);
        return flag ? kExitOk : kExitUnstable;
    }
    if (c.command == "goss") {
        if (!c.n) throw Failure(kExitUsage, "goss needs --n (the L-function argument)");
        ModuleHandle m = load_module(c, field.get(), false);
        check(drf_goss(m.get(), *c.n, c.max_deg, c.prec, cache, fmt, &out, &flag));
        emit(out);
        return flag ? kExitOk : kExitUnstable;
    }
    if (c.command == "localfactor") {
        ModuleHandle m = load_module(c, field.get(), true);
        check(drf_local_factors(m.get(), c.max_deg, c.no_q ? 0 : 1, cache, fmt, &out));
        return emit(out);
    }
    if (c.command == "verify") {
        check(drf_verify(c.suite.c_str(), c.t_prec, cache, field.get(), fmt, &out, &flag));
        emit(out);
        return flag ? kExitOk : kExitUnstable;
    }
    throw Failure(kExitUsage, "unknown command " + c.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drinfeld module L-values: zeta sums, Taelman and Goss Euler products, local factors."};
    app.set_version_flag("--version", std::string(drf_version()));
    app.require_subcommand(1);
    app.fallthrough();

    Config c;
    auto add_field = [&](CLI::App* s) {
        s->add_option("--q", c.q, "field order q = p^m (standard modulus)")->check(CLI::PositiveNumber);
        s->add_option("--p", c.p, "field characteristic")->check(CLI::PositiveNumber);
        s->add_option("--m", c.m, "extension degree over F_p")->check(CLI::PositiveNumber);
        s->add_option("--modulus", c.modulus, "defining polynomial of F_q over F_p, m+1 residues lowest degree first")
            ->delimiter(',');
    };
    auto add_module = [&](CLI::App* s) {
        s->add_option("--module", c.module, "module spec: JSON file path or inline JSON (default: Carlitz)");
    };
    auto add_format = [&](CLI::App* s) {
        s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    };
    auto add_precision = [&](CLI::App* s) {
        s->add_option("--max-deg", c.max_deg, "degree cutoff D")->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--prec", c.prec, "θ-precision M")->check(CLI::PositiveNumber)->capture_default_str();
    };
    auto add_cache = [&](CLI::App* s) { s->add_option("--cache", c.cache, "local-factor cache file (JSON lines)"); };

    auto* construct = app.add_subcommand("construct", "print the matrices A_0..A_m of φ(t)");
    add_field(construct);
    add_module(construct);
    construct->add_option("--n", c.n, "twist n when the spec has none")->check(CLI::NonNegativeNumber);
    add_format(construct);

    auto* zeta = app.add_subcommand("zeta", "ζ_A(n) by the direct sum over monic a");
    add_field(zeta);
    zeta->add_option("--n", c.n, "argument n (default 1)")->check(CLI::PositiveNumber);
    add_precision(zeta);
    add_format(zeta);

    auto* taelman = app.add_subcommand("taelman", "Taelman L-value as an Euler product");
    add_field(taelman);
    add_module(taelman);
    taelman->add_option("--n", c.n, "twist n when the spec has none")->check(CLI::NonNegativeNumber);
    add_precision(taelman);
    add_format(taelman);
    add_cache(taelman);

    auto* goss = app.add_subcommand("goss", "Goss L-value L(M, n) as an Euler product over good primes");
    add_field(goss);
    add_module(goss);
    goss->add_option("--n", c.n, "argument n")->check(CLI::PositiveNumber);
    add_precision(goss);
    add_format(goss);
    add_cache(goss);

    auto* lf = app.add_subcommand("localfactor", "per-prime counts and Frobenius polynomials Q_β");
    add_field(lf);
    add_module(lf);
    lf->add_option("--n", c.n, "twist n when the spec has none")->check(CLI::NonNegativeNumber);
    lf->add_option("--max-deg", c.max_deg, "largest deg β")->check(CLI::PositiveNumber)->capture_default_str();
    lf->add_flag("--no-q", c.no_q, "counts only, skip Q_β");
    add_format(lf);
    add_cache(lf);

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--suite", c.suite, "all, omega, period, zeta, lfunc, explog or cache")
        ->check(CLI::IsMember({"all", "omega", "period", "zeta", "lfunc", "explog", "cache"}))
        ->capture_default_str();
    verify->add_option("--t-prec", c.t_prec, "t-precision T of the Ω check")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--cache", c.cache, "audit this cache file instead of a scratch file with injected faults");
    add_field(verify);
    add_format(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    for (auto* s : app.get_subcommands()) c.command = s->get_name();

    try {
        return run(c);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message() << "\n";
        return f.code();
    }
}
