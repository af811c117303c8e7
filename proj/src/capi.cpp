#include "drinfeld.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "drinfeld/cache.hpp"
#include "drinfeld/lfunc.hpp"
#include "drinfeld/serialize.hpp"
#include "drinfeld/verify.hpp"

struct drf_field {
    drinfeld::FieldPtr F;
};

struct drf_module {
    drinfeld::TModule G;
};

namespace {

using namespace drinfeld;

thread_local std::string g_last_error;

drf_status fail(drf_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

// Runs f, mapping library exceptions to status codes with context.
template <class Fn>
drf_status guarded(const char* what, Fn&& f) {
    try {
        g_last_error.clear();
        f();
        return DRF_OK;
    } catch (const ParseError& e) {
        return fail(DRF_EPARSE, std::string(what) + ": " + e.what());
    } catch (const ReductionFailure& e) {
        return fail(DRF_EREDUCTION, std::string(what) + ": " + e.what());
    } catch (const ConsistencyError& e) {
        return fail(DRF_ECONSISTENCY, std::string(what) + ": " + e.what());
    } catch (const ConvergenceError& e) {
        return fail(DRF_ECONVERGENCE, std::string(what) + ": " + e.what());
    } catch (const PrecisionError& e) {
        return fail(DRF_EPRECISION, std::string(what) + ": " + e.what());
    } catch (const DomainError& e) {
        return fail(DRF_EDOMAIN, std::string(what) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DRF_EINVAL, std::string(what) + ": " + e.what());
    } catch (const std::exception& e) {
        return fail(DRF_EINTERNAL, std::string(what) + ": " + e.what());
    } catch (...) {
        return fail(DRF_EINTERNAL, std::string(what) + ": unknown failure");
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void need(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::optional<std::string> cache_arg(const char* p) {
    if (!p || !*p) return std::nullopt;
    return std::string(p);
}

std::string field_str(const Fq& F) {
    std::ostringstream os;
    os << "F_" << F.q() << " (p = " << F.p() << ", m = " << F.m() << ", modulus";
    for (auto c : F.spec().modulus) os << " " << c;
    os << ")";
    return os.str();
}

std::string coeff_list(const LaurentSeries& s) {
    Json c = Json::array();
    for (const auto& x : s.coeffs()) c.push_back(fq_to_json(s.fq(), x));
    return c.dump();
}

std::string render_lvalue(const LValue& v, drf_format fmt) {
    if (fmt == DRF_FORMAT_JSON) return lvalue_to_json(v).dump() + "\n";
    std::ostringstream os;
    os << "value: " << v.value.str() << "\n";
    os << "valuation: " << v.value.valuation() << "\n";
    os << "coefficients: " << coeff_list(v.value) << "\n";
    os << "D: " << v.D << "\n";
    os << "M: " << v.M << "\n";
    os << "stabilized: " << (v.stabilized ? "true" : "false") << "\n";
    os << "skipped_primes:";
    if (v.skipped_primes.empty()) os << " none";
    for (std::size_t i = 0; i < v.skipped_primes.size(); ++i) os << (i ? ", " : " ") << v.skipped_primes[i].str();
    os << "\n";
    return os.str();
}

std::string qpoly_str(const std::vector<Poly>& q) {
    std::string s;
    for (std::size_t i = q.size(); i-- > 0;) {
        if (q[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        const std::string c = "(" + q[i].str() + ")";
        if (i == 0) s += c;
        else s += (q[i].is_one() ? "" : c) + "X" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s.empty() ? "0" : s;
}

void check_stabilized(const LValue& v, int* stabilized) {
    if (stabilized) *stabilized = v.stabilized ? 1 : 0;
}

std::unique_ptr<LocalFactorCache> open_cache(const FieldPtr& F, const char* path) {
    auto p = cache_arg(path);
    if (!p) return nullptr;
    return std::make_unique<LocalFactorCache>(F, *p);
}

}  // namespace

extern "C" {

const char* drf_version(void) { return "1.0.0"; }

const char* drf_status_name(drf_status s) {
    switch (s) {
        case DRF_OK: return "ok";
        case DRF_EINVAL: return "invalid argument";
        case DRF_EPARSE: return "parse error";
        case DRF_EDOMAIN: return "domain error";
        case DRF_EPRECISION: return "precision error";
        case DRF_ECONVERGENCE: return "convergence error";
        case DRF_EREDUCTION: return "reduction failure";
        case DRF_ECONSISTENCY: return "consistency error";
        case DRF_EINTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* drf_last_error(void) { return g_last_error.c_str(); }

void drf_free_string(char* s) { std::free(s); }

drf_status drf_field_new(unsigned p, unsigned m, const unsigned* modulus, size_t modulus_len, drf_field** out) {
    return guarded("field", [&] {
        need(out != nullptr, "null output pointer");
        need(p >= 2 && m >= 1, "p must be >= 2 and m >= 1");
        FieldSpec s;
        if (modulus) {
            s.p = p;
            s.m = m;
            s.modulus.assign(modulus, modulus + modulus_len);
        } else {
            s = FieldSpec::standard(p, m);
        }
        *out = new drf_field{Fq::make(s)};
    });
}

void drf_field_free(drf_field* f) { delete f; }

unsigned drf_field_order(const drf_field* f) { return f ? f->F->q() : 0; }

drf_status drf_module_parse(const char* spec, const drf_field* default_field, int default_n, drf_module** out) {
    return guarded("module spec", [&] {
        need(spec != nullptr && out != nullptr, "null argument");
        const std::string text(spec);
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::parse_error&) {
            module_from_text(text);  // rethrows with the line number
        }
        if (!j.is_object()) throw ParseError("module: expected a JSON object");
        if (default_field) {
            if (!j.contains("field")) {
                j["field"] = field_to_json(default_field->F->spec());
            } else {
                const FieldSpec given = field_from_json(j["field"]);
                if (!(Fq::make(given)->spec() == default_field->F->spec()))
                    throw std::invalid_argument("the field flags disagree with the module spec's field");
            }
        }
        if (default_n >= 0 && !j.contains("n")) j["n"] = default_n;
        *out = new drf_module{module_from_json(j)};
    });
}

void drf_module_free(drf_module* m) { delete m; }

drf_status drf_module_describe(const drf_module* m, drf_format fmt, char** out) {
    return guarded("construct", [&] {
        need(m != nullptr && out != nullptr, "null argument");
        const TModule& G = m->G;
        if (fmt == DRF_FORMAT_JSON) {
            *out = dup(module_to_json(G).dump() + "\n");
            return;
        }
        std::ostringstream os;
        os << "type: " << module_type_name(G.type) << "\n";
        os << "field: " << field_str(*G.F) << "\n";
        os << "dimension: " << G.dim() << "\n";
        os << "rank: " << G.tate_rank() << "\n";
        if (G.type != ModuleType::drinfeld && G.type != ModuleType::wedge && G.type != ModuleType::custom) os << "n: " << G.n << "\n";
        for (std::size_t i = 0; i < G.phi_t.coeffs().size(); ++i) {
            const KMat& A = G.A(i);
            os << "A_" << i << " =\n";
            for (std::size_t r = 0; r < A.rows(); ++r) {
                os << "  [";
                for (std::size_t c = 0; c < A.cols(); ++c) os << (c ? ", " : "") << A(r, c).str();
                os << "]\n";
            }
        }
        *out = dup(os.str());
    });
}

drf_status drf_zeta(const drf_field* f, int n, int max_deg, long prec, drf_format fmt, char** out, int* stabilized) {
    return guarded("zeta", [&] {
        need(f != nullptr && out != nullptr, "null argument");
        const LValue v = zeta_direct(f->F, n, max_deg, prec);
        check_stabilized(v, stabilized);
        *out = dup(render_lvalue(v, fmt));
    });
}

drf_status drf_taelman(const drf_module* m, int max_deg, long prec, const char* cache_path, drf_format fmt, char** out,
                       int* stabilized) {
    return guarded("taelman", [&] {
        need(m != nullptr && out != nullptr, "null argument");
        auto cache = open_cache(m->G.F, cache_path);
        const LValue v = taelman_L(m->G, max_deg, prec, cache.get());
        check_stabilized(v, stabilized);
        *out = dup(render_lvalue(v, fmt));
    });
}

drf_status drf_goss(const drf_module* m, int n, int max_deg, long prec, const char* cache_path, drf_format fmt, char** out,
                    int* stabilized) {
    return guarded("goss", [&] {
        need(m != nullptr && out != nullptr, "null argument");
        auto cache = open_cache(m->G.F, cache_path);
        const LValue v = goss_L(m->G, n, max_deg, prec, cache.get());
        check_stabilized(v, stabilized);
        *out = dup(render_lvalue(v, fmt));
    });
}

drf_status drf_local_factors(const drf_module* m, int max_deg, int with_q, const char* cache_path, drf_format fmt, char** out) {
    return guarded("localfactor", [&] {
        need(m != nullptr && out != nullptr, "null argument");
        need(max_deg >= 1, "degree cutoff must be >= 1");
        const TModule& G = m->G;
        auto cache = open_cache(G.F, cache_path);
        Json arr = Json::array();
        std::ostringstream os;
        const std::string hash = hash_hex(module_hash(G));
        os << "module: " << hash << "\n";
        for (const auto& beta : primes_up_to(G.F, max_deg)) {
            try {
                const LocalFactor lf = local_factor(G, beta, with_q != 0, cache.get());
                arr.push_back(local_factor_to_json(lf));
                os << "β = " << beta.str() << "\n";
                os << "  count_G = " << lf.count_G.str() << "\n";
                os << "  count_Lie = " << lf.count_Lie.str() << "\n";
                if (lf.has_qpoly()) {
                    os << "  Q = " << qpoly_str(lf.qpoly) << "\n";
                    os << "  c = " << G.F->str(lf.c) << "\n";
                }
            } catch (const ReductionFailure& e) {
                Json s;
                s["beta"] = poly_to_json(beta);
                s["skipped"] = e.what();
                arr.push_back(s);
                os << "β = " << beta.str() << "\n  skipped: " << e.what() << "\n";
            }
        }
        if (fmt == DRF_FORMAT_JSON) {
            Json j;
            j["module"] = hash;
            j["max_deg"] = max_deg;
            j["primes"] = arr;
            *out = dup(j.dump() + "\n");
        } else {
            *out = dup(os.str());
        }
    });
}

drf_status drf_verify(const char* suite, int t_prec, const char* cache_path, const drf_field* cache_field, drf_format fmt,
                      char** out, int* all_pass) {
    return guarded("verify", [&] {
        need(out != nullptr, "null output pointer");
        VerifyOptions opt;
        if (suite && *suite) opt.suite = suite;
        need(t_prec >= 0, "t-precision must be >= 1");
        if (t_prec > 0) opt.t_prec = t_prec;
        if (auto p = cache_arg(cache_path)) opt.cache_path = *p;
        if (cache_field) opt.cache_field = cache_field->F->spec();
        const auto& names = verify_suites();
        if (std::find(names.begin(), names.end(), opt.suite) == names.end())
            throw std::invalid_argument("unknown suite '" + opt.suite + "'");
        const auto res = run_verify(opt);
        int passed = 0;
        for (const auto& r : res) passed += r.pass ? 1 : 0;
        const bool ok = passed == static_cast<int>(res.size());
        if (all_pass) *all_pass = ok ? 1 : 0;
        if (fmt == DRF_FORMAT_JSON) {
            Json checks = Json::array();
            for (const auto& r : res) {
                Json c;
                c["id"] = r.id;
                c["suite"] = r.suite;
                c["name"] = r.name;
                c["pass"] = r.pass;
                c["detail"] = r.detail;
                checks.push_back(c);
            }
            Json j;
            j["suite"] = opt.suite;
            j["checks"] = checks;
            j["passed"] = passed;
            j["failed"] = static_cast<int>(res.size()) - passed;
            j["all_pass"] = ok;
            *out = dup(j.dump() + "\n");
            return;
        }
        std::ostringstream os;
        for (const auto& r : res) {
            os << (r.pass ? "PASS" : "FAIL") << "  ";
            if (r.id > 0) os << "criterion " << r.id;
            else os << "cache audit";
            os << " [" << r.suite << "] " << r.name << ": " << r.detail << "\n";
        }
        os << "summary: " << passed << " passed, " << (res.size() - static_cast<std::size_t>(passed)) << " failed\n";
        *out = dup(os.str());
    });
}

}  // extern "C"
