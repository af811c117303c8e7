#include "drinfeld/serialize.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing '") + key + "'");
    return *it;
}

std::int64_t as_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

std::int64_t json_precision(const Json& j, const std::string& where, std::int64_t exact) {
    if (j.is_null()) return exact;
    return as_int(j, where);
}

}  // namespace

Json fq_to_json(const Fq& F, FqElem a) {
    Json j = Json::array();
    for (auto d : F.coords(a)) j.push_back(d);
    return j;
}

FqElem fq_from_json(const Fq& F, const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
        const std::int64_t v = j.get<std::int64_t>();
        if (v < 0 || v >= static_cast<std::int64_t>(F.q())) fail(where, "element index out of range");
        return F.element(static_cast<std::uint32_t>(v));
    }
    if (!j.is_array()) fail(where, "expected an array of base-p digits");
    std::vector<std::uint32_t> c;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::int64_t d = as_int(j[i], where + "[" + std::to_string(i) + "]");
        if (d < 0 || d >= static_cast<std::int64_t>(F.p())) fail(where, "digit out of range mod p");
        c.push_back(static_cast<std::uint32_t>(d));
    }
    if (c.size() > F.m()) fail(where, "more than m digits");
    return F.from_coords(c);
}

Json field_to_json(const FieldSpec& s) {
    Json j;
    j["p"] = s.p;
    j["m"] = s.m;
    j["modulus"] = s.modulus;
    return j;
}

FieldSpec field_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return FieldSpec::from_order(static_cast<std::uint32_t>(as_int(j, where)));
    const std::int64_t p = as_int(member(j, "p", where), where + ".p");
    const std::int64_t m = j.contains("m") ? as_int(j["m"], where + ".m") : 1;
    if (p < 2 || m < 1) fail(where, "p must be >= 2 and m >= 1");
    if (!j.contains("modulus") || j["modulus"].is_null())
        return FieldSpec::standard(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));
    FieldSpec s;
    s.p = static_cast<std::uint32_t>(p);
    s.m = static_cast<std::uint32_t>(m);
    const Json& mod = j["modulus"];
    if (!mod.is_array()) fail(where + ".modulus", "expected an array of residues");
    for (std::size_t i = 0; i < mod.size(); ++i) {
        const std::int64_t c = as_int(mod[i], where + ".modulus[" + std::to_string(i) + "]");
        if (c < 0) fail(where + ".modulus", "negative residue");
        s.modulus.push_back(static_cast<std::uint32_t>(c));
    }
    return s;
}

Json poly_to_json(const Poly& p) {
    Json j = Json::array();
    for (auto c : p.coeffs()) j.push_back(fq_to_json(p.fq(), c));
    return j;
}

Poly poly_from_json(const FieldPtr& F, const Json& j, Var x, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of F_q elements");
    std::vector<FqElem> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(fq_from_json(*F, j[i], where + "[" + std::to_string(i) + "]"));
    return Poly(F, c, x);
}

Json rational_to_json(const RationalFn& f) {
    if (f.is_polynomial()) return poly_to_json(f.num());
    Json j;
    j["num"] = poly_to_json(f.num());
    j["den"] = poly_to_json(f.den());
    return j;
}

RationalFn rational_from_json(const FieldPtr& F, const Json& j, const std::string& where) {
    if (j.is_object()) {
        const Poly num = poly_from_json(F, member(j, "num", where), Var::theta, where + ".num");
        const Poly den = poly_from_json(F, member(j, "den", where), Var::theta, where + ".den");
        if (den.is_zero()) fail(where + ".den", "zero denominator");
        return RationalFn(num, den);
    }
    return RationalFn(poly_from_json(F, j, Var::theta, where));
}

Json laurent_to_json(const LaurentSeries& s) {
    Json j;
    j["valuation"] = s.is_zero() ? (s.is_exact() ? Json(nullptr) : Json(s.precision())) : Json(s.valuation());
    Json c = Json::array();
    for (auto x : s.coeffs()) c.push_back(fq_to_json(s.fq(), x));
    j["coeffs"] = c;
    j["precision"] = s.is_exact() ? Json(nullptr) : Json(s.precision());
    if (s.ramification() != 1) j["ramification"] = s.ramification();
    return j;
}

LaurentSeries laurent_from_json(const FieldPtr& F, const Json& j, const std::string& where) {
    const std::int64_t prec = json_precision(member(j, "precision", where), where + ".precision", LaurentSeries::kExact);
    const int ram = j.contains("ramification") ? static_cast<int>(as_int(j["ramification"], where + ".ramification")) : 1;
    const Json& cj = member(j, "coeffs", where);
    if (!cj.is_array()) fail(where + ".coeffs", "expected an array");
    std::vector<FqElem> c;
    for (std::size_t i = 0; i < cj.size(); ++i) c.push_back(fq_from_json(*F, cj[i], where + ".coeffs[" + std::to_string(i) + "]"));
    const Json& vj = member(j, "valuation", where);
    const std::int64_t val = vj.is_null() ? prec : as_int(vj, where + ".valuation");
    if (c.empty()) return LaurentSeries::zero(F, prec, ram);
    return LaurentSeries(F, val, c, prec, ram);
}

Json tate_to_json(const TateSeries& s) {
    Json j;
    j["t_precision"] = s.t_exact() ? Json(nullptr) : Json(s.t_precision());
    Json c = Json::array();
    for (const auto& x : s.coeffs()) c.push_back(laurent_to_json(x));
    j["coeffs"] = c;
    return j;
}

Json kummer_to_json(const LaurentSeries& s) {
    Json j = Json::array();
    if (s.ramification() == 1) {
        const std::size_t q1 = s.fq().q() - 1;
        j.push_back(laurent_to_json(s));
        for (std::size_t k = 1; k < q1; ++k) j.push_back(laurent_to_json(LaurentSeries::zero(s.field(), s.precision())));
        return j;
    }
    for (const auto& c : s.kummer_components()) j.push_back(laurent_to_json(c));
    return j;
}

Json matrix_to_json(const KMat& m) {
    Json j = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m(i, k)));
        j.push_back(row);
    }
    return j;
}

Json module_to_json(const TModule& G) {
    Json j;
    j["type"] = module_type_name(G.type);
    j["field"] = field_to_json(G.F->spec());
    j["dimension"] = G.dim();
    j["rank"] = G.tate_rank();
    j["n"] = G.n;
    Json mats = Json::array();
    for (const auto& A : G.phi_t.coeffs()) mats.push_back(matrix_to_json(A));
    j["matrices"] = mats;
    return j;
}

Json module_spec_json(const TModule& G) {
    Json j;
    j["field"] = field_to_json(G.F->spec());
    j["type"] = module_type_name(G.type);
    j["rank"] = G.type == ModuleType::custom ? G.tate_rank() : G.rank;
    j["n"] = G.n;
    Json c = Json::array();
    for (const auto& a : G.a) c.push_back(rational_to_json(a));
    j["coeffs"] = c;
    if (G.type == ModuleType::carlitz_tensor) j["b"] = rational_to_json(G.b);
    if (G.type == ModuleType::custom) {
        Json mats = Json::array();
        for (const auto& A : G.phi_t.coeffs()) mats.push_back(matrix_to_json(A));
        j["matrices"] = mats;
    }
    return j;
}

TModule module_from_json(const Json& j) {
    if (!j.is_object()) fail("module", "expected an object");
    const FieldPtr F = Fq::make(field_from_json(member(j, "field", "module"), "field"));
    const Json& tj = member(j, "type", "module");
    if (!tj.is_string()) fail("type", "expected a string");
    const ModuleType type = module_type_from_name(tj.get<std::string>());
    const int n = j.contains("n") ? static_cast<int>(as_int(j["n"], "n")) : 0;
    std::vector<RationalFn> a;
    if (j.contains("coeffs")) {
        const Json& cj = j["coeffs"];
        if (!cj.is_array()) fail("coeffs", "expected an array of APoly");
        for (std::size_t i = 0; i < cj.size(); ++i) a.push_back(rational_from_json(F, cj[i], "coeffs[" + std::to_string(i) + "]"));
    }
    int rank = 0;
    if (j.contains("rank")) {
        rank = static_cast<int>(as_int(j["rank"], "rank"));
        if (rank < 1) fail("rank", "must be >= 1");
    }
    if (type == ModuleType::carlitz_tensor) {
        const RationalFn b = j.contains("b") ? rational_from_json(F, j["b"], "b") : RationalFn::one(F);
        return make_carlitz_tensor(F, n, b);
    }
    if (type == ModuleType::custom) {
        const Json& mj = member(j, "matrices", "module");
        if (!mj.is_array() || mj.empty()) fail("matrices", "expected a non-empty array of matrices");
        std::vector<KMat> mats;
        for (std::size_t i = 0; i < mj.size(); ++i) {
            const std::string w = "matrices[" + std::to_string(i) + "]";
            const Json& m = mj[i];
            if (!m.is_array() || m.empty()) fail(w, "expected a square array of rows");
            const std::size_t d = m.size();
            KMat A(F, d, d);
            for (std::size_t r = 0; r < d; ++r) {
                if (!m[r].is_array() || m[r].size() != d) fail(w + "[" + std::to_string(r) + "]", "row length differs from the dimension");
                for (std::size_t c = 0; c < d; ++c)
                    A(r, c) = rational_from_json(F, m[r][c], w + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
            }
            mats.push_back(std::move(A));
        }
        if (rank < 1) fail("rank", "custom modules need the rank of their Tate module");
        return make_custom(F, mats, rank);
    }
    if (a.empty()) fail("coeffs", "expected a_1..a_r");
    if (rank != 0 && rank != static_cast<int>(a.size()))
        fail("rank", "rank " + std::to_string(rank) + " but " + std::to_string(a.size()) + " coefficients");
    const TModule phi = make_drinfeld(F, a);
    switch (type) {
        case ModuleType::drinfeld: return phi;
        case ModuleType::g_n: return make_g_n(phi, n);
        case ModuleType::wedge: return make_wedge(phi);
        case ModuleType::wedge_tensor: return make_wedge_tensor(phi, n);
        case ModuleType::g_prime: return make_g_prime(phi, n);
        case ModuleType::g_tilde: return make_g_tilde(phi, n);
        default: break;
    }
    fail("type", "unsupported module type");
}

TModule module_from_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos > 0 ? pos - 1 : 0), '\n');
        throw ParseError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
    }
    return module_from_json(j);
}

Json lvalue_to_json(const LValue& v) {
    Json j;
    j["value"] = laurent_to_json(v.value);
    j["D"] = v.D;
    j["M"] = v.M;
    j["stabilized"] = v.stabilized;
    Json s = Json::array();
    for (const auto& b : v.skipped_primes) s.push_back(poly_to_json(b));
    j["skipped_primes"] = s;
    return j;
}

Json local_factor_to_json(const LocalFactor& lf) {
    Json j;
    j["beta"] = poly_to_json(lf.beta);
    j["count_G"] = poly_to_json(lf.count_G);
    j["count_Lie"] = poly_to_json(lf.count_Lie);
    if (lf.has_qpoly()) {
        Json q = Json::array();
        for (const auto& b : lf.qpoly) q.push_back(poly_to_json(b));
        j["Q"] = q;
        j["c"] = fq_to_json(lf.beta.fq(), lf.c);
    } else {
        j["Q"] = nullptr;
        j["c"] = nullptr;
    }
    return j;
}

LocalFactor local_factor_from_json(const FieldPtr& F, const Json& j, const std::string& where) {
    LocalFactor lf;
    lf.beta = poly_from_json(F, member(j, "beta", where), Var::theta, where + ".beta");
    lf.count_G = poly_from_json(F, member(j, "count_G", where), Var::t, where + ".count_G");
    lf.count_Lie = poly_from_json(F, member(j, "count_Lie", where), Var::t, where + ".count_Lie");
    if (j.contains("Q") && !j["Q"].is_null()) {
        const Json& q = j["Q"];
        if (!q.is_array()) fail(where + ".Q", "expected an array of APoly");
        for (std::size_t i = 0; i < q.size(); ++i) lf.qpoly.push_back(poly_from_json(F, q[i], Var::t, where + ".Q[" + std::to_string(i) + "]"));
        lf.c = fq_from_json(*F, member(j, "c", where), where + ".c");
    }
    return lf;
}

}  // namespace drinfeld
