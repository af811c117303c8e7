#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "drinfeld/cache.hpp"
#include "drinfeld/serialize.hpp"

using namespace drinfeld;

namespace {

RationalFn k(const FieldPtr& F, std::int64_t c) { return RationalFn(Poly::from_ints(F, {c})); }
RationalFn rf(const FieldPtr& F, std::initializer_list<std::int64_t> c) { return RationalFn(Poly::from_ints(F, c)); }
Poly ap(const FieldPtr& F, std::initializer_list<std::int64_t> c) { return Poly::from_ints(F, c); }

std::string parse_message(const std::string& text) {
    try {
        module_from_text(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path((std::filesystem::temp_directory_path() / name).string()) { std::remove(path.c_str()); }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("field elements and polynomials round-trip") {
    auto F = Fq::make(FieldSpec::standard(3, 2));
    for (std::uint32_t i = 0; i < F->q(); ++i) {
        const FqElem a = F->element(i);
        CHECK(fq_from_json(*F, fq_to_json(*F, a), "x") == a);
        CHECK(fq_from_json(*F, Json(i), "x") == a);
    }
    CHECK_THROWS_AS(fq_from_json(*F, Json::parse("[3]"), "x"), ParseError);
    CHECK_THROWS_AS(fq_from_json(*F, Json::parse("[0,0,1]"), "x"), ParseError);
    CHECK_THROWS_AS(fq_from_json(*F, Json(9), "x"), ParseError);

    auto s = field_from_json(field_to_json(F->spec()));
    CHECK(s.p == 3);
    CHECK(s.m == 2);
    CHECK(s.modulus == F->spec().modulus);
    CHECK(field_from_json(Json(4)).m == 2);

    const Poly p = Poly::from_ints(F, {1, 0, 2, 1});
    CHECK(poly_from_json(F, poly_to_json(p), Var::theta, "p") == p);
    const RationalFn r(Poly::from_ints(F, {1, 1}), Poly::from_ints(F, {0, 0, 1}));
    CHECK(rational_from_json(F, rational_to_json(r), "r") == r);
    CHECK(rational_from_json(F, rational_to_json(rf(F, {0, 1})), "r") == rf(F, {0, 1}));
}

TEST_CASE("Laurent series round-trip") {
    auto F = Fq::make(2);
    auto s = LaurentSeries::from_fraction(ap(F, {1}), ap(F, {1, 1}), 10);
    auto j = laurent_to_json(s);
    CHECK(j["valuation"] == 1);
    CHECK(j["precision"] == 10);
    CHECK_FALSE(j.contains("ramification"));
    CHECK(laurent_from_json(F, j, "s").equal_to(s, 10));
    auto e = laurent_to_json(LaurentSeries::from_poly(ap(F, {1, 1})));
    CHECK(e["precision"].is_null());
    CHECK(laurent_from_json(F, e, "s").is_exact());

    auto F3 = Fq::make(3);
    auto w = omega(F3, 4, 6);
    auto tj = tate_to_json(w.series);
    CHECK(tj["t_precision"] == 4);
    CHECK(tj["coeffs"].size() <= 4);
    CHECK(tj["coeffs"][0]["ramification"] == 2);
}

TEST_CASE("module specs") {
    auto F = Fq::make(3);
    auto phi = make_drinfeld(F, {rf(F, {0, 1}), k(F, -1)});
    for (const auto& G : {phi, make_g_n(phi, 2), make_g_prime(phi, 1), make_wedge_tensor(phi, 1),
                          make_carlitz_tensor(F, 2, rf(F, {0, 1}))}) {
        auto H = module_from_json(module_spec_json(G));
        CHECK(H.describe() == G.describe());
        CHECK(module_hash(H) == module_hash(G));
    }
    auto C = make_custom(F, phi.phi_t.coeffs(), 2);
    auto H = module_from_json(module_spec_json(C));
    CHECK(module_hash(H) == module_hash(C));
    CHECK(module_hash(C) != module_hash(make_custom(F, phi.phi_t.coeffs(), 1)));

    auto G = module_from_text(R"({"field": 5, "type": "drinfeld", "coeffs": [[1]]})");
    CHECK(G.F->q() == 5);
    CHECK(G.tate_rank() == 1);
    auto W = module_from_text(R"({"field": {"p": 2, "m": 2}, "type": "wedge", "coeffs": [[0, 1], [[1, 0]], [1]]})");
    CHECK(W.dim() == 2);

    auto m = parse_message("{\"field\": 3,\n \"type\": \"drinfeld\",\n \"coeffs\": [[1] [2]]}");
    CHECK(m.rfind("line 3", 0) == 0);
    CHECK(parse_message(R"({"field": 3, "type": "drinfeld", "coeffs": [[1], [5]]})").find("coeffs[1]") != std::string::npos);
    CHECK(parse_message(R"({"field": 3, "type": "drinfeld", "coeffs": [[1]], "rank": 2})").rfind("rank", 0) == 0);
    CHECK(parse_message(R"({"field": 3, "type": "custom", "rank": 1, "matrices": [[[1, 2]]]})").find("matrices[0][0]") != std::string::npos);
    CHECK(parse_message(R"({"type": "drinfeld"})").find("field") != std::string::npos);
    CHECK(parse_message(R"({"field": 3, "type": "bogus", "coeffs": [[1]]})") != "");
}

TEST_CASE("local factors and the cache") {
    auto F = Fq::make(3);
    auto phi = make_drinfeld(F, {k(F, 1), k(F, -1)});
    const Poly b = ap(F, {1, 0, 1});
    auto lf = local_factor(phi, b, true);
    auto back = local_factor_from_json(F, local_factor_to_json(lf), "lf");
    CHECK(back.beta == lf.beta);
    CHECK(back.count_G == lf.count_G);
    CHECK(back.qpoly.size() == lf.qpoly.size());
    CHECK(back.c == lf.c);
    auto counts = local_factor(phi, b, false);
    CHECK(local_factor_to_json(counts)["Q"].is_null());

    TempFile tmp("drinfeld_test_cache.jsonl");
    {
        LocalFactorCache cache(F, tmp.path);
        CHECK(cache.records().empty());
        CHECK_FALSE(cache.find(phi, b).has_value());
        auto g = goss_L(phi, 2, 2, 10, &cache);
        CHECK(cache.records().size() == primes_up_to(F, 2).size());
        LocalFactorCache again(F, tmp.path);
        CHECK(again.records().size() == cache.records().size());
        auto h = goss_L(phi, 2, 2, 10, &again);
        CHECK(h.value.equal_to(g.value, 10));
        CHECK(again.records().size() == cache.records().size());
        auto found = again.find(phi, b);
        REQUIRE(found.has_value());
        CHECK(found->count_G == lf.count_G);
        // a different module never sees these records
        CHECK_FALSE(again.find(make_drinfeld(F, {k(F, 1), k(F, 1)}), b).has_value());
    }

    // corrupt Q(0) of one record and add a garbage line
    std::ifstream in(tmp.path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    in.close();
    Json bad = Json::parse(lines.back());
    const Poly victim = poly_from_json(F, bad["beta"], Var::theta, "beta");
    bad["Q"][0] = Json::parse("[[1], [1]]");
    lines.back() = bad.dump();
    lines.push_back("{not json");
    {
        std::ofstream out(tmp.path, std::ios::trunc);
        for (const auto& l : lines) out << l << "\n";
    }
    LocalFactorCache broken(F, tmp.path);
    CHECK(broken.malformed_lines() == std::vector<int>{static_cast<int>(lines.size())});
    CHECK_THROWS_AS(broken.find(phi, victim), ConsistencyError);
    CHECK_THROWS_AS(goss_L(phi, 2, 2, 10, &broken), ConsistencyError);
}

TEST_CASE("L-value JSON") {
    auto F = Fq::make(2);
    auto L = taelman_L(make_drinfeld(F, {k(F, 1)}), 3, 8);
    auto j = lvalue_to_json(L);
    CHECK(j["D"] == 3);
    CHECK(j["M"] == 8);
    CHECK(j["skipped_primes"].empty());
    CHECK(j["value"]["valuation"] == 0);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"value", "D", "M", "stabilized", "skipped_primes"});
}
