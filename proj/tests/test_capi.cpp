#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <drinfeld.h>

#include <cstdio>
#include <filesystem>
#include <string>

namespace {

std::string take(char* s) {
    std::string r = s ? s : "";
    drf_free_string(s);
    return r;
}

drf_field* field(unsigned p, unsigned m = 1) {
    drf_field* f = nullptr;
    REQUIRE(drf_field_new(p, m, nullptr, 0, &f) == DRF_OK);
    return f;
}

drf_module* module(const char* spec, const drf_field* f = nullptr, int n = -1) {
    drf_module* m = nullptr;
    REQUIRE(drf_module_parse(spec, f, n, &m) == DRF_OK);
    return m;
}

const char* kCarlitz = R"({"type": "drinfeld", "coeffs": [[1]]})";

}  // namespace

TEST_CASE("status names and errors") {
    CHECK(std::string(drf_status_name(DRF_OK)) == "ok");
    CHECK(std::string(drf_status_name(DRF_ECONSISTENCY)) == "consistency error");
    CHECK(std::string(drf_version()).size() > 0);
    drf_field* f = nullptr;
    CHECK(drf_field_new(4, 1, nullptr, 0, &f) != DRF_OK);
    CHECK(f == nullptr);
    CHECK(std::string(drf_last_error()).size() > 0);
    const unsigned bad_mod[] = {0, 0, 1};  // θ^2 is reducible
    CHECK(drf_field_new(2, 2, bad_mod, 3, &f) != DRF_OK);
    CHECK(drf_field_new(2, 1, nullptr, 0, nullptr) == DRF_EINVAL);

    drf_module* m = nullptr;
    CHECK(drf_module_parse("{\"field\": 3,\n \"type\": \"drinfeld\",\n \"coeffs\": [[1] [2]]}", nullptr, -1, &m) == DRF_EPARSE);
    CHECK(std::string(drf_last_error()).find("line 3") != std::string::npos);
    CHECK(drf_module_parse(R"({"field": 3, "type": "drinfeld", "coeffs": [[1]], "rank": 2})", nullptr, -1, &m) == DRF_EPARSE);
    CHECK(std::string(drf_last_error()).find("rank") != std::string::npos);
    drf_field* f2 = field(2);
    CHECK(drf_module_parse(R"({"field": 3, "type": "drinfeld", "coeffs": [[1]]})", f2, -1, &m) == DRF_EINVAL);
    CHECK(m == nullptr);
    drf_field_free(f2);
}

TEST_CASE("construct") {
    drf_field* f = field(3);
    drf_module* m = module(R"({"type": "g_n", "coeffs": [[0, 1], [2]]})", f, 1);
    char* out = nullptr;
    REQUIRE(drf_module_describe(m, DRF_FORMAT_TEXT, &out) == DRF_OK);
    const std::string text = take(out);
    CHECK(text.find("dimension: 3") != std::string::npos);
    CHECK(text.find("n: 1") != std::string::npos);
    CHECK(text.find("A_1 =") != std::string::npos);
    REQUIRE(drf_module_describe(m, DRF_FORMAT_JSON, &out) == DRF_OK);
    CHECK(take(out).rfind("{\"type\":\"g_n\"", 0) == 0);
    drf_module_free(m);
    drf_field_free(f);
}

TEST_CASE("L-values through the C API") {
    drf_field* f = field(2);
    char* out = nullptr;
    int st = -1;
    REQUIRE(drf_zeta(f, 1, 6, 15, DRF_FORMAT_JSON, &out, &st) == DRF_OK);
    const std::string z1 = take(out);
    CHECK(st == 1);
    CHECK(z1.rfind("{\"value\":", 0) == 0);
    CHECK(z1.find("\"skipped_primes\":[]") != std::string::npos);

    drf_module* C = module(kCarlitz, f);
    REQUIRE(drf_goss(C, 2, 6, 15, nullptr, DRF_FORMAT_JSON, &out, &st) == DRF_OK);
    const std::string g2 = take(out);
    REQUIRE(drf_goss(C, 2, 6, 15, nullptr, DRF_FORMAT_JSON, &out, &st) == DRF_OK);
    CHECK(take(out) == g2);  // deterministic
    REQUIRE(drf_goss(C, 3, 6, 15, nullptr, DRF_FORMAT_TEXT, &out, &st) == DRF_OK);
    const std::string g3 = take(out);
    REQUIRE(drf_zeta(f, 2, 6, 15, DRF_FORMAT_TEXT, &out, &st) == DRF_OK);
    const std::string z2 = take(out);
    // same value line
    CHECK(g3.substr(0, g3.find('\n')) == z2.substr(0, z2.find('\n')));
    CHECK(drf_goss(C, 1, 6, 15, nullptr, DRF_FORMAT_TEXT, &out, &st) == DRF_EDOMAIN);
    CHECK(drf_zeta(f, 1, 0, 15, DRF_FORMAT_TEXT, &out, &st) == DRF_EDOMAIN);

    REQUIRE(drf_taelman(C, 2, 15, nullptr, DRF_FORMAT_TEXT, &out, &st) == DRF_OK);
    CHECK(take(out).find("stabilized: false") != std::string::npos);
    CHECK(st == 0);
    drf_module_free(C);
    drf_field_free(f);
}

TEST_CASE("local factors and the cache") {
    const auto path = (std::filesystem::temp_directory_path() / "drinfeld_capi_cache.jsonl").string();
    std::remove(path.c_str());
    drf_field* f = field(3);
    drf_module* phi = module(R"({"type": "drinfeld", "coeffs": [[1], [2]]})", f);
    char* out = nullptr;
    REQUIRE(drf_local_factors(phi, 2, 1, path.c_str(), DRF_FORMAT_TEXT, &out) == DRF_OK);
    const std::string a = take(out);
    CHECK(a.find("Q = X^2 + (2)X + (t)") != std::string::npos);
    REQUIRE(drf_local_factors(phi, 2, 1, path.c_str(), DRF_FORMAT_TEXT, &out) == DRF_OK);
    CHECK(take(out) == a);
    int ok = 0;
    REQUIRE(drf_verify("cache", 0, path.c_str(), f, DRF_FORMAT_JSON, &out, &ok) == DRF_OK);
    CHECK(ok == 1);
    take(out);

    drf_module* bad = module(R"({"type": "carlitz_tensor", "n": 2, "b": [0, 1]})", f);
    REQUIRE(drf_local_factors(bad, 1, 1, nullptr, DRF_FORMAT_JSON, &out) == DRF_OK);
    CHECK(take(out).find("\"skipped\":\"bad reduction") != std::string::npos);
    drf_module_free(bad);
    drf_module_free(phi);
    drf_field_free(f);
    std::remove(path.c_str());
}

TEST_CASE("verify suites") {
    char* out = nullptr;
    int ok = 0;
    REQUIRE(drf_verify("omega", 0, nullptr, nullptr, DRF_FORMAT_TEXT, &out, &ok) == DRF_OK);
    const std::string s = take(out);
    CHECK(ok == 1);
    CHECK(s.find("PASS  criterion 1 [omega]") == 0);
    CHECK(s.find("criterion 2") == std::string::npos);
    REQUIRE(drf_verify("cache", 0, nullptr, nullptr, DRF_FORMAT_JSON, &out, &ok) == DRF_OK);
    CHECK(take(out).find("\"all_pass\":true") != std::string::npos);
    CHECK(drf_verify("nope", 0, nullptr, nullptr, DRF_FORMAT_TEXT, &out, &ok) == DRF_EINVAL);
}
