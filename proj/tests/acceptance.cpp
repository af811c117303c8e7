// One pass/fail line per acceptance criterion; exits nonzero if any fails.

#include <cstdio>

#include "drinfeld/verify.hpp"

int main() {
    drinfeld::VerifyOptions opt;
    const auto res = drinfeld::run_verify(opt);
    int failed = 0;
    for (const auto& r : res) {
        if (r.id > 0) std::printf("criterion %2d  %s  %s: %s\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        else std::printf("cache audit   %s  %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        failed += r.pass ? 0 : 1;
    }
    std::printf("%d of %zu checks passed\n", static_cast<int>(res.size()) - failed, res.size());
    return failed == 0 ? 0 : 1;
}
