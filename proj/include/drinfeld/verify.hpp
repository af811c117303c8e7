#pragma once

#include <string>
#include <vector>

#include "drinfeld/fq.hpp"

namespace drinfeld {

struct CheckResult {
    int id = 0;  // acceptance criterion number, 0 for the cache audit
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    // all | omega | period | zeta | lfunc | explog | cache
    std::string suite = "all";
    // cache file to audit; empty runs the audit on a scratch file with an injected fault
    std::string cache_path;
    // field of the records in cache_path
    FieldSpec cache_field = FieldSpec::standard(2, 1);
    // t-precision of the Ω check
    int t_prec = 12;
};

const std::vector<std::string>& verify_suites();
// Runs the checks of the selected suite in criterion order; seeds are fixed.
std::vector<CheckResult> run_verify(const VerifyOptions& opt);

}  // namespace drinfeld
