#include "drinfeld/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "drinfeld/serialize.hpp"

namespace drinfeld {

std::uint64_t module_hash(const TModule& G) {
    Json j;
    j["field"] = field_to_json(G.F->spec());
    j["type"] = module_type_name(G.type);
    j["rank"] = G.tate_rank();
    Json mats = Json::array();
    for (const auto& A : G.phi_t.coeffs()) mats.push_back(matrix_to_json(A));
    j["matrices"] = mats;
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LocalFactorCache::LocalFactorCache(FieldPtr F, std::string path) : F_(std::move(F)), path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const Json j = Json::parse(line);
            CacheRecord r;
            r.module = j.at("module").get<std::string>();
            r.dim = j.at("d").get<int>();
            r.weight = j.at("w").get<int>();
            r.lf = local_factor_from_json(F_, j, "record");
            records_.push_back(std::move(r));
        } catch (const std::exception&) {
            malformed_.push_back(no);
        }
    }
}

std::optional<LocalFactor> LocalFactorCache::find(const TModule& G, const Poly& beta) const {
    const std::string key = hash_hex(module_hash(G));
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
        if (it->module != key || !(it->lf.beta == beta)) continue;
        const std::string why = local_factor_inconsistency(it->lf, it->weight, it->dim);
        if (!why.empty()) throw ConsistencyError("cache record for " + beta.str() + ": " + why);
        return it->lf;
    }
    return std::nullopt;
}

void LocalFactorCache::insert(const TModule& G, const LocalFactor& lf) {
    CacheRecord r;
    r.module = hash_hex(module_hash(G));
    r.dim = static_cast<int>(G.dim());
    r.weight = G.weight();
    r.lf = lf;
    Json j;
    j["module"] = r.module;
    j["d"] = r.dim;
    j["w"] = r.weight;
    const Json body = local_factor_to_json(lf);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    std::ofstream out(path_, std::ios::app);
    if (!out) throw DomainError("cannot append to cache file " + path_);
    out << j.dump() << "\n";
    records_.push_back(std::move(r));
}

}  // namespace drinfeld
