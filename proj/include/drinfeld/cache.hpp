#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/lfunc.hpp"

namespace drinfeld {

// FNV-1a over the canonical module description (field, type, matrices).
std::uint64_t module_hash(const TModule& G);
std::string hash_hex(std::uint64_t h);

struct CacheRecord {
    std::string module;  // hex hash
    int dim = 0;
    int weight = 0;
    LocalFactor lf;
};

// Append-only JSON-lines file of local factors, one record per line.
class LocalFactorCache {
public:
    LocalFactorCache(FieldPtr F, std::string path);

    // Latest record for (module, β); a record failing its identities raises ConsistencyError.
    std::optional<LocalFactor> find(const TModule& G, const Poly& beta) const;
    void insert(const TModule& G, const LocalFactor& lf);

    const std::vector<CacheRecord>& records() const { return records_; }
    // 1-based line numbers that did not parse as records
    const std::vector<int>& malformed_lines() const { return malformed_; }
    const std::string& path() const { return path_; }

private:
    FieldPtr F_;
    std::string path_;
    std::vector<CacheRecord> records_;
    std::vector<int> malformed_;
};

}  // namespace drinfeld
