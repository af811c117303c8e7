#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// Element of F_q. The index v = c_0 + c_1 p + ... + c_{m-1} p^{m-1} where
// (c_0, ..., c_{m-1}) are the coordinates in the basis 1, g, ..., g^{m-1}.
struct FqElem {
    std::uint32_t v = 0;
    friend constexpr bool operator==(FqElem, FqElem) = default;
    friend constexpr auto operator<=>(FqElem, FqElem) = default;
};

struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t m = 1;
    std::vector<std::uint32_t> modulus;  // m+1 residues mod p, lowest degree first, monic

    std::uint32_t q() const;

    // Fixed (Conway where tabulated) modulus for the given p, m.
    static FieldSpec standard(std::uint32_t p, std::uint32_t m);
    static FieldSpec from_order(std::uint32_t q);

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

class Fq;
using FieldPtr = std::shared_ptr<const Fq>;

class Fq {
public:
    static constexpr std::uint32_t kMaxOrder = 1u << 16;

    explicit Fq(FieldSpec spec);

    static FieldPtr make(FieldSpec spec);
    static FieldPtr make(std::uint32_t q);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }

    FqElem zero() const { return {0}; }
    FqElem one() const { return {1}; }
    FqElem element(std::uint32_t index) const { return {index}; }
    FqElem from_int(std::int64_t k) const;
    FqElem from_coords(const std::vector<std::uint32_t>& c) const;
    std::vector<std::uint32_t> coords(FqElem a) const;
    FqElem primitive() const { return {exp_[1]}; }

    FqElem add(FqElem a, FqElem b) const {
        if (p_ == 2) return {a.v ^ b.v};
        if (!add_.empty()) return {add_[a.v * q_ + b.v]};
        return add_digits(a, b);
    }
    FqElem sub(FqElem a, FqElem b) const {
        if (p_ == 2) return {a.v ^ b.v};
        return add(a, neg(b));
    }
    FqElem neg(FqElem a) const { return {neg_[a.v]}; }
    FqElem mul(FqElem a, FqElem b) const {
        if (a.v == 0 || b.v == 0) return {0};
        return {exp_[log_[a.v] + log_[b.v]]};
    }
    FqElem inv(FqElem a) const;
    FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
    FqElem pow(FqElem a, std::int64_t e) const;
    // a^{p^j}; any integer j (the p-power map is a bijection of F_q).
    FqElem frobenius_power(FqElem a, std::int64_t j) const;

    std::string str(FqElem a) const;

private:
    FqElem add_digits(FqElem a, FqElem b) const;

    FieldSpec spec_;
    std::uint32_t p_ = 2, m_ = 1, q_ = 2;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;  // length 2(q-1)
    std::vector<std::uint32_t> add_;  // q*q table when q is small
    std::vector<std::uint32_t> neg_;
};

inline bool same_field(const Fq& a, const Fq& b) { return &a == &b || a.spec() == b.spec(); }

}  // namespace drinfeld
