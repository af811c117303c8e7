#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/fq.hpp"

namespace drinfeld {

// Which polynomial ring a Poly lives in: A = F_q[θ] or F_q[t].
enum class Var : std::uint8_t { theta, t };

// Dense polynomial over F_q, lowest degree first, no trailing zeros.
// Constants mix freely between the two variables; anything else must match.
class Poly {
public:
    static constexpr int kZeroDegree = -1;

    Poly() = default;
    explicit Poly(FieldPtr F, Var x = Var::theta);
    Poly(FieldPtr F, std::vector<FqElem> coeffs, Var x = Var::theta);

    static Poly constant(FieldPtr F, FqElem c, Var x = Var::theta);
    static Poly monomial(FieldPtr F, std::size_t k, Var x = Var::theta);
    static Poly variable(FieldPtr F, Var x = Var::theta) { return monomial(std::move(F), 1, x); }
    // Coefficients given as integers mod p, lowest degree first.
    static Poly from_ints(FieldPtr F, std::initializer_list<std::int64_t> c, Var x = Var::theta);
    static Poly from_ints(FieldPtr F, const std::vector<std::int64_t>& c, Var x = Var::theta);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].v == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back().v == 1; }
    FqElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FqElem{0}; }
    FqElem leading() const { return c_.empty() ? FqElem{0} : c_.back(); }
    const std::vector<FqElem>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }

    const FieldPtr& field() const { return F_; }
    const Fq& fq() const { return *F_; }
    Var var() const { return x_; }
    // Relabel θ <-> t (the map β ↦ β|θ=t and back).
    Poly substitute(Var x) const;

    Poly& operator+=(const Poly& b);
    Poly& operator-=(const Poly& b);
    Poly& operator*=(const Poly& b);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);
    friend Poly operator%(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_ && (a.is_constant() || a.x_ == b.x_); }

    Poly scaled(FqElem c) const;
    Poly monic() const;
    Poly shifted(std::size_t k) const;  // multiply by x^k
    Poly truncated(std::size_t n) const;  // keep terms of degree < n
    FqElem eval(FqElem x) const;
    // f(x^{q^j}) = f^{q^j} for j >= 0 (coefficients are fixed by the q-power map).
    Poly twist(int j) const;
    // f(x^k)
    Poly inflate(std::uint64_t k) const;

    std::string str() const;

private:
    void trim();
    void adopt(const Poly& b);

    FieldPtr F_;
    std::vector<FqElem> c_;
    Var x_ = Var::theta;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0
// Returns (g, u, v) with u a + v b = g monic.
struct XGcd {
    Poly g, u, v;
};
XGcd xgcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
Poly pow(Poly base, std::uint64_t e);
Poly powmod(Poly base, std::uint64_t e, const Poly& mod);
Poly compose(const Poly& f, const Poly& g);  // f(g)
Poly invmod(const Poly& a, const Poly& mod);
bool is_irreducible(const Poly& f);

// Monic irreducibles of degree d in the order of the base-q index
// Σ idx(c_i) q^i of the non-leading coefficients (so c_{d-1} is most significant).
std::vector<Poly> monic_irreducibles(const FieldPtr& F, int d, Var x = Var::theta);
// All monics of degree d in the same order.
std::vector<Poly> monics(const FieldPtr& F, int d, Var x = Var::theta);
// (1/d) Σ_{e|d} μ(e) q^{d/e}
std::uint64_t necklace_count(std::uint64_t q, int d);

class RationalFn {
public:
    RationalFn() = default;
    RationalFn(Poly num);  // NOLINT: polynomials embed
    RationalFn(Poly num, Poly den);

    static RationalFn zero(FieldPtr F) { return RationalFn(Poly(std::move(F))); }
    static RationalFn one(FieldPtr F) { return RationalFn(Poly::constant(F, F->one())); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    RationalFn& operator+=(const RationalFn& b);
    RationalFn& operator-=(const RationalFn& b);
    RationalFn& operator*=(const RationalFn& b);
    RationalFn& operator/=(const RationalFn& b);
    RationalFn operator-() const;
    friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
    friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
    friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
    friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
    friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RationalFn inv() const;
    RationalFn pow(std::int64_t e) const;
    RationalFn twist(int j) const;
    RationalFn scaled(FqElem c) const { return RationalFn(num_.scaled(c), den_); }
    // deg num - deg den, i.e. -valuation at infinity (undefined for zero)
    int degree() const;

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

}  // namespace drinfeld
