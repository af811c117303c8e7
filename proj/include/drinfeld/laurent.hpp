#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/fq.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

// Exponent e of a norm q^e.
struct QExponent {
    std::int64_t num = 0;
    std::int64_t den = 1;
    QExponent() = default;
    QExponent(std::int64_t n, std::int64_t d = 1);
    friend bool operator==(const QExponent&, const QExponent&) = default;
    friend bool operator<(const QExponent& a, const QExponent& b) { return a.num * b.den < b.num * a.den; }
    std::string str() const;
};

// Truncated Laurent series Σ_{k >= v} c_k ϖ^k known modulo ϖ^M.
//
// With ramification e = 1 the uniformizer is ϖ = 1/θ and this is an element of
// K_∞ = F_q((1/θ)). With e = q-1 it is an element of K_∞(η), η^{q-1} = -θ, in the
// uniformizer ϖ = 1/η, so θ = -ϖ^{-(q-1)}. Exact values carry precision kExact.
class LaurentSeries {
public:
    static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

    LaurentSeries() = default;
    LaurentSeries(FieldPtr F, std::int64_t val, std::vector<FqElem> coeffs, std::int64_t prec, int ram = 1);

    static LaurentSeries zero(FieldPtr F, std::int64_t prec = kExact, int ram = 1);
    static LaurentSeries one(FieldPtr F, int ram = 1);
    static LaurentSeries monomial(FieldPtr F, FqElem c, std::int64_t k, int ram = 1);
    static LaurentSeries theta(FieldPtr F, int ram = 1);
    // η (ramified case only; for q = 2 this is θ)
    static LaurentSeries eta(FieldPtr F);
    static LaurentSeries from_poly(const Poly& f, int ram = 1);
    // prec is in ϖ-units of the target ramification
    static LaurentSeries from_rational(const RationalFn& f, std::int64_t prec, int ram = 1);
    // num/den without reducing the fraction first
    static LaurentSeries from_fraction(const Poly& num, const Poly& den, std::int64_t prec, int ram = 1);

    const FieldPtr& field() const { return F_; }
    const Fq& fq() const { return *F_; }
    int ramification() const { return ram_; }
    std::int64_t valuation() const { return val_; }
    std::int64_t precision() const { return prec_; }
    // largest M with the value known modulo θ^{-M}
    std::int64_t theta_precision() const;
    bool is_exact() const { return prec_ >= kExact; }
    bool is_zero() const { return c_.empty(); }
    bool is_exact_zero() const { return c_.empty() && is_exact(); }
    FqElem coeff(std::int64_t k) const;
    FqElem leading() const { return c_.empty() ? FqElem{0} : c_[0]; }
    const std::vector<FqElem>& coeffs() const { return c_; }
    // |x| = q^{-v/e}; zero-to-precision reports the bound q^{-M/e}
    QExponent norm() const;
    bool is_one_unit() const;

    LaurentSeries& operator+=(const LaurentSeries& b);
    LaurentSeries& operator-=(const LaurentSeries& b);
    LaurentSeries operator-() const;
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inv(); }
    LaurentSeries& operator*=(const LaurentSeries& b) { return *this = *this * b; }
    // Identical representation (value and precision).
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) = default;

    // Inverse; exact inputs that are not monomials need a target precision cap.
    LaurentSeries inv(std::optional<std::int64_t> cap = std::nullopt) const;
    LaurentSeries pow(std::int64_t e, std::optional<std::int64_t> cap = std::nullopt) const;
    LaurentSeries scaled(FqElem c) const;
    LaurentSeries shifted(std::int64_t k) const;  // multiply by ϖ^k
    LaurentSeries truncated(std::int64_t prec) const;  // precision min(current, prec)
    LaurentSeries truncated_theta(std::int64_t M) const { return truncated(M * ram_); }
    LaurentSeries monic() const;
    // x -> x^{q^j}; negative j needs every exponent divisible by q^{-j}
    LaurentSeries twist(int j) const;

    // a ≡ b mod ϖ^prec; throws PrecisionError if either side is not known that far
    bool equal_to(const LaurentSeries& b, std::int64_t prec) const;
    bool equal_to_theta(const LaurentSeries& b, std::int64_t M) const { return equal_to(b, M * ram_); }

    // K_∞ -> K_∞(η) embedding (ramification 1 -> q-1)
    LaurentSeries to_kummer() const;
    // K_∞(η) element as Σ_k f_k η^k, k = 0..q-2, each f_k in K_∞
    std::vector<LaurentSeries> kummer_components() const;
    static LaurentSeries from_kummer_components(const std::vector<LaurentSeries>& f);
    // the K_∞ element, if there is no η-content to precision
    LaurentSeries project_to_kinf() const;

    // Polynomial part Σ_{k<=0} c_k θ^{-k} (ramification 1).
    Poly polynomial_part(Var x = Var::theta) const;

    std::string str() const;

private:
    void normalize();
    void check_compatible(const LaurentSeries& b) const;

    FieldPtr F_;
    std::int64_t val_ = kExact;
    std::vector<FqElem> c_;
    std::int64_t prec_ = kExact;
    int ram_ = 1;
};

struct Reconstruction {
    bool ok = false;
    RationalFn value;
    // on failure: the best approximant matched the input through θ^{-(residual_valuation-1)}
    std::int64_t residual_valuation = 0;
};

// Monic-denominator rational function of degree <= dmax matching s to its full precision.
Reconstruction rational_reconstruct(const LaurentSeries& s, int dmax);

}  // namespace drinfeld
