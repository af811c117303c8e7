#pragma once

#include <climits>
#include <cstdint>
#include <vector>

#include "drinfeld/laurent.hpp"

namespace drinfeld {

// Truncated power series Σ c_i t^i with Laurent coefficients, known modulo t^{T+1}.
// All coefficients share one ramification (K_∞ or K_∞(η)).
class TateSeries {
public:
    static constexpr int kExactT = INT_MAX;

    TateSeries() = default;
    TateSeries(FieldPtr F, std::vector<LaurentSeries> coeffs, int t_prec, int ram = 1);
    static TateSeries zero(FieldPtr F, int t_prec, int ram = 1);
    // exact polynomial in t
    static TateSeries polynomial(FieldPtr F, std::vector<LaurentSeries> coeffs, int ram = 1);

    const FieldPtr& field() const { return F_; }
    int ramification() const { return ram_; }
    int t_precision() const { return T_; }
    bool t_exact() const { return T_ == kExactT; }
    // number of stored coefficients; coefficients past size() are exact zeros
    std::size_t size() const { return c_.size(); }
    LaurentSeries coeff(std::size_t i) const;
    const std::vector<LaurentSeries>& coeffs() const { return c_; }

    TateSeries& operator+=(const TateSeries& b);
    TateSeries& operator-=(const TateSeries& b);
    TateSeries operator-() const;
    friend TateSeries operator+(TateSeries a, const TateSeries& b) { return a += b; }
    friend TateSeries operator-(TateSeries a, const TateSeries& b) { return a -= b; }
    friend TateSeries operator*(const TateSeries& a, const TateSeries& b);
    TateSeries operator*(const LaurentSeries& c) const;

    TateSeries twist(int j) const;
    TateSeries truncated(int t_prec) const;
    TateSeries truncated_theta(std::int64_t M) const;
    TateSeries shift_t(int k) const;  // multiply by t^k
    // multiplicative inverse as a power series in t (constant term must be nonzero)
    TateSeries inverse() const;

    // max |c_i| over the known coefficients
    QExponent gauss_norm() const;
    // Σ c_i θ^i; precision = min(partial-sum precision, geometric tail estimate from the
    // last three nonzero terms). Throws ConvergenceError when the terms do not shrink.
    LaurentSeries eval_at_theta() const;
    // ∂_t^j, binomials reduced mod p
    TateSeries hyperderivative(int j) const;

    // all coefficients through t^T agree modulo θ^{-M}
    bool equal_to(const TateSeries& b, int T, std::int64_t M) const;

private:
    void check(const TateSeries& b) const;

    FieldPtr F_;
    std::vector<LaurentSeries> c_;
    int T_ = kExactT;
    int ram_ = 1;
};

// C(n, k) mod p by Lucas' theorem.
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

struct OmegaValue {
    TateSeries series;  // over K_∞(η)
    int product_depth = 0;
};

// Ω(t) = (-θ)^{-q/(q-1)} Π_{i>=1} (1 - t/θ^{q^i}) modulo t^{T+1} and θ^{-M}.
OmegaValue omega(const FieldPtr& F, int t_prec, std::int64_t theta_prec);

// π̃ = θ (-θ)^{1/(q-1)} Π_{i>=1} (1 - θ^{1-q^i})^{-1} modulo θ^{-M}, in K_∞(η).
LaurentSeries carlitz_period(const FieldPtr& F, std::int64_t theta_prec);

}  // namespace drinfeld
