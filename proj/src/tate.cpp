#include "drinfeld/tate.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

TateSeries::TateSeries(FieldPtr F, std::vector<LaurentSeries> coeffs, int t_prec, int ram)
    : F_(std::move(F)), c_(std::move(coeffs)), T_(t_prec), ram_(ram) {
    if (T_ < 0) throw DomainError("negative t-precision");
    if (T_ != kExactT && c_.size() > static_cast<std::size_t>(T_) + 1) c_.resize(static_cast<std::size_t>(T_) + 1);
    for (const auto& c : c_)
        if (c.field() && c.ramification() != ram_) throw DomainError("Tate coefficient with wrong ramification");
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

TateSeries TateSeries::zero(FieldPtr F, int t_prec, int ram) { return TateSeries(std::move(F), {}, t_prec, ram); }

TateSeries TateSeries::polynomial(FieldPtr F, std::vector<LaurentSeries> coeffs, int ram) {
    return TateSeries(std::move(F), std::move(coeffs), kExactT, ram);
}

LaurentSeries TateSeries::coeff(std::size_t i) const {
    if (T_ != kExactT && i > static_cast<std::size_t>(T_)) throw PrecisionError("t-coefficient beyond t-precision");
    if (i < c_.size()) return c_[i];
    return LaurentSeries::zero(F_, LaurentSeries::kExact, ram_);
}

void TateSeries::check(const TateSeries& b) const {
    if (ram_ != b.ram_) throw DomainError("mixing Tate series over K_∞ and K_∞(η)");
}

TateSeries& TateSeries::operator+=(const TateSeries& b) {
    check(b);
    T_ = std::min(T_, b.T_);
    const std::size_t n = std::max(c_.size(), b.c_.size());
    std::vector<LaurentSeries> r;
    for (std::size_t i = 0; i < n; ++i) {
        if (T_ != kExactT && i > static_cast<std::size_t>(T_)) break;
        r.push_back(coeff(i) + b.coeff(i));
    }
    *this = TateSeries(F_, std::move(r), T_, ram_);
    return *this;
}

TateSeries TateSeries::operator-() const {
    TateSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

TateSeries& TateSeries::operator-=(const TateSeries& b) { return *this += -b; }

TateSeries operator*(const TateSeries& a, const TateSeries& b) {
    a.check(b);
    const int T = std::min(a.T_, b.T_);
    if (a.c_.empty() || b.c_.empty()) return TateSeries::zero(a.F_, T, a.ram_);
    std::size_t n = a.c_.size() + b.c_.size() - 1;
    if (T != TateSeries::kExactT) n = std::min(n, static_cast<std::size_t>(T) + 1);
    std::vector<LaurentSeries> r(n, LaurentSeries::zero(a.F_, LaurentSeries::kExact, a.ram_));
    for (std::size_t i = 0; i < a.c_.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) r[i + j] += a.c_[i] * b.c_[j];
    return TateSeries(a.F_, std::move(r), T, a.ram_);
}

TateSeries TateSeries::operator*(const LaurentSeries& c) const {
    TateSeries r = *this;
    for (auto& x : r.c_) x = x * c;
    return TateSeries(F_, std::move(r.c_), T_, ram_);
}

TateSeries TateSeries::twist(int j) const {
    std::vector<LaurentSeries> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(c.twist(j));
    return TateSeries(F_, std::move(r), T_, ram_);
}

TateSeries TateSeries::truncated(int t_prec) const {
    return TateSeries(F_, c_, std::min(T_, t_prec), ram_);
}

TateSeries TateSeries::truncated_theta(std::int64_t M) const {
    std::vector<LaurentSeries> r;
    for (const auto& c : c_) r.push_back(c.truncated_theta(M));
    return TateSeries(F_, std::move(r), T_, ram_);
}

TateSeries TateSeries::shift_t(int k) const {
    std::vector<LaurentSeries> r(static_cast<std::size_t>(k), LaurentSeries::zero(F_, LaurentSeries::kExact, ram_));
    r.insert(r.end(), c_.begin(), c_.end());
    return TateSeries(F_, std::move(r), T_ == kExactT ? kExactT : T_ + k, ram_);
}

TateSeries TateSeries::inverse() const {
    if (T_ == kExactT) throw PrecisionError("inverse of a polynomial in t needs a t-precision");
    if (c_.empty() || c_[0].is_zero()) throw DomainError("constant term of a Tate series inverse is zero");
    const LaurentSeries b0 = c_[0].inv();
    std::vector<LaurentSeries> b{b0};
    for (int n = 1; n <= T_; ++n) {
        LaurentSeries s = LaurentSeries::zero(F_, LaurentSeries::kExact, ram_);
        for (int i = 1; i <= n && static_cast<std::size_t>(i) < c_.size(); ++i) s += c_[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(n - i)];
        b.push_back(-(s * b0));
    }
    return TateSeries(F_, std::move(b), T_, ram_);
}

QExponent TateSeries::gauss_norm() const {
    bool any = false;
    std::int64_t best = 0;
    for (const auto& c : c_) {
        if (c.is_zero()) continue;
        if (!any || c.valuation() < best) best = c.valuation();
        any = true;
    }
    if (!any) throw DomainError("Gauss norm of a series that is zero to precision");
    return QExponent(-best, ram_);
}

LaurentSeries TateSeries::eval_at_theta() const {
    const LaurentSeries th = LaurentSeries::theta(F_, ram_);
    LaurentSeries acc = LaurentSeries::zero(F_, LaurentSeries::kExact, ram_);
    LaurentSeries thp = LaurentSeries::one(F_, ram_);
    std::vector<std::pair<std::int64_t, std::int64_t>> nonzero;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const LaurentSeries term = c_[i] * thp;
        acc += term;
        if (!term.is_zero()) nonzero.push_back({static_cast<std::int64_t>(i), term.valuation()});
        thp = thp * th;
    }
    if (T_ == kExactT) return acc;
    const std::size_t n = nonzero.size();
    // every known coefficient vanishes to precision: only the truncation bound remains
    if (n == 0) return acc;
    if (n < 3) throw ConvergenceError("eval_at_theta: fewer than three nonzero terms to certify the tail");
    const auto [i1, v1] = nonzero[n - 3];
    const auto [i3, v3] = nonzero[n - 1];
    if (v3 <= v1) throw ConvergenceError("eval_at_theta: terms are not shrinking; divergence detected");
    // linear extrapolation of the valuations from the last three nonzero terms
    const std::int64_t tail = v3 + (v3 - v1) * (static_cast<std::int64_t>(T_) + 1 - i3) / (i3 - i1);
    return acc.truncated(tail);
}

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    while (n > 0 || k > 0) {
        const std::uint64_t a = n % p, b = k % p;
        if (b > a) return 0;
        // C(a, b) mod p with a < p
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t i = 0; i < b; ++i) {
            num = num * ((a - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        // den invertible mod p
        std::uint64_t inv = 1, base = den, e = p - 2;
        while (e > 0) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        r = r * num % p * inv % p;
        n /= p;
        k /= p;
    }
    return static_cast<std::uint32_t>(r);
}

TateSeries TateSeries::hyperderivative(int j) const {
    if (j < 0) throw DomainError("negative hyperderivative order");
    if (j == 0) return *this;
    std::vector<LaurentSeries> r;
    for (std::size_t i = static_cast<std::size_t>(j); i < c_.size(); ++i) {
        const std::uint32_t b = binomial_mod_p(i, static_cast<std::uint64_t>(j), F_->p());
        r.push_back(c_[i].scaled(F_->from_int(b)));
    }
    const int T = T_ == kExactT ? kExactT : std::max(T_ - j, 0);
    if (T_ != kExactT && T_ < j) return TateSeries::zero(F_, 0, ram_);
    return TateSeries(F_, std::move(r), T, ram_);
}

bool TateSeries::equal_to(const TateSeries& b, int T, std::int64_t M) const {
    if (T_ < T || b.T_ < T) throw PrecisionError("Tate comparison beyond t-precision");
    for (int i = 0; i <= T; ++i)
        if (!coeff(static_cast<std::size_t>(i)).equal_to_theta(b.coeff(static_cast<std::size_t>(i)), M)) return false;
    return true;
}

OmegaValue omega(const FieldPtr& F, int t_prec, std::int64_t theta_prec) {
    if (t_prec < 1 || theta_prec < 1) throw DomainError("omega needs T, M >= 1");
    const std::int64_t q = F->q();
    const int e = static_cast<int>(q) - 1;
    // factor i only touches θ-valuations >= q^i: stop once q^{depth+1} >= M
    int depth = 1;
    while (ipow(q, depth + 1) < theta_prec) ++depth;
    const std::int64_t P = ipow(q, depth + 1);
    const LaurentSeries one = LaurentSeries::one(F);
    TateSeries prod(F, {one.truncated(P)}, t_prec, 1);
    for (int i = 1; i <= depth; ++i) {
        const LaurentSeries x = LaurentSeries::monomial(F, F->neg(F->one()), ipow(q, i));
        prod = prod * TateSeries::polynomial(F, {one, x});
    }
    // (-θ)^{-q/(q-1)} = η^{-q} = ϖ^q in K_∞(η)
    std::vector<LaurentSeries> c;
    for (const auto& x : prod.coeffs()) c.push_back(x.to_kummer().shifted(q).truncated(static_cast<std::int64_t>(e) * theta_prec));
    return {TateSeries(F, std::move(c), t_prec, e), depth};
}

LaurentSeries carlitz_period(const FieldPtr& F, std::int64_t theta_prec) {
    if (theta_prec < 1) throw DomainError("carlitz_period needs M >= 1");
    const std::int64_t q = F->q();
    const int e = static_cast<int>(q) - 1;
    // relative error of the truncated product is θ^{-(q^{depth+1}-1)}; |π̃| = q^{q/(q-1)} <= q^2
    int depth = 1;
    while (ipow(q, depth + 1) - 1 < theta_prec + 2) ++depth;
    const std::int64_t P = ipow(q, depth + 1) - 1;
    LaurentSeries prod = LaurentSeries::one(F).truncated(P);
    for (int i = 1; i <= depth; ++i) {
        const std::int64_t k = ipow(q, i) - 1;
        // (1 - θ^{-k})^{-1} = Σ θ^{-k n}
        std::vector<FqElem> g(static_cast<std::size_t>(P), FqElem{0});
        for (std::int64_t n = 0; n * k < P; ++n) g[static_cast<std::size_t>(n * k)] = F->one();
        prod = prod * LaurentSeries(F, 0, std::move(g), P);
    }
    // θ η = -η^q = -ϖ^{-q}
    const LaurentSeries lead = LaurentSeries::monomial(F, F->neg(F->one()), -q, e);
    return (lead * prod.to_kummer()).truncated(static_cast<std::int64_t>(e) * theta_prec);
}

}  // namespace drinfeld
