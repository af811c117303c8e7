#include "drinfeld/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "drinfeld/ffield.hpp"

namespace drinfeld {

namespace {

constexpr std::int64_t kExact = LaurentSeries::kExact;

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= kExact || b >= kExact) return kExact;
    return std::min(a + b, kExact);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t mod_pos(std::int64_t a, std::int64_t b) { return ((a % b) + b) % b; }

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

QExponent::QExponent(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw DomainError("zero denominator in norm exponent");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string QExponent::str() const {
    if (den == 1) return "q^" + std::to_string(num);
    return "q^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

LaurentSeries::LaurentSeries(FieldPtr F, std::int64_t val, std::vector<FqElem> coeffs, std::int64_t prec, int ram)
    : F_(std::move(F)), val_(val), c_(std::move(coeffs)), prec_(std::min(prec, kExact)), ram_(ram) {
    if (ram_ < 1) throw DomainError("ramification must be positive");
    normalize();
}

void LaurentSeries::normalize() {
    if (!is_exact()) {
        const std::int64_t keep = prec_ - val_;
        if (keep <= 0) {
            c_.clear();
        } else if (static_cast<std::int64_t>(c_.size()) > keep) {
            c_.resize(static_cast<std::size_t>(keep));
        }
    }
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].v == 0) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        val_ = prec_;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        val_ += static_cast<std::int64_t>(lead);
    }
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
}

void LaurentSeries::check_compatible(const LaurentSeries& b) const {
    if (ram_ != b.ram_) throw DomainError("mixing series over K_∞ and over K_∞(η)");
    if (F_ && b.F_ && F_ != b.F_ && !same_field(*F_, *b.F_)) throw DomainError("series over different fields");
}

LaurentSeries LaurentSeries::zero(FieldPtr F, std::int64_t prec, int ram) {
    return LaurentSeries(std::move(F), prec, {}, prec, ram);
}

LaurentSeries LaurentSeries::one(FieldPtr F, int ram) { return monomial(std::move(F), FqElem{1}, 0, ram); }

LaurentSeries LaurentSeries::monomial(FieldPtr F, FqElem c, std::int64_t k, int ram) {
    return LaurentSeries(std::move(F), k, {c}, kExact, ram);
}

LaurentSeries LaurentSeries::theta(FieldPtr F, int ram) {
    if (ram == 1) return monomial(std::move(F), FqElem{1}, -1, 1);
    const FqElem m1 = F->neg(F->one());
    return monomial(F, m1, -static_cast<std::int64_t>(ram), ram);
}

LaurentSeries LaurentSeries::eta(FieldPtr F) {
    const int ram = static_cast<int>(F->q()) - 1;
    return monomial(std::move(F), FqElem{1}, -1, ram);
}

LaurentSeries LaurentSeries::from_poly(const Poly& f, int ram) {
    if (f.is_zero()) return zero(f.field(), kExact, ram);
    std::vector<FqElem> c(f.coeffs().rbegin(), f.coeffs().rend());
    LaurentSeries s(f.field(), -f.degree(), std::move(c), kExact, 1);
    return ram == 1 ? s : s.to_kummer();
}

LaurentSeries LaurentSeries::from_rational(const RationalFn& f, std::int64_t prec, int ram) {
    return from_fraction(f.num(), f.den(), prec, ram);
}

LaurentSeries LaurentSeries::from_fraction(const Poly& num, const Poly& den, std::int64_t prec, int ram) {
    if (den.is_zero()) throw DomainError("fraction with zero denominator");
    LaurentSeries n = from_poly(num, ram);
    if (num.is_zero()) return n;
    LaurentSeries d = from_poly(den, ram);
    if (den.is_constant()) return (n * d.inv()).truncated(prec);
    return (n * d.inv(prec - n.valuation())).truncated(prec);
}

std::int64_t LaurentSeries::theta_precision() const {
    if (is_exact()) return kExact;
    return floor_div(prec_, ram_);
}

FqElem LaurentSeries::coeff(std::int64_t k) const {
    if (k >= prec_) throw PrecisionError("coefficient beyond known precision");
    if (k < val_ || k >= val_ + static_cast<std::int64_t>(c_.size())) return FqElem{0};
    return c_[static_cast<std::size_t>(k - val_)];
}

QExponent LaurentSeries::norm() const {
    if (is_exact_zero()) throw DomainError("norm of exact zero is 0");
    return QExponent(-val_, ram_);
}

bool LaurentSeries::is_one_unit() const {
    if (c_.empty()) return false;
    return val_ == 0 && c_[0].v == 1 && prec_ > 0;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& b) {
    if (!F_) return *this = b;
    if (!b.F_) return *this;
    check_compatible(b);
    const std::int64_t prec = std::min(prec_, b.prec_);
    if (b.c_.empty()) {
        prec_ = prec;
        normalize();
        return *this;
    }
    if (c_.empty()) {
        const std::int64_t p = prec;
        *this = b;
        prec_ = p;
        normalize();
        return *this;
    }
    const std::int64_t lo = std::min(val_, b.val_);
    std::int64_t hi = std::max(val_ + static_cast<std::int64_t>(c_.size()), b.val_ + static_cast<std::int64_t>(b.c_.size()));
    if (prec < kExact) hi = std::min(hi, prec);
    if (hi <= lo) {
        c_.clear();
        prec_ = prec;
        val_ = prec;
        return *this;
    }
    std::vector<FqElem> r(static_cast<std::size_t>(hi - lo), FqElem{0});
    const Fq& F = *F_;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const std::int64_t k = val_ + static_cast<std::int64_t>(i) - lo;
        if (k < hi - lo) r[static_cast<std::size_t>(k)] = c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        const std::int64_t k = b.val_ + static_cast<std::int64_t>(i) - lo;
        if (k < hi - lo) r[static_cast<std::size_t>(k)] = F.add(r[static_cast<std::size_t>(k)], b.c_[i]);
    }
    c_ = std::move(r);
    val_ = lo;
    prec_ = prec;
    normalize();
    return *this;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.c_) c = F_->neg(c);
    return r;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& b) { return *this += -b; }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    a.check_compatible(b);
    const FieldPtr& Fp = a.F_ ? a.F_ : b.F_;
    if (a.is_exact_zero() || b.is_exact_zero()) return LaurentSeries::zero(Fp, kExact, a.ram_);
    const std::int64_t prec = std::min(sat_add(a.prec_, b.val_), sat_add(b.prec_, a.val_));
    if (a.c_.empty() || b.c_.empty()) return LaurentSeries::zero(Fp, prec, a.ram_);
    const std::int64_t val = a.val_ + b.val_;
    std::int64_t len = static_cast<std::int64_t>(a.c_.size() + b.c_.size() - 1);
    if (prec < kExact) len = std::min(len, prec - val);
    if (len <= 0) return LaurentSeries::zero(Fp, prec, a.ram_);
    const Fq& F = *Fp;
    std::vector<FqElem> r(static_cast<std::size_t>(len), FqElem{0});
    const std::size_t L = r.size();
    for (std::size_t i = 0; i < a.c_.size() && i < L; ++i) {
        const FqElem ai = a.c_[i];
        if (ai.v == 0) continue;
        const std::size_t jm = std::min(b.c_.size(), L - i);
        FqElem* out = r.data() + i;
        for (std::size_t j = 0; j < jm; ++j) out[j] = F.add(out[j], F.mul(ai, b.c_[j]));
    }
    return LaurentSeries(Fp, val, std::move(r), prec, a.ram_);
}

LaurentSeries LaurentSeries::inv(std::optional<std::int64_t> cap) const {
    if (c_.empty()) throw PrecisionError("inverting a series that is zero to its precision");
    const Fq& F = *F_;
    if (is_exact() && c_.size() == 1) {
        LaurentSeries r = monomial(F_, F.inv(c_[0]), -val_, ram_);
        return cap ? r.truncated(*cap) : r;
    }
    std::int64_t target = is_exact() ? kExact : prec_ - 2 * val_;
    if (cap) target = std::min(target, *cap);
    if (target >= kExact) throw PrecisionError("inverse of an exact series needs a precision cap");
    const std::int64_t len = target + val_;
    if (len <= 0) return zero(F_, target, ram_);
    std::vector<FqElem> b(static_cast<std::size_t>(len), FqElem{0});
    const FqElem i0 = F.inv(c_[0]);
    const FqElem mi0 = F.neg(i0);
    b[0] = i0;
    for (std::size_t n = 1; n < b.size(); ++n) {
        FqElem s{0};
        const std::size_t im = std::min(n, c_.size() - 1);
        for (std::size_t i = 1; i <= im; ++i) {
            if (c_[i].v == 0) continue;
            s = F.add(s, F.mul(c_[i], b[n - i]));
        }
        b[n] = F.mul(mi0, s);
    }
    return LaurentSeries(F_, -val_, std::move(b), target, ram_);
}

LaurentSeries LaurentSeries::pow(std::int64_t e, std::optional<std::int64_t> cap) const {
    if (e < 0) return inv(cap).pow(-e, cap);
    LaurentSeries base = *this;
    LaurentSeries r = one(F_, ram_);
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return cap ? r.truncated(*cap) : r;
}

LaurentSeries LaurentSeries::scaled(FqElem c) const {
    LaurentSeries r = *this;
    if (c.v == 0) return zero(F_, is_exact() ? kExact : prec_ , ram_);
    for (auto& x : r.c_) x = F_->mul(x, c);
    return r;
}

LaurentSeries LaurentSeries::shifted(std::int64_t k) const {
    LaurentSeries r = *this;
    r.val_ = c_.empty() ? sat_add(val_, k) : val_ + k;
    r.prec_ = sat_add(prec_, k);
    return r;
}

LaurentSeries LaurentSeries::truncated(std::int64_t prec) const {
    LaurentSeries r = *this;
    if (prec < r.prec_) {
        r.prec_ = prec;
        r.normalize();
    }
    return r;
}

LaurentSeries LaurentSeries::monic() const {
    if (c_.empty()) throw PrecisionError("monic of zero");
    return scaled(F_->inv(c_[0]));
}

LaurentSeries LaurentSeries::twist(int j) const {
    if (j == 0 || !F_) return *this;
    const std::int64_t q = F_->q();
    if (j > 0) {
        const std::int64_t Q = ipow(q, j);
        LaurentSeries r;
        r.F_ = F_;
        r.ram_ = ram_;
        r.prec_ = is_exact() ? kExact : std::min(prec_ * Q, kExact);
        if (c_.empty()) {
            r.val_ = r.prec_;
            return r;
        }
        r.val_ = val_ * Q;
        r.c_.assign((c_.size() - 1) * static_cast<std::size_t>(Q) + 1, FqElem{0});
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * static_cast<std::size_t>(Q)] = c_[i];
        r.normalize();
        return r;
    }
    const std::int64_t Q = ipow(q, -j);
    LaurentSeries r;
    r.F_ = F_;
    r.ram_ = ram_;
    r.prec_ = is_exact() ? kExact : ceil_div(prec_, Q);
    if (c_.empty()) {
        r.val_ = r.prec_;
        return r;
    }
    if (mod_pos(val_, Q) != 0) throw DomainError("negative twist of a series that is not a q-th power");
    r.val_ = val_ / Q;
    r.c_.assign((c_.size() - 1) / static_cast<std::size_t>(Q) + 1, FqElem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].v == 0) continue;
        if (i % static_cast<std::size_t>(Q) != 0) throw DomainError("negative twist of a series that is not a q-th power");
        r.c_[i / static_cast<std::size_t>(Q)] = c_[i];
    }
    r.normalize();
    return r;
}

bool LaurentSeries::equal_to(const LaurentSeries& b, std::int64_t prec) const {
    check_compatible(b);
    if (prec_ < prec || b.prec_ < prec)
        throw PrecisionError("comparison beyond known precision (have " + std::to_string(std::min(prec_, b.prec_)) +
                             ", need " + std::to_string(prec) + ")");
    LaurentSeries d = *this - b;
    return d.c_.empty() || d.val_ >= prec;
}

LaurentSeries LaurentSeries::to_kummer() const {
    if (ram_ != 1) throw DomainError("to_kummer expects an element of K_∞");
    const std::int64_t e = static_cast<std::int64_t>(F_->q()) - 1;
    if (e == 1) return *this;
    LaurentSeries r;
    r.F_ = F_;
    r.ram_ = static_cast<int>(e);
    r.prec_ = is_exact() ? kExact : prec_ * e;
    if (c_.empty()) {
        r.val_ = r.prec_;
        return r;
    }
    r.val_ = val_ * e;
    r.c_.assign((c_.size() - 1) * static_cast<std::size_t>(e) + 1, FqElem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const std::int64_t n = val_ + static_cast<std::int64_t>(i);
        r.c_[i * static_cast<std::size_t>(e)] = (mod_pos(n, 2) == 1) ? F_->neg(c_[i]) : c_[i];
    }
    r.normalize();
    return r;
}

std::vector<LaurentSeries> LaurentSeries::kummer_components() const {
    const std::int64_t e = static_cast<std::int64_t>(F_->q()) - 1;
    if (ram_ != e) throw DomainError("kummer_components expects an element of K_∞(η)");
    if (e == 1) return {*this};
    std::vector<std::vector<FqElem>> comp(static_cast<std::size_t>(e));
    std::vector<std::int64_t> start(static_cast<std::size_t>(e), 0);
    std::vector<std::int64_t> prec(static_cast<std::size_t>(e), kExact);
    for (std::int64_t k = 0; k < e; ++k) {
        if (!is_exact()) prec[static_cast<std::size_t>(k)] = ceil_div(prec_ + k, e);
    }
    // ϖ^n = (-1)^j θ^{-j} η^k with n = e j - k, 0 <= k < e
    std::vector<std::vector<std::pair<std::int64_t, FqElem>>> terms(static_cast<std::size_t>(e));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].v == 0) continue;
        const std::int64_t n = val_ + static_cast<std::int64_t>(i);
        const std::int64_t k = mod_pos(-n, e);
        const std::int64_t j = (n + k) / e;
        const FqElem c = (mod_pos(j, 2) == 1) ? F_->neg(c_[i]) : c_[i];
        terms[static_cast<std::size_t>(k)].push_back({j, c});
    }
    std::vector<LaurentSeries> out;
    for (std::int64_t k = 0; k < e; ++k) {
        const auto& t = terms[static_cast<std::size_t>(k)];
        const std::int64_t pk = prec[static_cast<std::size_t>(k)];
        if (t.empty()) {
            out.push_back(zero(F_, pk, 1));
            continue;
        }
        const std::int64_t lo = t.front().first;
        std::vector<FqElem> c(static_cast<std::size_t>(t.back().first - lo + 1), FqElem{0});
        for (const auto& [j, x] : t) c[static_cast<std::size_t>(j - lo)] = x;
        out.emplace_back(F_, lo, std::move(c), pk, 1);
    }
    return out;
}

LaurentSeries LaurentSeries::from_kummer_components(const std::vector<LaurentSeries>& f) {
    if (f.empty()) throw DomainError("no Kummer components");
    const FieldPtr& F = f[0].field();
    const std::size_t e = F->q() - 1;
    if (f.size() != e) throw DomainError("expected q-1 Kummer components");
    LaurentSeries acc = zero(F, kExact, static_cast<int>(e));
    for (std::size_t k = 0; k < e; ++k) acc += f[k].to_kummer().shifted(-static_cast<std::int64_t>(k));
    return acc;
}

LaurentSeries LaurentSeries::project_to_kinf() const {
    auto comp = kummer_components();
    for (std::size_t k = 1; k < comp.size(); ++k)
        if (!comp[k].is_zero()) throw DomainError("element has genuine η-content; no projection to K_∞");
    return comp[0];
}

Poly LaurentSeries::polynomial_part(Var x) const {
    if (ram_ != 1) throw DomainError("polynomial part needs an element of K_∞");
    if (prec_ <= 0) throw PrecisionError("polynomial part not determined at this precision");
    if (c_.empty() || val_ > 0) return Poly(F_, x);
    std::vector<FqElem> c(static_cast<std::size_t>(-val_ + 1), FqElem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const std::int64_t n = val_ + static_cast<std::int64_t>(i);
        if (n > 0) break;
        c[static_cast<std::size_t>(-n)] = c_[i];
    }
    return Poly(F_, std::move(c), x);
}

std::string LaurentSeries::str() const {
    if (!F_) return "0";
    if (ram_ != 1) {
        auto comp = kummer_components();
        std::ostringstream os;
        for (std::size_t k = 0; k < comp.size(); ++k) {
            if (k) os << " + ";
            os << "(" << comp[k].str() << ")";
            if (k == 1) os << "·η";
            if (k > 1) os << "·η^" << k;
        }
        return os.str();
    }
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].v == 0) continue;
        const std::int64_t e = -(val_ + static_cast<std::int64_t>(i));
        if (!first) os << " + ";
        first = false;
        std::string cs = F_->str(c_[i]);
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
        if (e == 0) {
            os << cs;
            continue;
        }
        if (c_[i].v != 1) os << cs;
        os << "θ";
        if (e != 1) os << "^" << e;
    }
    if (!is_exact()) {
        if (!first) os << " + ";
        os << "O(θ^" << -prec_ << ")";
    } else if (first) {
        os << "0";
    }
    return os.str();
}

Reconstruction rational_reconstruct(const LaurentSeries& s, int dmax) {
    if (s.ramification() != 1) throw DomainError("rational reconstruction needs an element of K_∞");
    if (dmax < 0) throw DomainError("negative degree bound");
    const FieldPtr& Fp = s.field();
    std::int64_t M = s.precision();
    if (s.is_exact()) {
        M = (s.is_zero() ? 0 : s.valuation() + static_cast<std::int64_t>(s.coeffs().size())) + 2 * dmax + 2;
        M = std::max<std::int64_t>(M, 2 * dmax + 2);
    }
    if (M < 2 * dmax + 2) throw PrecisionError("rational reconstruction needs precision at least 2*dmax+2");
    Reconstruction out;
    if (s.is_zero()) {
        out.ok = true;
        out.value = RationalFn::zero(Fp);
        return out;
    }
    FqField f(Fp);
    auto sc = [&](std::int64_t k) { return k < M ? s.coeff(k) : FqElem{0}; };
    std::int64_t best = 0;
    for (int dd = 0; dd <= dmax; ++dd) {
        const std::int64_t neq = M - dd - 1;
        if (neq < 1) break;
        // rows j = 1..neq : Σ_{i<dd} d_i s_{j+i} = -s_{j+dd}
        auto consistent_upto = [&](std::int64_t rows, std::vector<FqElem>* sol) {
            DenseMatrix<FqField> A(f, static_cast<std::size_t>(rows), static_cast<std::size_t>(dd));
            std::vector<FqElem> b(static_cast<std::size_t>(rows));
            for (std::int64_t j = 1; j <= rows; ++j) {
                for (int i = 0; i < dd; ++i) A(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i)) = sc(j + i);
                b[static_cast<std::size_t>(j - 1)] = Fp->neg(sc(j + dd));
            }
            auto x = solve(f, A, b);
            if (x && sol) *sol = *x;
            return x.has_value();
        };
        std::vector<FqElem> sol;
        if (consistent_upto(neq, &sol)) {
            std::vector<FqElem> dc(sol);
            dc.push_back(Fp->one());
            Poly D(Fp, dc);
            LaurentSeries prod = LaurentSeries::from_poly(D) * s;
            Poly N = prod.polynomial_part();
            if (N.degree() > dmax) continue;
            out.ok = true;
            out.value = RationalFn(N, D);
            out.residual_valuation = M;
            return out;
        }
        std::int64_t lo = 0, hi = neq;  // consistent with lo rows, not with hi rows
        while (hi - lo > 1) {
            const std::int64_t mid = (lo + hi) / 2;
            if (consistent_upto(mid, nullptr)) lo = mid;
            else hi = mid;
        }
        best = std::max(best, hi + dd);
    }
    out.residual_valuation = best;
    return out;
}

}  // namespace drinfeld
