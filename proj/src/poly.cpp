#include "drinfeld/poly.hpp"

#include <algorithm>
#include <sstream>

namespace drinfeld {

namespace {

const char* var_name(Var x) { return x == Var::theta ? "θ" : "t"; }

std::uint64_t upow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

Poly::Poly(FieldPtr F, Var x) : F_(std::move(F)), x_(x) {}

Poly::Poly(FieldPtr F, std::vector<FqElem> coeffs, Var x) : F_(std::move(F)), c_(std::move(coeffs)), x_(x) {
    for (auto c : c_)
        if (c.v >= F_->q()) throw DomainError("coefficient outside F_q");
    trim();
}

Poly Poly::constant(FieldPtr F, FqElem c, Var x) { return Poly(std::move(F), {c}, x); }

Poly Poly::monomial(FieldPtr F, std::size_t k, Var x) {
    std::vector<FqElem> c(k + 1, FqElem{0});
    c[k] = FqElem{1};
    return Poly(std::move(F), std::move(c), x);
}

Poly Poly::from_ints(FieldPtr F, std::initializer_list<std::int64_t> c, Var x) {
    return from_ints(std::move(F), std::vector<std::int64_t>(c), x);
}

Poly Poly::from_ints(FieldPtr F, const std::vector<std::int64_t>& c, Var x) {
    std::vector<FqElem> e;
    e.reserve(c.size());
    for (auto k : c) e.push_back(F->from_int(k));
    return Poly(std::move(F), std::move(e), x);
}

void Poly::trim() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
}

void Poly::adopt(const Poly& b) {
    if (!F_) {
        F_ = b.F_;
        x_ = b.x_;
        return;
    }
    if (!b.F_) return;
    if (F_ != b.F_ && !same_field(*F_, *b.F_)) throw DomainError("polynomials over different fields");
    if (x_ != b.x_) {
        if (is_constant()) {
            x_ = b.x_;
        } else if (!b.is_constant()) {
            throw DomainError("mixing polynomials in θ and in t");
        }
    }
}

Poly Poly::substitute(Var x) const {
    Poly r = *this;
    r.x_ = x;
    return r;
}

Poly& Poly::operator+=(const Poly& b) {
    adopt(b);
    if (b.c_.empty()) return *this;
    if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), FqElem{0});
    const Fq& F = *F_;
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = F.add(c_[i], b.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& b) {
    adopt(b);
    if (b.c_.empty()) return *this;
    if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), FqElem{0});
    const Fq& F = *F_;
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = F.sub(c_[i], b.c_[i]);
    trim();
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    if (F_)
        for (auto& c : r.c_) c = F_->neg(c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r = a;
    r.adopt(b);
    r.c_.clear();
    if (a.c_.empty() || b.c_.empty()) return r;
    const Fq& F = *r.F_;
    // iterate over the sparser operand
    const Poly& s = [&]() -> const Poly& {
        std::size_t za = 0, zb = 0;
        for (auto c : a.c_) za += c.v != 0;
        for (auto c : b.c_) zb += c.v != 0;
        return za <= zb ? a : b;
    }();
    const Poly& d = (&s == &a) ? b : a;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, FqElem{0});
    for (std::size_t i = 0; i < s.c_.size(); ++i) {
        const FqElem si = s.c_[i];
        if (si.v == 0) continue;
        FqElem* out = r.c_.data() + i;
        if (si.v == 1) {
            for (std::size_t j = 0; j < d.c_.size(); ++j) out[j] = F.add(out[j], d.c_[j]);
        } else {
            for (std::size_t j = 0; j < d.c_.size(); ++j) out[j] = F.add(out[j], F.mul(si, d.c_[j]));
        }
    }
    r.trim();
    return r;
}

Poly& Poly::operator*=(const Poly& b) { return *this = *this * b; }

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly Poly::scaled(FqElem c) const {
    Poly r = *this;
    if (c.v == 0) {
        r.c_.clear();
        return r;
    }
    for (auto& x : r.c_) x = F_->mul(x, c);
    return r;
}

Poly Poly::monic() const {
    if (c_.empty()) return *this;
    return scaled(F_->inv(c_.back()));
}

Poly Poly::shifted(std::size_t k) const {
    Poly r = *this;
    if (!r.c_.empty()) r.c_.insert(r.c_.begin(), k, FqElem{0});
    return r;
}

Poly Poly::truncated(std::size_t n) const {
    Poly r = *this;
    if (r.c_.size() > n) r.c_.resize(n);
    r.trim();
    return r;
}

FqElem Poly::eval(FqElem x) const {
    FqElem acc{0};
    for (std::size_t i = c_.size(); i-- > 0;) acc = F_->add(F_->mul(acc, x), c_[i]);
    return acc;
}

Poly Poly::inflate(std::uint64_t k) const {
    if (k == 0) throw DomainError("inflate by 0");
    if (k == 1 || c_.size() <= 1) return *this;
    Poly r = *this;
    r.c_.assign((c_.size() - 1) * k + 1, FqElem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
    return r;
}

Poly Poly::twist(int j) const {
    if (j >= 0) return inflate(upow(F_ ? F_->q() : 2, static_cast<std::uint64_t>(j)));
    if (c_.size() <= 1) return *this;
    const std::uint64_t k = upow(F_->q(), static_cast<std::uint64_t>(-j));
    Poly r = *this;
    r.c_.assign((c_.size() - 1) / k + 1, FqElem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].v == 0) continue;
        if (i % k != 0) throw DomainError("negative twist of a polynomial that is not a q-power");
        r.c_[i / k] = c_[i];
    }
    return r;
}

std::string Poly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].v == 0) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = F_->str(c_[i]);
        const bool compound = cs.find('+') != std::string::npos;
        if (i == 0) {
            os << cs;
            continue;
        }
        if (c_[i].v != 1) os << (compound ? "(" + cs + ")" : cs);
        os << var_name(x_);
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    const FieldPtr& Fp = a.field() ? a.field() : b.field();
    const Fq& F = *Fp;
    const Var x = a.is_constant() ? b.var() : a.var();
    if (a.degree() < b.degree()) return {Poly(Fp, x), a};
    std::vector<FqElem> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<FqElem> quo(r.size() - db, FqElem{0});
    const FqElem il = F.inv(bc.back());
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k].v == 0) continue;
        const FqElem c = F.mul(r[k], il);
        quo[k - db] = c;
        const FqElem nc = F.neg(c);
        for (std::size_t i = 0; i <= db; ++i) {
            if (bc[i].v == 0) continue;
            r[k - db + i] = F.add(r[k - db + i], F.mul(nc, bc[i]));
        }
    }
    r.resize(db);
    return {Poly(Fp, std::move(quo), x), Poly(Fp, std::move(r), x)};
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
    const FieldPtr& F = a.field() ? a.field() : b.field();
    const Var x = a.is_constant() ? b.var() : a.var();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F, F->one(), x), s1(F, x);
    Poly t0(F, x), t1 = Poly::constant(F, F->one(), x);
    while (!r1.is_zero()) {
        auto [qq, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s = s0 - qq * s1;
        s0 = std::move(s1);
        s1 = std::move(s);
        Poly t = t0 - qq * t1;
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const FqElem il = F->inv(r0.leading());
    return {r0.scaled(il), s0.scaled(il), t0.scaled(il)};
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field() ? a.field() : b.field(), a.var());
    return (a / gcd(a, b) * b).monic();
}

Poly pow(Poly base, std::uint64_t e) {
    Poly r = Poly::constant(base.field(), base.fq().one(), base.var());
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& mod) {
    Poly r = Poly::constant(base.field(), base.fq().one(), base.var()) % mod;
    base = base % mod;
    while (e > 0) {
        if (e & 1) r = (r * base) % mod;
        e >>= 1;
        if (e) base = (base * base) % mod;
    }
    return r;
}

Poly compose(const Poly& f, const Poly& g) {
    Poly acc(f.field(), g.var());
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * g + Poly::constant(f.field(), f.coeff(i), g.var());
    return acc;
}

Poly invmod(const Poly& a, const Poly& mod) {
    XGcd e = xgcd(a % mod, mod);
    if (!e.g.is_one()) throw DomainError("polynomial not invertible modulo " + mod.str());
    return e.u % mod;
}

bool is_irreducible(const Poly& f) {
    const int d = f.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    const std::uint64_t q = f.fq().q();
    Poly x = Poly::variable(f.field(), f.var());
    Poly xp = x;
    for (int i = 1; i <= d / 2; ++i) {
        xp = powmod(xp, q, f);
        if (!gcd(f, xp - x).is_one()) return false;
    }
    return true;
}

std::vector<Poly> monics(const FieldPtr& F, int d, Var x) {
    if (d < 0) throw DomainError("negative degree");
    const std::uint64_t q = F->q();
    const std::uint64_t n = upow(q, static_cast<std::uint64_t>(d));
    std::vector<Poly> out;
    out.reserve(n);
    std::vector<FqElem> c(d + 1, FqElem{0});
    c[d] = FqElem{1};
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        std::uint64_t v = idx;
        for (int i = 0; i < d; ++i) {
            c[i] = FqElem{static_cast<std::uint32_t>(v % q)};
            v /= q;
        }
        out.emplace_back(F, c, x);
    }
    return out;
}

std::vector<Poly> monic_irreducibles(const FieldPtr& F, int d, Var x) {
    if (d < 1) throw DomainError("monic_irreducibles requires d >= 1");
    const std::uint64_t q = F->q();
    const std::uint64_t n = upow(q, static_cast<std::uint64_t>(d));
    if (n > (1ull << 26)) throw DomainError("too many monics to sieve");
    auto index_of = [&](const Poly& f) {
        std::uint64_t v = 0;
        for (int i = d; i-- > 0;) v = v * q + f.coeff(static_cast<std::size_t>(i)).v;
        return v;
    };
    std::vector<char> reducible(n, 0);
    // every reducible monic is (irreducible of degree k <= d/2) * (monic of degree d-k)
    for (int k = 1; 2 * k <= d; ++k) {
        const auto small = monic_irreducibles(F, k, x);
        const auto rest = monics(F, d - k, x);
        for (const auto& a : small)
            for (const auto& b : rest) reducible[index_of(a * b)] = 1;
    }
    std::vector<Poly> out;
    std::vector<FqElem> c(d + 1, FqElem{0});
    c[d] = FqElem{1};
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        if (reducible[idx]) continue;
        std::uint64_t v = idx;
        for (int i = 0; i < d; ++i) {
            c[i] = FqElem{static_cast<std::uint32_t>(v % q)};
            v /= q;
        }
        out.emplace_back(F, c, x);
    }
    return out;
}

std::uint64_t necklace_count(std::uint64_t q, int d) {
    auto mobius = [](int n) {
        int r = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
        if (n > 1) r = -r;
        return r;
    };
    std::int64_t s = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        s += mobius(e) * static_cast<std::int64_t>(upow(q, static_cast<std::uint64_t>(d / e)));
    }
    return static_cast<std::uint64_t>(s / d);
}

// ---- RationalFn

RationalFn::RationalFn(Poly num) : num_(std::move(num)) {
    den_ = Poly::constant(num_.field(), num_.fq().one(), num_.var());
}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    normalize();
}

void RationalFn::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(den_.field(), den_.fq().one(), den_.var());
        num_ = Poly(den_.field(), den_.var());
        return;
    }
    if (!den_.is_constant()) {
        Poly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
    const FqElem il = num_.fq().inv(den_.leading());
    num_ = num_.scaled(il);
    den_ = den_.scaled(il);
}

RationalFn& RationalFn::operator+=(const RationalFn& b) {
    if (b.is_zero()) return *this;
    if (is_zero()) return *this = b;
    if (den_ == b.den_) {
        num_ += b.num_;
    } else {
        Poly g = gcd(den_, b.den_);
        Poly bd = b.den_ / g;
        num_ = num_ * bd + b.num_ * (den_ / g);
        den_ = den_ * bd;
    }
    normalize();
    return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& b) { return *this += -b; }

RationalFn& RationalFn::operator*=(const RationalFn& b) {
    Poly g1 = gcd(num_, b.den_), g2 = gcd(b.num_, den_);
    if (num_.is_zero() || b.num_.is_zero()) {
        *this = RationalFn::zero(num_.field() ? num_.field() : b.field());
        return *this;
    }
    num_ = (num_ / g1) * (b.num_ / g2);
    den_ = (den_ / g2) * (b.den_ / g1);
    const FqElem il = num_.fq().inv(den_.leading());
    num_ = num_.scaled(il);
    den_ = den_.scaled(il);
    return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& b) { return *this *= b.inv(); }

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFn RationalFn::inv() const {
    if (is_zero()) throw DomainError("inversion of zero rational function");
    return RationalFn(den_, num_);
}

RationalFn RationalFn::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    return RationalFn(drinfeld::pow(num_, static_cast<std::uint64_t>(e)),
                      drinfeld::pow(den_, static_cast<std::uint64_t>(e)));
}

RationalFn RationalFn::twist(int j) const {
    RationalFn r;
    r.num_ = num_.twist(j);
    r.den_ = den_.twist(j);
    return r;
}

int RationalFn::degree() const {
    if (is_zero()) throw DomainError("degree of zero rational function");
    return num_.degree() - den_.degree();
}

std::string RationalFn::str() const {
    if (den_.is_one()) return num_.str();
    auto wrap = [](const Poly& p) {
        std::string s = p.str();
        return s.find(' ') == std::string::npos ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
}

}  // namespace drinfeld
