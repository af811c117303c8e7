#include "drinfeld/fq.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace drinfeld {

namespace {

using Digits = std::vector<std::uint32_t>;

// Small dense polynomial arithmetic over F_p, only used to build tables.
void trim(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Digits mulmod_p(const Digits& a, const Digits& b, const Digits& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Digits r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    const std::size_t m = f.size() - 1;  // f monic
    for (std::size_t k = r.size(); k-- > m;) {
        const std::uint32_t c = r[k];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= m; ++i)
            r[k - m + i] = static_cast<std::uint32_t>((r[k - m + i] + std::uint64_t(p - c) * f[i]) % p);
    }
    r.resize(std::min(r.size(), m));
    trim(r);
    return r;
}

Digits powmod_p(Digits base, std::uint64_t e, const Digits& f, std::uint32_t p) {
    Digits r{1};
    while (e > 0) {
        if (e & 1) r = mulmod_p(r, base, f, p);
        base = mulmod_p(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Digits sub_p(Digits a, const Digits& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

std::uint32_t inv_p(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

Digits gcd_p(Digits a, Digits b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        const std::uint32_t il = inv_p(b.back(), p);
        while (a.size() >= b.size()) {
            const std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t(a.back()) * il % p);
            const std::size_t sh = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[sh + i] = static_cast<std::uint32_t>((a[sh + i] + std::uint64_t(p - c) * b[i]) % p);
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool irreducible_p(const Digits& f, std::uint32_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 1) return true;
    Digits x{0, 1};
    Digits xp = x;
    for (std::size_t i = 1; i <= m / 2; ++i) {
        xp = powmod_p(xp, p, f, p);
        Digits g = gcd_p(f, sub_p(xp, x, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

Digits to_digits(std::uint32_t v, std::uint32_t p, std::uint32_t m) {
    Digits d(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
        d[i] = v % p;
        v /= p;
    }
    return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// Conway polynomials for small (p, m), lowest coefficient first.
const std::map<std::pair<std::uint32_t, std::uint32_t>, Digits>& conway_table() {
    static const std::map<std::pair<std::uint32_t, std::uint32_t>, Digits> t = {
        {{2, 1}, {1, 1}},
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 1}, {1, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{5, 1}, {3, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{7, 1}, {4, 1}},
        {{7, 2}, {3, 6, 1}},
        {{11, 1}, {9, 1}},
        {{11, 2}, {2, 7, 1}},
        {{13, 1}, {11, 1}},
        {{13, 2}, {2, 12, 1}},
    };
    return t;
}

// Whether the class of x generates (F_p[x]/f)^*.
bool root_is_primitive(const Digits& f, std::uint32_t p) {
    const std::uint64_t n = ipow(p, static_cast<std::uint32_t>(f.size() - 1)) - 1;
    Digits x = f.size() == 2 ? Digits{(p - f[0]) % p} : Digits{0, 1};
    trim(x);
    if (x.empty()) return false;
    std::uint64_t r = n;
    for (std::uint64_t d = 2; d * d <= r; ++d) {
        if (r % d) continue;
        while (r % d == 0) r /= d;
        if (powmod_p(x, n / d, f, p) == Digits{1}) return false;
    }
    if (r > 1 && powmod_p(x, n / r, f, p) == Digits{1}) return false;
    return powmod_p(x, n, f, p) == Digits{1};
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t FieldSpec::q() const { return static_cast<std::uint32_t>(ipow(p, m)); }

FieldSpec FieldSpec::standard(std::uint32_t p, std::uint32_t m) {
    if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (m == 0) throw DomainError("extension degree must be at least 1");
    if (ipow(p, m) > Fq::kMaxOrder) throw DomainError("field order exceeds the supported maximum 65536");
    auto it = conway_table().find({p, m});
    if (it != conway_table().end()) return {p, m, it->second};
    // First primitive irreducible, lower coefficients enumerated by base-p index.
    const std::uint64_t count = ipow(p, m);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Digits f = to_digits(static_cast<std::uint32_t>(idx), p, m);
        f.push_back(1);
        if (f[0] == 0) continue;
        if (irreducible_p(f, p) && root_is_primitive(f, p)) return {p, m, f};
    }
    throw DomainError("no primitive modulus found");
}

FieldSpec FieldSpec::from_order(std::uint32_t q) {
    if (q < 2) throw DomainError("field order must be at least 2");
    std::uint32_t p = 2;
    while (q % p) ++p;
    std::uint32_t m = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
        r /= p;
        ++m;
    }
    if (r != 1) throw DomainError(std::to_string(q) + " is not a prime power");
    return standard(p, m);
}

Fq::Fq(FieldSpec spec) : spec_(std::move(spec)) {
    p_ = spec_.p;
    m_ = spec_.m;
    if (!is_prime(p_)) throw DomainError("characteristic " + std::to_string(p_) + " is not prime");
    if (m_ == 0) throw DomainError("extension degree must be at least 1");
    if (ipow(p_, m_) > kMaxOrder) throw DomainError("field order exceeds the supported maximum 65536");
    q_ = spec_.q();
    if (spec_.modulus.size() != m_ + 1) throw DomainError("modulus must have m+1 coefficients");
    for (auto c : spec_.modulus)
        if (c >= p_) throw DomainError("modulus coefficients must be residues mod p");
    if (spec_.modulus.back() != 1) throw DomainError("modulus must be monic");
    if (!irreducible_p(spec_.modulus, p_)) throw DomainError("modulus is reducible over F_p");

    const Digits& f = spec_.modulus;
    auto mul_index = [&](std::uint32_t a, std::uint32_t b) {
        Digits da = to_digits(a, p_, m_), db = to_digits(b, p_, m_);
        trim(da);
        trim(db);
        Digits r = mulmod_p(da, db, f, p_);
        r.resize(m_, 0);
        return from_digits(r, p_);
    };

    // Find a generator of F_q^*.
    const std::uint32_t n = q_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
    log_.assign(q_, 0);
    bool found = false;
    for (std::uint32_t g = 1; g < q_ && !found; ++g) {
        std::uint32_t x = 1;
        std::uint32_t k = 0;
        do {
            exp_[k++] = x;
            x = mul_index(x, g);
        } while (x != 1 && k < n);
        if (k == n && x == 1) found = true;
    }
    if (!found) throw DomainError("F_q^* is not cyclic: modulus is not irreducible");
    for (std::uint32_t k = 0; k < n; ++k) log_[exp_[k]] = k;
    for (std::uint32_t k = n; k < exp_.size(); ++k) exp_[k] = exp_[k - n];

    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        Digits d = to_digits(a, p_, m_);
        for (auto& c : d) c = (p_ - c) % p_;
        neg_[a] = from_digits(d, p_);
    }
    if (p_ != 2 && q_ <= 256) {
        add_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b) add_[a * q_ + b] = add_digits({a}, {b}).v;
    }
}

FieldPtr Fq::make(FieldSpec spec) { return std::make_shared<const Fq>(std::move(spec)); }
FieldPtr Fq::make(std::uint32_t q) { return make(FieldSpec::from_order(q)); }

FqElem Fq::add_digits(FqElem a, FqElem b) const {
    std::uint32_t r = 0, scale = 1;
    std::uint32_t x = a.v, y = b.v;
    for (std::uint32_t i = 0; i < m_; ++i) {
        r += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return {r};
}

FqElem Fq::from_int(std::int64_t k) const {
    const std::int64_t r = ((k % static_cast<std::int64_t>(p_)) + p_) % p_;
    return {static_cast<std::uint32_t>(r)};
}

FqElem Fq::from_coords(const std::vector<std::uint32_t>& c) const {
    if (c.size() > m_) throw DomainError("too many coordinates for F_q element");
    for (auto x : c)
        if (x >= p_) throw DomainError("coordinate out of range mod p");
    return {from_digits(c, p_)};
}

std::vector<std::uint32_t> Fq::coords(FqElem a) const { return to_digits(a.v, p_, m_); }

FqElem Fq::inv(FqElem a) const {
    if (a.v == 0) throw DomainError("inversion of zero in F_q");
    const std::uint32_t n = q_ - 1;
    return {exp_[(n - log_[a.v]) % n]};
}

FqElem Fq::pow(FqElem a, std::int64_t e) const {
    if (a.v == 0) {
        if (e < 0) throw DomainError("negative power of zero in F_q");
        return e == 0 ? one() : zero();
    }
    const std::int64_t n = q_ - 1;
    std::int64_t k = (static_cast<std::int64_t>(log_[a.v]) * (((e % n) + n) % n)) % n;
    return {exp_[static_cast<std::size_t>(k)]};
}

FqElem Fq::frobenius_power(FqElem a, std::int64_t j) const {
    if (a.v == 0) return a;
    const std::int64_t mm = m_;
    const std::int64_t k = ((j % mm) + mm) % mm;
    const std::uint64_t n = q_ - 1;
    std::uint64_t e = log_[a.v];
    for (std::int64_t i = 0; i < k; ++i) e = (e * p_) % n;
    return {exp_[e]};
}

std::string Fq::str(FqElem a) const {
    if (m_ == 1) return std::to_string(a.v);
    Digits d = coords(a);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << d[i];
        } else {
            if (d[i] != 1) os << d[i];
            os << "g";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace drinfeld
