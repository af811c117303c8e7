#pragma once

// Finite fields F_q, extensions F_q[y]/(g) (towers allowed), the quotient rings
// F[t]/(f), and dense linear algebra over them. A "field" here is any class with
//   Elem, zero(), one(), is_zero(a), add, sub, neg, mul, inv, frob (x -> x^q),
//   from_fq(FqElem), fq_dim(), to_fq(a, out), from_fq_coords(in)
// Rings (no inv, no frob) are enough for Berkowitz.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/fq.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

class FqField {
public:
    using Elem = FqElem;

    explicit FqField(FieldPtr F) : F_(std::move(F)) {}

    Elem zero() const { return {0}; }
    Elem one() const { return {1}; }
    bool is_zero(Elem a) const { return a.v == 0; }
    Elem add(Elem a, Elem b) const { return F_->add(a, b); }
    Elem sub(Elem a, Elem b) const { return F_->sub(a, b); }
    Elem neg(Elem a) const { return F_->neg(a); }
    Elem mul(Elem a, Elem b) const { return F_->mul(a, b); }
    Elem inv(Elem a) const { return F_->inv(a); }
    Elem frob(Elem a) const { return a; }
    Elem from_fq(FqElem a) const { return a; }
    std::size_t fq_dim() const { return 1; }
    void to_fq(const Elem& a, FqElem* out) const { out[0] = a; }
    Elem from_fq_coords(const FqElem* in) const { return in[0]; }

    const FieldPtr& fq_ptr() const { return F_; }
    const Fq& fq() const { return *F_; }

private:
    FieldPtr F_;
};

namespace detail {

template <class F>
void trim(const F& f, std::vector<typename F::Elem>& a) {
    while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <class F>
std::vector<typename F::Elem> pmul(const F& f, const std::vector<typename F::Elem>& a,
                                   const std::vector<typename F::Elem>& b) {
    using E = typename F::Elem;
    if (a.empty() || b.empty()) return {};
    std::vector<E> r(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (f.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(f, r);
    return r;
}

// (quotient, remainder); b nonzero with trimmed leading coefficient
template <class F>
std::pair<std::vector<typename F::Elem>, std::vector<typename F::Elem>> pdivmod(
    const F& f, std::vector<typename F::Elem> a, const std::vector<typename F::Elem>& b) {
    using E = typename F::Elem;
    trim(f, a);
    if (a.size() < b.size()) return {{}, a};
    const std::size_t db = b.size() - 1;
    std::vector<E> quo(a.size() - db, f.zero());
    const E il = f.inv(b.back());
    for (std::size_t k = a.size(); k-- > db;) {
        if (f.is_zero(a[k])) continue;
        const E c = f.mul(a[k], il);
        quo[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i) a[k - db + i] = f.sub(a[k - db + i], f.mul(c, b[i]));
    }
    a.resize(db);
    trim(f, a);
    trim(f, quo);
    return {quo, a};
}

template <class F>
std::vector<typename F::Elem> psub(const F& f, std::vector<typename F::Elem> a,
                                   const std::vector<typename F::Elem>& b) {
    if (a.size() < b.size()) a.resize(b.size(), f.zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
    trim(f, a);
    return a;
}

// inverse of a modulo m (m irreducible or a coprime to m)
template <class F>
std::vector<typename F::Elem> pinvmod(const F& f, const std::vector<typename F::Elem>& a,
                                      const std::vector<typename F::Elem>& m) {
    using V = std::vector<typename F::Elem>;
    V r0 = m, r1 = a, s0, s1{f.one()};
    trim(f, r1);
    if (r1.empty()) throw DomainError("inversion of zero in extension field");
    while (!r1.empty()) {
        auto [qq, r] = pdivmod(f, r0, r1);
        V s = psub(f, s0, pmul(f, qq, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) throw DomainError("element not invertible modulo the defining polynomial");
    const auto il = f.inv(r0[0]);
    for (auto& c : s0) c = f.mul(c, il);
    return s0;
}

}  // namespace detail

// Base[y]/(g) with g monic irreducible of degree n over Base. Elements are dense
// coefficient vectors of length n.
template <class Base>
class ExtField {
public:
    using BaseElem = typename Base::Elem;
    using Elem = std::vector<BaseElem>;

    ExtField(Base base, std::vector<BaseElem> modulus) : base_(std::move(base)), mod_(std::move(modulus)) {
        detail::trim(base_, mod_);
        if (mod_.size() < 2) throw DomainError("extension modulus must have degree >= 1");
        const BaseElem il = base_.inv(mod_.back());
        for (auto& c : mod_) c = base_.mul(c, il);
        n_ = mod_.size() - 1;
        // y^{q j} for j < n, so that frob(Σ c_j y^j) = Σ frob(c_j) (y^q)^j
        Elem y = zero();
        if (n_ == 1) {
            y[0] = base_.neg(mod_[0]);
        } else {
            y[1] = base_.one();
        }
        gen_ = y;
        Elem yq = y;
        // frobenius of y: y^{q} where q = |F_q|; computed by repeated multiplication
        yq = pow_u(y, base_.fq().q());
        ypow_.resize(n_);
        ypow_[0] = one();
        for (std::size_t j = 1; j < n_; ++j) ypow_[j] = mul(ypow_[j - 1], yq);
    }

    const Base& base() const { return base_; }
    std::size_t degree() const { return n_; }
    const std::vector<BaseElem>& modulus() const { return mod_; }
    const Fq& fq() const { return base_.fq(); }

    Elem zero() const { return Elem(n_, base_.zero()); }
    Elem one() const {
        Elem e = zero();
        e[0] = base_.one();
        return e;
    }
    const Elem& generator() const { return gen_; }
    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!base_.is_zero(c)) return false;
        return true;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = base_.add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = base_.sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = base_.neg(a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<BaseElem> r(2 * n_ - 1, base_.zero());
        for (std::size_t i = 0; i < n_; ++i) {
            if (base_.is_zero(a[i])) continue;
            for (std::size_t j = 0; j < n_; ++j) r[i + j] = base_.add(r[i + j], base_.mul(a[i], b[j]));
        }
        return reduce(std::move(r));
    }
    Elem scale(const BaseElem& c, const Elem& a) const {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = base_.mul(c, a[i]);
        return r;
    }
    Elem inv(const Elem& a) const {
        std::vector<BaseElem> v = a;
        Elem r = detail::pinvmod(base_, v, mod_);
        r.resize(n_, base_.zero());
        return r;
    }
    Elem pow_u(Elem a, std::uint64_t e) const {
        Elem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }
    // x -> x^q with q = |F_q|
    Elem frob(const Elem& a) const {
        Elem r = zero();
        for (std::size_t j = 0; j < n_; ++j) {
            const BaseElem c = base_.frob(a[j]);
            if (base_.is_zero(c)) continue;
            for (std::size_t i = 0; i < n_; ++i) r[i] = base_.add(r[i], base_.mul(c, ypow_[j][i]));
        }
        return r;
    }
    Elem frob_pow(Elem a, std::size_t k) const {
        for (std::size_t i = 0; i < k; ++i) a = frob(a);
        return a;
    }
    Elem from_base(const BaseElem& c) const {
        Elem e = zero();
        e[0] = c;
        return e;
    }
    Elem from_fq(FqElem a) const { return from_base(base_.from_fq(a)); }
    std::size_t fq_dim() const { return n_ * base_.fq_dim(); }
    void to_fq(const Elem& a, FqElem* out) const {
        const std::size_t bd = base_.fq_dim();
        for (std::size_t i = 0; i < n_; ++i) base_.to_fq(a[i], out + i * bd);
    }
    Elem from_fq_coords(const FqElem* in) const {
        const std::size_t bd = base_.fq_dim();
        Elem e(n_);
        for (std::size_t i = 0; i < n_; ++i) e[i] = base_.from_fq_coords(in + i * bd);
        return e;
    }
    // Whether a lies in the image of F_q.
    bool in_fq(const Elem& a, FqElem* out = nullptr) const {
        std::vector<FqElem> c(fq_dim());
        to_fq(a, c.data());
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i].v != 0) return false;
        if (out) *out = c[0];
        return true;
    }

private:
    Elem reduce(std::vector<BaseElem> r) const {
        for (std::size_t k = r.size(); k-- > n_;) {
            const BaseElem c = r[k];
            if (base_.is_zero(c)) continue;
            for (std::size_t i = 0; i <= n_; ++i) r[k - n_ + i] = base_.sub(r[k - n_ + i], base_.mul(c, mod_[i]));
        }
        r.resize(n_, base_.zero());
        return r;
    }

    Base base_;
    std::vector<BaseElem> mod_;
    std::size_t n_ = 1;
    Elem gen_;
    std::vector<Elem> ypow_;
};

using ResidueField = ExtField<FqField>;

// A/βA for a monic irreducible β in θ.
inline ResidueField residue_field(const Poly& beta) {
    if (beta.degree() < 1 || !beta.is_monic()) throw DomainError("residue field needs a monic polynomial of degree >= 1");
    return ResidueField(FqField(beta.field()), beta.coeffs());
}

// Reduce a polynomial into Base[y]/(g) (coefficients mapped through from_fq).
template <class Ext>
typename Ext::Elem reduce_poly(const Ext& E, const Poly& f) {
    auto acc = E.zero();
    const auto y = E.generator();
    for (std::size_t i = f.size(); i-- > 0;) acc = E.add(E.mul(acc, y), E.from_fq(f.coeff(i)));
    return acc;
}

// The ring F[t]/(f) for f with coefficients in F_q, monic of degree n >= 1.
template <class F>
class QuotientRing {
public:
    using Elem = std::vector<typename F::Elem>;

    QuotientRing(F f, const Poly& modulus) : f_(std::move(f)) {
        if (modulus.degree() < 1 || !modulus.is_monic()) throw DomainError("quotient ring modulus must be monic of degree >= 1");
        for (auto c : modulus.coeffs()) mod_.push_back(f_.from_fq(c));
        n_ = mod_.size() - 1;
    }

    std::size_t degree() const { return n_; }
    const F& field() const { return f_; }
    Elem zero() const { return Elem(n_, f_.zero()); }
    Elem one() const {
        Elem e = zero();
        e[0] = f_.one();
        return e;
    }
    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!f_.is_zero(c)) return false;
        return true;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = f_.add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = f_.sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(n_);
        for (std::size_t i = 0; i < n_; ++i) r[i] = f_.neg(a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<typename F::Elem> r(2 * n_ - 1, f_.zero());
        for (std::size_t i = 0; i < n_; ++i) {
            if (f_.is_zero(a[i])) continue;
            for (std::size_t j = 0; j < n_; ++j) r[i + j] = f_.add(r[i + j], f_.mul(a[i], b[j]));
        }
        for (std::size_t k = r.size(); k-- > n_;) {
            const auto c = r[k];
            if (f_.is_zero(c)) continue;
            for (std::size_t i = 0; i <= n_; ++i) r[k - n_ + i] = f_.sub(r[k - n_ + i], f_.mul(c, mod_[i]));
        }
        r.resize(n_, f_.zero());
        return r;
    }

private:
    F f_;
    std::vector<typename F::Elem> mod_;
    std::size_t n_ = 1;
};

template <class F>
struct DenseMatrix {
    using Elem = typename F::Elem;
    std::size_t rows = 0, cols = 0;
    std::vector<Elem> a;

    DenseMatrix() = default;
    DenseMatrix(const F& f, std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, f.zero()) {}
    Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Elem& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class F>
DenseMatrix<F> identity_matrix(const F& f, std::size_t n) {
    DenseMatrix<F> m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

template <class F>
DenseMatrix<F> mat_mul(const F& f, const DenseMatrix<F>& x, const DenseMatrix<F>& y) {
    if (x.cols != y.rows) throw DomainError("matrix size mismatch");
    DenseMatrix<F> r(f, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const auto& a = x(i, k);
            if (f.is_zero(a)) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) = f.add(r(i, j), f.mul(a, y(k, j)));
        }
    return r;
}

template <class F>
std::vector<typename F::Elem> mat_vec(const F& f, const DenseMatrix<F>& x, const std::vector<typename F::Elem>& v) {
    std::vector<typename F::Elem> r(x.rows, f.zero());
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (f.is_zero(v[k])) continue;
            r[i] = f.add(r[i], f.mul(x(i, k), v[k]));
        }
    return r;
}

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, DenseMatrix<F>& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t s = r;
        while (s < m.rows && f.is_zero(m(s, c))) ++s;
        if (s == m.rows) continue;
        if (s != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(s, j), m(r, j));
        const auto il = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), il);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            const auto x = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(x, m(r, j)));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class F>
std::size_t rank(const F& f, DenseMatrix<F> m) {
    return rref(f, m).size();
}

// Basis of {x : m x = 0}.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel(const F& f, DenseMatrix<F> m) {
    auto piv = rref(f, m);
    std::vector<char> is_piv(m.cols, 0);
    for (auto c : piv) is_piv[c] = 1;
    std::vector<std::vector<typename F::Elem>> out;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<typename F::Elem> v(m.cols, f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(m(r, free));
        out.push_back(std::move(v));
    }
    return out;
}

// Some solution of m x = b, or nullopt.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& f, const DenseMatrix<F>& m,
                                                   const std::vector<typename F::Elem>& b) {
    DenseMatrix<F> aug(f, m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    auto piv = rref(f, aug);
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    std::vector<typename F::Elem> x(m.cols, f.zero());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols);
    return x;
}

// Characteristic polynomial det(X - m), coefficients lowest first, via Hessenberg reduction.
template <class F>
std::vector<typename F::Elem> charpoly(const F& f, DenseMatrix<F> h) {
    using E = typename F::Elem;
    const std::size_t n = h.rows;
    for (std::size_t k = 0; k + 2 <= n; ++k) {
        std::size_t piv = k + 1;
        while (piv < n && f.is_zero(h(piv, k))) ++piv;
        if (piv == n) continue;
        if (piv != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(k + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, k + 1));
        }
        const E il = f.inv(h(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) {
            if (f.is_zero(h(i, k))) continue;
            const E u = f.mul(h(i, k), il);
            for (std::size_t j = 0; j < n; ++j) h(i, j) = f.sub(h(i, j), f.mul(u, h(k + 1, j)));
            for (std::size_t r = 0; r < n; ++r) h(r, k + 1) = f.add(h(r, k + 1), f.mul(u, h(r, i)));
        }
    }
    // p_0 = 1, p_{k+1}(X) = (X - h_kk) p_k - Σ_{i<k} h_ik (Π_{j=i+1..k} h_{j,j-1}) p_i
    std::vector<std::vector<E>> p(n + 1);
    p[0] = {f.one()};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<E> next(k + 2, f.zero());
        for (std::size_t i = 0; i <= k; ++i) {
            next[i + 1] = f.add(next[i + 1], p[k][i]);
            next[i] = f.sub(next[i], f.mul(h(k, k), p[k][i]));
        }
        E prod = f.one();
        for (std::size_t i = k; i-- > 0;) {
            prod = f.mul(prod, h(i + 1, i));
            if (f.is_zero(prod)) break;
            const E c = f.mul(h(i, k), prod);
            if (f.is_zero(c)) continue;
            for (std::size_t j = 0; j < p[i].size(); ++j) next[j] = f.sub(next[j], f.mul(c, p[i][j]));
        }
        p[k + 1] = std::move(next);
    }
    return p[n];
}

// Characteristic polynomial det(X - m) over a commutative ring (division free).
template <class R>
std::vector<typename R::Elem> berkowitz(const R& ring, const std::vector<std::vector<typename R::Elem>>& m) {
    using E = typename R::Elem;
    const std::size_t n = m.size();
    // Column vector of coefficients of det(X - A_k) with highest first, grown one size at a time.
    std::vector<E> c{ring.one()};
    for (std::size_t k = 0; k < n; ++k) {
        // A_{k+1} = [[A_k, col], [row, a]]
        const E a = m[k][k];
        std::vector<E> col(k), row(k);
        for (std::size_t i = 0; i < k; ++i) {
            col[i] = m[i][k];
            row[i] = m[k][i];
        }
        // Toeplitz entries: 1, -a, -row·col, -row·A·col, ...
        std::vector<E> t(k + 2);
        t[0] = ring.one();
        t[1] = ring.neg(a);
        std::vector<E> v = col;
        for (std::size_t j = 2; j < k + 2; ++j) {
            E s = ring.zero();
            for (std::size_t i = 0; i < k; ++i) s = ring.add(s, ring.mul(row[i], v[i]));
            t[j] = ring.neg(s);
            std::vector<E> nv(k, ring.zero());
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t l = 0; l < k; ++l) nv[i] = ring.add(nv[i], ring.mul(m[i][l], v[l]));
            v = std::move(nv);
        }
        std::vector<E> nc(k + 2, ring.zero());
        for (std::size_t i = 0; i < k + 2; ++i)
            for (std::size_t j = 0; j <= i && j < c.size(); ++j) nc[i] = ring.add(nc[i], ring.mul(t[i - j], c[j]));
        c = std::move(nc);
    }
    std::reverse(c.begin(), c.end());
    return c;
}

// F_q-coefficient vectors <-> Poly.
inline Poly poly_from_fq(const FieldPtr& F, const std::vector<FqElem>& c, Var x) { return Poly(F, c, x); }

}  // namespace drinfeld
