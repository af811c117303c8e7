#include "drinfeld/lfunc.hpp"

#include <algorithm>
#include <random>

#include "drinfeld/cache.hpp"

namespace drinfeld {

namespace {

using LElem = ResidueField::Elem;
// Σ c_i τ^i over a field with a q-power Frobenius
template <class Fld>
using Skew = std::vector<typename Fld::Elem>;
template <class Fld>
using SkewMat = std::vector<std::vector<Skew<Fld>>>;

void require_integral(const TModule& G) {
    if (!G.is_integral()) throw DomainError("module is not defined over A; apply integral_model first");
}

Poly t_poly(const Poly& p) { return p.substitute(Var::t); }

template <class Fld>
typename Fld::Elem frob_n(const Fld& f, typename Fld::Elem a, int n) {
    for (int i = 0; i < n; ++i) a = f.frob(a);
    return a;
}

template <class Fld>
void skew_trim(const Fld& f, Skew<Fld>& a) {
    while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

// u τ^s · a
template <class Fld>
Skew<Fld> skew_shift(const Fld& f, const Skew<Fld>& a, const typename Fld::Elem& u, int s, int period) {
    Skew<Fld> r(a.size() + s, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (f.is_zero(a[i])) continue;
        r[i + s] = f.mul(u, frob_n(f, a[i], s % period));
    }
    skew_trim(f, r);
    return r;
}

template <class Fld>
Skew<Fld> skew_mul(const Fld& f, const Skew<Fld>& a, const Skew<Fld>& b, int period) {
    if (a.empty() || b.empty()) return {};
    Skew<Fld> r(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (f.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (f.is_zero(b[j])) continue;
            r[i + j] = f.add(r[i + j], f.mul(a[i], frob_n(f, b[j], static_cast<int>(i) % period)));
        }
    }
    skew_trim(f, r);
    return r;
}

template <class Fld>
void skew_sub_into(const Fld& f, Skew<Fld>& a, const Skew<Fld>& b) {
    if (a.size() < b.size()) a.resize(b.size(), f.zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
    skew_trim(f, a);
}

template <class Fld>
SkewMat<Fld> skewmat_mul(const Fld& f, const SkewMat<Fld>& x, const SkewMat<Fld>& y, int period) {
    const std::size_t d = x.size();
    SkewMat<Fld> r(d, std::vector<Skew<Fld>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Skew<Fld> acc;
            for (std::size_t l = 0; l < d; ++l) {
                auto p = skew_mul(f, x[i][l], y[l][j], period);
                if (p.empty()) continue;
                if (acc.size() < p.size()) acc.resize(p.size(), f.zero());
                for (std::size_t k = 0; k < p.size(); ++k) acc[k] = f.add(acc[k], p[k]);
            }
            skew_trim(f, acc);
            r[i][j] = std::move(acc);
        }
    return r;
}

// φ̄(t) over L
SkewMat<ResidueField> reduce_phi_t(const TModule& G, const ResidueField& L) {
    const std::size_t d = G.dim();
    SkewMat<ResidueField> P(d, std::vector<Skew<ResidueField>>(d));
    for (int i = 0; i <= G.tau_degree(); ++i) {
        const KMat& A = G.A(static_cast<std::size_t>(i));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                const LElem x = reduce_poly(L, A(a, b).num());
                if (L.is_zero(x)) continue;
                auto& e = P[a][b];
                if (e.size() <= static_cast<std::size_t>(i)) e.resize(i + 1, L.zero());
                e[i] = x;
            }
    }
    for (auto& row : P)
        for (auto& e : row) skew_trim(L, e);
    return P;
}

// φ̄((t - c)^k)
SkewMat<ResidueField> reduce_phi_v(const TModule& G, const ResidueField& L, const AuxPrime& v, int period) {
    SkewMat<ResidueField> base = reduce_phi_t(G, L);
    const std::size_t d = G.dim();
    for (std::size_t i = 0; i < d; ++i) {
        auto& e = base[i][i];
        if (e.empty()) e.push_back(L.zero());
        e[0] = L.sub(e[0], L.from_fq(v.c));
        skew_trim(L, e);
    }
    SkewMat<ResidueField> r = base;
    for (int j = 1; j < v.k; ++j) r = skewmat_mul(L, r, base, period);
    return r;
}

// Given the matrices T (t-action) and Fm of an endomorphism on a free R-module V,
// R = Fld[t]/(t - c)^k of rank r, returns the matrix of Fm over R (entries of length k).
template <class Fld>
std::vector<std::vector<std::vector<typename Fld::Elem>>> matrix_over_local_ring(const Fld& f, const DenseMatrix<Fld>& T,
                                                                                const DenseMatrix<Fld>& Fm,
                                                                                typename Fld::Elem c, int k, int r) {
    using E = typename Fld::Elem;
    const std::size_t N = T.rows;
    if (N != static_cast<std::size_t>(r * k))
        throw ReductionFailure("bad reduction: the reduced motive mod (t-c)^" + std::to_string(k) + " has dimension " +
                               std::to_string(N) + ", expected " + std::to_string(r * k));
    DenseMatrix<Fld> S = T;
    for (std::size_t i = 0; i < N; ++i) S(i, i) = f.sub(S(i, i), c);
    // columns of S followed by chosen unit vectors
    std::vector<std::vector<E>> cols;
    for (std::size_t j = 0; j < N; ++j) {
        std::vector<E> col(N);
        for (std::size_t i = 0; i < N; ++i) col[i] = S(i, j);
        cols.push_back(std::move(col));
    }
    auto rank_of = [&](const std::vector<std::vector<E>>& cs) {
        DenseMatrix<Fld> m(f, cs.size(), N);
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = 0; j < N; ++j) m(i, j) = cs[i][j];
        return rank(f, m);
    };
    std::size_t cur = rank_of(cols);
    if (cur + r != N) throw ReductionFailure("reduced module is not free of the expected rank");
    std::vector<std::size_t> chosen;
    for (std::size_t a = 0; a < N && cur < N; ++a) {
        std::vector<E> e(N, f.zero());
        e[a] = f.one();
        cols.push_back(e);
        const std::size_t nr = rank_of(cols);
        if (nr > cur) {
            cur = nr;
            chosen.push_back(a);
        } else {
            cols.pop_back();
        }
    }
    if (chosen.size() != static_cast<std::size_t>(r)) throw ReductionFailure("no free basis of the reduced module");
    // P = [T^j b_i], column i k + j
    DenseMatrix<Fld> P(f, N, N);
    for (int i = 0; i < r; ++i) {
        std::vector<E> v(N, f.zero());
        v[chosen[i]] = f.one();
        for (int j = 0; j < k; ++j) {
            for (std::size_t x = 0; x < N; ++x) P(x, i * k + j) = v[x];
            v = mat_vec(f, T, v);
        }
    }
    std::vector<std::vector<std::vector<E>>> out(r, std::vector<std::vector<E>>(r, std::vector<E>(k, f.zero())));
    for (int i = 0; i < r; ++i) {
        std::vector<E> img(N);
        for (std::size_t x = 0; x < N; ++x) img[x] = Fm(x, chosen[i]);
        auto sol = solve(f, P, img);
        if (!sol) throw ConsistencyError("Frobenius image outside the reduced module");
        for (int l = 0; l < r; ++l)
            for (int j = 0; j < k; ++j) out[l][i][j] = (*sol)[l * k + j];
    }
    return out;
}

Poly t_minus_c_pow(const FieldPtr& F, FqElem c, int k) {
    return pow(Poly(F, {F->neg(c), F->one()}, Var::t), static_cast<std::uint64_t>(k));
}

std::pair<int, int> row_degree(const std::vector<Skew<ResidueField>>& row) {
    int deg = -1, lp = -1;
    for (std::size_t j = 0; j < row.size(); ++j) {
        const int dj = static_cast<int>(row[j].size()) - 1;
        if (dj >= deg && dj >= 0) {
            deg = dj;
            lp = static_cast<int>(j);
        }
    }
    return {deg, lp};
}

void weak_popov(const ResidueField& L, SkewMat<ResidueField>& H, int period) {
    const std::size_t d = H.size();
    for (;;) {
        std::vector<std::pair<int, int>> dl(d);
        for (std::size_t i = 0; i < d; ++i) {
            dl[i] = row_degree(H[i]);
            if (dl[i].first < 0) throw ReductionFailure("φ(v^k) is singular modulo β");
        }
        bool changed = false;
        for (std::size_t i = 0; i < d && !changed; ++i)
            for (std::size_t l = 0; l < d && !changed; ++l) {
                if (i == l || dl[i].second != dl[l].second || dl[i].first < dl[l].first) continue;
                const int s = dl[i].first - dl[l].first;
                const std::size_t p = static_cast<std::size_t>(dl[i].second);
                const LElem lci = H[i][p].back();
                const LElem lcl = frob_n(L, H[l][p].back(), s % period);
                const LElem u = L.mul(lci, L.inv(lcl));
                for (std::size_t j = 0; j < d; ++j) skew_sub_into(L, H[i][j], skew_shift(L, H[l][j], u, s, period));
                changed = true;
            }
        if (!changed) return;
    }
}

class Quotient {
public:
    Quotient(const ResidueField& L, SkewMat<ResidueField> H, int period) : L_(L), H_(std::move(H)), period_(period) {
        d_ = H_.size();
        weak_popov(L_, H_, period_);
        for (std::size_t i = 0; i < d_; ++i) {
            auto [dg, p] = row_degree(H_[i]);
            deg_.push_back(dg);
            lp_.push_back(p);
            K_ = std::max(K_, dg);
        }
        const std::size_t W = d_ * (K_ + 1);
        std::vector<std::vector<LElem>> gens;
        for (std::size_t i = 0; i < d_; ++i)
            for (int s = 0; s + deg_[i] <= K_; ++s) {
                std::vector<Skew<ResidueField>> row(d_);
                for (std::size_t j = 0; j < d_; ++j) row[j] = skew_shift(L_, H_[i][j], L_.one(), s, period_);
                gens.push_back(flatten(row));
            }
        rr_ = DenseMatrix<ResidueField>(L_, gens.size(), W);
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < W; ++j) rr_(i, j) = gens[i][j];
        pivots_ = rref(L_, rr_);
        std::vector<char> isp(W, 0);
        for (auto p : pivots_) isp[p] = 1;
        for (std::size_t j = 0; j < W; ++j)
            if (!isp[j]) free_.push_back(j);
        int total = 0;
        for (int x : deg_) total += x;
        if (static_cast<int>(free_.size()) != total) throw ConsistencyError("motive quotient dimension mismatch");
    }

    std::size_t dim() const { return free_.size(); }
    // basis element a as a row vector τ^e e_j
    std::vector<Skew<ResidueField>> basis(std::size_t a, int extra_shift = 0) const {
        const std::size_t col = free_[a];
        const std::size_t e = col / d_, j = col % d_;
        std::vector<Skew<ResidueField>> row(d_);
        row[j].assign(e + extra_shift + 1, L_.zero());
        row[j].back() = L_.one();
        return row;
    }

    std::vector<LElem> coords(std::vector<Skew<ResidueField>> m) const {
        for (;;) {
            int D = -1;
            for (const auto& e : m) D = std::max(D, static_cast<int>(e.size()) - 1);
            if (D <= K_) break;
            std::vector<LElem> c(d_, L_.zero());
            for (std::size_t j = 0; j < d_; ++j)
                if (static_cast<int>(m[j].size()) - 1 == D) c[j] = m[j].back();
            std::vector<LElem> x(d_, L_.zero());
            std::vector<char> done(d_, 0);
            for (std::size_t jj = d_; jj-- > 0;) {
                std::size_t i = 0;
                while (lp_[i] != static_cast<int>(jj)) ++i;
                LElem res = c[jj];
                for (std::size_t i2 = 0; i2 < d_; ++i2) {
                    if (!done[i2]) continue;
                    res = L_.sub(res, L_.mul(x[i2], lead(i2, jj, D)));
                }
                x[i] = L_.mul(res, L_.inv(lead(i, jj, D)));
                done[i] = 1;
            }
            for (std::size_t i = 0; i < d_; ++i) {
                if (L_.is_zero(x[i])) continue;
                for (std::size_t j = 0; j < d_; ++j) skew_sub_into(L_, m[j], skew_shift(L_, H_[i][j], x[i], D - deg_[i], period_));
            }
        }
        std::vector<LElem> v = flatten(m);
        for (std::size_t r = 0; r < pivots_.size(); ++r) {
            const LElem a = v[pivots_[r]];
            if (L_.is_zero(a)) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = L_.sub(v[j], L_.mul(a, rr_(r, j)));
        }
        std::vector<LElem> out;
        for (auto j : free_) out.push_back(v[j]);
        return out;
    }

private:
    // coefficient of τ^D at column j of τ^{D - deg_i} H_i
    LElem lead(std::size_t i, std::size_t j, int D) const {
        const auto& e = H_[i][j];
        if (static_cast<int>(e.size()) - 1 != deg_[i]) return L_.zero();
        return frob_n(L_, e.back(), (D - deg_[i]) % period_);
    }
    std::vector<LElem> flatten(const std::vector<Skew<ResidueField>>& row) const {
        std::vector<LElem> v(d_ * (K_ + 1), L_.zero());
        for (std::size_t j = 0; j < d_; ++j)
            for (std::size_t e = 0; e < row[j].size(); ++e) {
                if (static_cast<int>(e) > K_) throw ConsistencyError("row beyond the truncation degree");
                v[e * d_ + j] = row[j][e];
            }
        return v;
    }

    const ResidueField& L_;
    SkewMat<ResidueField> H_;
    int period_;
    std::size_t d_ = 0;
    int K_ = 0;
    std::vector<int> deg_, lp_;
    DenseMatrix<ResidueField> rr_;
    std::vector<std::size_t> pivots_, free_;
};

// x · φ̄(t) for a row vector x
std::vector<Skew<ResidueField>> right_mul(const ResidueField& L, const std::vector<Skew<ResidueField>>& x,
                                          const SkewMat<ResidueField>& P, int period) {
    const std::size_t d = x.size();
    std::vector<Skew<ResidueField>> r(d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) {
            auto p = skew_mul(L, x[i], P[i][j], period);
            if (p.empty()) continue;
            if (r[j].size() < p.size()) r[j].resize(p.size(), L.zero());
            for (std::size_t k = 0; k < p.size(); ++k) r[j][k] = L.add(r[j][k], p[k]);
            skew_trim(L, r[j]);
        }
    return r;
}

Poly crt_pair(const Poly& a1, const Poly& m1, const Poly& a2, const Poly& m2) {
    const Poly inv = invmod(m1, m2);
    return a1 + m1 * (((a2 - a1) * inv) % m2);
}

// extension E = L[y]/(g) of degree s
ExtField<ResidueField> extension_of(const ResidueField& L, int s) {
    using V = std::vector<LElem>;
    if (s == 1) return ExtField<ResidueField>(L, V{L.zero(), L.one()});
    std::mt19937 rng(12345u + static_cast<unsigned>(s));
    const std::uint32_t q = L.fq().q();
    for (int attempt = 0; attempt < 100000; ++attempt) {
        V g(s + 1, L.zero());
        g[s] = L.one();
        for (int i = 0; i < s; ++i) {
            std::vector<FqElem> c(L.fq_dim());
            for (auto& x : c) x = FqElem{static_cast<std::uint32_t>(rng() % q)};
            g[i] = L.from_fq_coords(c.data());
        }
        if (L.is_zero(g[0])) continue;
        ExtField<ResidueField> E(L, g);
        // g irreducible iff gcd(y^{Q^i} - y, g) = 1 for i <= s/2 and y^{Q^s} = y, Q = |L|
        const auto y = E.generator();
        auto yq = y;
        bool ok = true;
        const std::size_t f = L.degree();
        for (int i = 1; i <= s && ok; ++i) {
            yq = E.frob_pow(yq, f);
            if (i <= s / 2) {
                V h = E.sub(yq, y);
                detail::trim(L, h);
                V a = g, b = h;
                while (!b.empty()) {
                    auto [qq, r] = detail::pdivmod(L, a, b);
                    a = std::move(b);
                    b = std::move(r);
                }
                if (a.size() > 1) ok = false;
            } else if (i == s && !E.is_zero(E.sub(yq, y))) {
                ok = false;
            }
        }
        if (ok) return E;
    }
    throw ConsistencyError("no irreducible polynomial found for the extension");
}

}  // namespace

PrimeField prime_field(const Poly& beta) {
    ResidueField L = residue_field(beta);
    FqField f(beta.field());
    const std::size_t n = L.degree();
    FqMatrix m(f, n, n);
    LElem x = L.one();
    for (std::size_t k = 0; k < n; ++k) {
        const LElem y = L.frob(x);
        for (std::size_t i = 0; i < n; ++i) m(i, k) = y[i];
        x = L.mul(x, L.generator());
    }
    return PrimeField{beta, std::move(L), std::move(m)};
}

FqMatrix t_action_matrix(const TModule& G, const Poly& beta, bool lie) {
    require_integral(G);
    const ResidueField L = residue_field(beta);
    const FieldPtr& F = G.F;
    const std::size_t f = L.degree(), d = G.dim();
    const int top = lie ? 0 : G.tau_degree();
    std::vector<std::vector<LElem>> red;  // red[i][a*d+b]
    for (int i = 0; i <= top; ++i) {
        std::vector<LElem> Ai(d * d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) Ai[a * d + b] = reduce_poly(L, G.A(i)(a, b).num());
        red.push_back(std::move(Ai));
    }
    FqField ff(F);
    FqMatrix m(ff, d * f, d * f);
    LElem basis = L.one();
    for (std::size_t k = 0; k < f; ++k) {
        LElem y = basis;
        for (int i = 0; i <= top; ++i) {
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t l = 0; l < d; ++l) {
                    const LElem img = L.mul(red[i][l * d + j], y);
                    for (std::size_t x = 0; x < f; ++x) m(l * f + x, j * f + k) = F->add(m(l * f + x, j * f + k), img[x]);
                }
            y = L.frob(y);
        }
        basis = L.mul(basis, L.generator());
    }
    return m;
}

Poly charpoly_t(const FieldPtr& F, const FqMatrix& m) { return Poly(F, charpoly(FqField(F), m), Var::t); }

Poly count_module(const TModule& G, const Poly& beta) { return charpoly_t(G.F, t_action_matrix(G, beta, false)); }
Poly count_lie(const TModule& G, const Poly& beta) { return charpoly_t(G.F, t_action_matrix(G, beta, true)); }

std::vector<Poly> primes_up_to(const FieldPtr& F, int D) {
    std::vector<Poly> out;
    for (int d = 1; d <= D; ++d)
        for (auto& b : monic_irreducibles(F, d)) out.push_back(std::move(b));
    return out;
}

std::string local_factor_inconsistency(const LocalFactor& lf, int weight, int dim) {
    const FieldPtr& F = lf.beta.field();
    const Poly bt = t_poly(lf.beta);
    if (!lf.count_G.is_monic() || lf.count_G.degree() != dim * lf.beta.degree())
        return "count_G is not monic of degree d·deg β";
    if (!(lf.count_Lie == pow(bt, static_cast<std::uint64_t>(dim)))) return "count_Lie differs from β(t)^d";
    if (!lf.has_qpoly()) return "";
    if (!lf.qpoly.back().is_one()) return "Q_β is not monic";
    if (lf.c.v == 0) return "normalization c is zero";
    Poly q1(F, Var::t);
    for (const auto& b : lf.qpoly) q1 += b;
    if (!(q1.scaled(F->inv(lf.c)) == lf.count_G)) return "c^{-1} Q_β(1) differs from count_G";
    if (!(lf.qpoly[0] == pow(bt, static_cast<std::uint64_t>(weight)).scaled(lf.c))) return "Q_β(0) differs from c·β(t)^w";
    return "";
}

LValue taelman_L(const TModule& G, int D, std::int64_t M, LocalFactorCache* cache) {
    if (D < 1) throw DomainError("degree cutoff must be >= 1");
    if (M < 1) throw DomainError("precision must be >= 1");
    require_integral(G);
    const FieldPtr& F = G.F;
    LValue out;
    out.D = D;
    out.M = M;
    LaurentSeries prod = LaurentSeries::one(F).truncated(M);
    LaurentSeries before = prod;
    for (int d = 1; d <= D; ++d) {
        if (d == D) before = prod;
        for (const auto& beta : monic_irreducibles(F, d)) {
            const LocalFactor lf = local_factor(G, beta, false, cache);
            const LaurentSeries fac = LaurentSeries::from_fraction(lf.count_Lie.substitute(Var::theta), lf.count_G.substitute(Var::theta), M);
            if (!fac.is_one_unit()) throw ConsistencyError("Taelman factor at " + beta.str() + " is not a 1-unit");
            prod = (prod * fac).truncated(M);
            out.per_prime.emplace_back(beta, fac);
        }
    }
    out.value = prod;
    out.stabilized = before.equal_to(prod, M);
    return out;
}

LValue zeta_direct(const FieldPtr& F, int n, int D, std::int64_t M) {
    if (n < 1) throw DomainError("zeta_direct needs n >= 1");
    if (D < 1) throw DomainError("degree cutoff must be >= 1");
    if (M < 1) throw DomainError("precision must be >= 1");
    LValue out;
    out.D = D;
    out.M = M;
    const Poly one = Poly::constant(F, F->one());
    LaurentSeries sum = LaurentSeries::one(F).truncated(M);
    LaurentSeries stratum;
    for (int d = 1; d <= D; ++d) {
        stratum = LaurentSeries::zero(F, M);
        for (const auto& a : monics(F, d)) {
            stratum += LaurentSeries::from_fraction(one, pow(a, static_cast<std::uint64_t>(n)), M);
        }
        stratum = stratum.truncated(M);
        sum = (sum + stratum).truncated(M);
    }
    out.value = sum;
    out.stabilized = stratum.is_zero();
    return out;
}

std::vector<Poly> frobenius_charpoly_mod(const TModule& G, const Poly& beta, const AuxPrime& v) {
    require_integral(G);
    if (v.k < 1) throw DomainError("auxiliary prime power must be >= 1");
    const FieldPtr& F = G.F;
    const ResidueField L = residue_field(beta);
    const int f = static_cast<int>(L.degree());
    const int r = G.tate_rank();
    Quotient Q(L, reduce_phi_v(G, L, v, f), f);
    const SkewMat<ResidueField> Pt = reduce_phi_t(G, L);
    const std::size_t N = Q.dim();
    DenseMatrix<ResidueField> T(L, N, N), Fm(L, N, N);
    for (std::size_t a = 0; a < N; ++a) {
        const auto t_img = Q.coords(right_mul(L, Q.basis(a), Pt, f));
        const auto f_img = Q.coords(Q.basis(a, f));
        for (std::size_t i = 0; i < N; ++i) {
            T(i, a) = t_img[i];
            Fm(i, a) = f_img[i];
        }
    }
    auto mat = matrix_over_local_ring(L, T, Fm, L.from_fq(v.c), v.k, r);
    QuotientRing<ResidueField> R(L, t_minus_c_pow(F, v.c, v.k));
    const auto cp = berkowitz(R, mat);
    std::vector<Poly> out;
    for (const auto& coeff : cp) {
        std::vector<FqElem> c(v.k);
        for (int j = 0; j < v.k; ++j)
            if (!L.in_fq(coeff[j], &c[j])) throw ConsistencyError("Frobenius characteristic polynomial not over F_q[t] at " + beta.str());
        out.emplace_back(F, c, Var::t);
    }
    return out;
}

std::vector<AuxPrime> default_aux_primes(const TModule& G, const Poly& beta, const std::vector<FqElem>& exclude) {
    const FieldPtr& F = G.F;
    const int bound = G.weight() * beta.degree();
    std::vector<FqElem> cs;
    for (std::uint32_t i = 0; i < F->q(); ++i) {
        const FqElem c = F->element(i);
        if (beta.degree() == 1 && beta.coeff(0) == F->neg(c)) continue;
        if (std::find(exclude.begin(), exclude.end(), c) != exclude.end()) continue;
        cs.push_back(c);
    }
    if (cs.empty()) throw DomainError("no auxiliary primes available");
    const int n = static_cast<int>(cs.size());
    const int k = (bound + 1 + n - 1) / n;
    std::vector<AuxPrime> out;
    for (auto c : cs) out.push_back({c, k});
    return out;
}

FrobeniusCharpoly frobenius_charpoly(const TModule& G, const Poly& beta, const std::optional<std::vector<AuxPrime>>& primes) {
    require_integral(G);
    const FieldPtr& F = G.F;
    FrobeniusCharpoly out;
    out.primes = primes ? *primes : default_aux_primes(G, beta);
    const int bound = G.weight() * beta.degree();
    int total = 0;
    for (const auto& v : out.primes) total += v.k;
    if (total <= bound) throw DomainError("CRT modulus of degree " + std::to_string(total) + " does not exceed the bound " + std::to_string(bound));
    Poly modulus = Poly::constant(F, F->one());
    std::vector<Poly> acc;
    for (const auto& v : out.primes) {
        if (beta.degree() == 1 && beta.coeff(0) == F->neg(v.c)) throw DomainError("auxiliary prime v with v(θ) ≡ 0 mod β");
        const Poly m = t_minus_c_pow(F, v.c, v.k);
        auto part = frobenius_charpoly_mod(G, beta, v);
        if (acc.empty()) {
            acc = std::move(part);
        } else {
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = crt_pair(acc[i], modulus, part[i], m);
        }
        modulus = modulus * m;
    }
    out.coeffs = acc;
    const Poly bw = pow(t_poly(beta), static_cast<std::uint64_t>(G.weight()));
    auto [quo, rem] = divmod(out.coeffs[0], bw);
    if (!rem.is_zero() || quo.degree() != 0) throw ConsistencyError("Q_β(0) is not a unit times β(t)^w at " + beta.str());
    out.c = quo.coeff(0);
    return out;
}

LocalFactor local_factor(const TModule& G, const Poly& beta, bool with_q, LocalFactorCache* cache) {
    if (cache) {
        if (auto hit = cache->find(G, beta); hit && (!with_q || hit->has_qpoly())) return *hit;
    }
    LocalFactor lf;
    lf.beta = beta;
    lf.count_G = count_module(G, beta);
    lf.count_Lie = count_lie(G, beta);
    if (with_q) {
        auto fc = frobenius_charpoly(G, beta);
        lf.qpoly = std::move(fc.coeffs);
        lf.c = fc.c;
    }
    const std::string why = local_factor_inconsistency(lf, G.weight(), static_cast<int>(G.dim()));
    if (!why.empty()) throw ConsistencyError(why + " at " + beta.str());
    if (cache) cache->insert(G, lf);
    return lf;
}

RationalFn dual_factor_at_one(const LocalFactor& lf) {
    if (!lf.has_qpoly()) throw DomainError("local factor has no Q_β");
    const FieldPtr& F = lf.beta.field();
    Poly q1(F, Var::t);
    for (const auto& b : lf.qpoly) q1 += b;
    if (lf.qpoly[0].is_zero()) throw ConsistencyError("Q_β(0) = 0");
    return RationalFn(q1, lf.qpoly[0]);
}

RationalFn goss_factor_rational(const LocalFactor& lf, int n) {
    if (!lf.has_qpoly()) throw DomainError("local factor has no Q_β");
    const FieldPtr& F = lf.beta.field();
    const int r = static_cast<int>(lf.qpoly.size()) - 1;
    // P(β^{-n}) = Σ_i Q[r-i] β^{-ni} = (Σ_i Q[r-i] β^{n(r-i)}) / β^{nr}
    const Poly bn = pow(lf.beta, static_cast<std::uint64_t>(n));
    Poly num(F), bp = Poly::constant(F, F->one());
    for (int i = r; i >= 0; --i) {
        num += lf.qpoly[r - i].substitute(Var::theta) * bp;
        bp = bp * bn;
    }
    return RationalFn(pow(bn, static_cast<std::uint64_t>(r)), num);
}

LaurentSeries goss_factor(const LocalFactor& lf, int n, std::int64_t M) {
    const RationalFn g = goss_factor_rational(lf, n);
    const LaurentSeries fac = LaurentSeries::from_fraction(g.num(), g.den(), M);
    if (!fac.is_one_unit()) throw DomainError("Goss factor at " + lf.beta.str() + " does not converge for n = " + std::to_string(n));
    return fac;
}

LValue goss_L(const TModule& G, int n, int D, std::int64_t M, LocalFactorCache* cache) {
    if (n < 1) throw DomainError("goss_L needs n >= 1");
    if (D < 1) throw DomainError("degree cutoff must be >= 1");
    if (M < 1) throw DomainError("precision must be >= 1");
    require_integral(G);
    const FieldPtr& F = G.F;
    LValue out;
    out.D = D;
    out.M = M;
    LaurentSeries prod = LaurentSeries::one(F).truncated(M);
    LaurentSeries before = prod;
    for (int d = 1; d <= D; ++d) {
        if (d == D) before = prod;
        for (const auto& beta : monic_irreducibles(F, d)) {
            LocalFactor lf;
            try {
                lf = local_factor(G, beta, true, cache);
            } catch (const ReductionFailure&) {
                out.skipped_primes.push_back(beta);
                continue;
            }
            const LaurentSeries fac = goss_factor(lf, n, M);
            prod = (prod * fac).truncated(M);
            out.per_prime.emplace_back(beta, fac);
        }
    }
    out.value = prod;
    out.stabilized = before.equal_to(prod, M);
    return out;
}

TorsionData torsion_kernel(const TModule& G, const Poly& beta, const AuxPrime& v, int s_max) {
    require_integral(G);
    const FieldPtr& F = G.F;
    FqField ff(F);
    if (beta.degree() == 1 && beta.coeff(0) == F->neg(v.c)) throw DomainError("v(θ) ≡ 0 mod β");
    const ResidueField L = residue_field(beta);
    const int f = static_cast<int>(L.degree());
    const int r = G.tate_rank();
    const std::size_t d = G.dim();
    const SkewMat<ResidueField> Pv = reduce_phi_v(G, L, v, f);
    const SkewMat<ResidueField> Pt = reduce_phi_t(G, L);
    for (int s = 1; s <= s_max; ++s) {
        const ExtField<ResidueField> E = extension_of(L, s);
        using EElem = ExtField<ResidueField>::Elem;
        const std::size_t ne = E.fq_dim(), n = d * ne;
        auto apply = [&](const SkewMat<ResidueField>& P, const std::vector<EElem>& x) {
            std::size_t top = 0;
            for (const auto& row : P)
                for (const auto& e : row) top = std::max(top, e.size());
            std::vector<std::vector<EElem>> tw(top + 1, x);
            for (std::size_t i = 1; i <= top; ++i)
                for (std::size_t j = 0; j < d; ++j) tw[i][j] = E.frob(tw[i - 1][j]);
            std::vector<EElem> y(d, E.zero());
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    for (std::size_t i = 0; i < P[a][b].size(); ++i) {
                        if (L.is_zero(P[a][b][i])) continue;
                        y[a] = E.add(y[a], E.mul(E.from_base(P[a][b][i]), tw[i][b]));
                    }
            return y;
        };
        auto to_vec = [&](const std::vector<EElem>& x) {
            std::vector<FqElem> c(n);
            for (std::size_t j = 0; j < d; ++j) E.to_fq(x[j], c.data() + j * ne);
            return c;
        };
        auto from_vec = [&](const std::vector<FqElem>& c) {
            std::vector<EElem> x(d);
            for (std::size_t j = 0; j < d; ++j) x[j] = E.from_fq_coords(c.data() + j * ne);
            return x;
        };
        FqMatrix A(ff, n, n);
        for (std::size_t col = 0; col < n; ++col) {
            std::vector<FqElem> e(n, F->zero());
            e[col] = F->one();
            const auto y = to_vec(apply(Pv, from_vec(e)));
            for (std::size_t i = 0; i < n; ++i) A(i, col) = y[i];
        }
        const auto ker = kernel(ff, A);
        if (ker.size() < static_cast<std::size_t>(r * v.k)) continue;
        if (ker.size() > static_cast<std::size_t>(r * v.k)) throw ReductionFailure("torsion larger than (A/v^k)^r at " + beta.str());
        const std::size_t N = ker.size();
        FqMatrix B(ff, n, N);
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t i = 0; i < n; ++i) B(i, j) = ker[j][i];
        FqMatrix T(ff, N, N), Fm(ff, N, N);
        for (std::size_t j = 0; j < N; ++j) {
            const auto x = from_vec(ker[j]);
            auto tx = to_vec(apply(Pt, x));
            std::vector<EElem> fx = x;
            for (auto& e : fx) e = E.frob_pow(e, f);
            auto fv = to_vec(fx);
            auto ct = solve(ff, B, tx);
            auto cf = solve(ff, B, fv);
            if (!ct || !cf) throw ConsistencyError("torsion is not stable under t or Frobenius");
            for (std::size_t i = 0; i < N; ++i) {
                T(i, j) = (*ct)[i];
                Fm(i, j) = (*cf)[i];
            }
        }
        TorsionData out;
        out.extension_degree = s;
        out.basis = ker;
        const auto mat = matrix_over_local_ring(ff, T, Fm, v.c, v.k, r);
        for (const auto& row : mat) {
            std::vector<Poly> prow;
            for (const auto& e : row) prow.emplace_back(F, e, Var::t);
            out.frobenius.push_back(std::move(prow));
        }
        return out;
    }
    throw ReductionFailure("torsion G[v^k] not rational over F_{β^s} for s <= " + std::to_string(s_max) + " at " + beta.str());
}

std::vector<Poly> torsion_charpoly(const FieldPtr& F, const TorsionData& T, const AuxPrime& v) {
    FqField ff(F);
    QuotientRing<FqField> R(ff, t_minus_c_pow(F, v.c, v.k));
    std::vector<std::vector<std::vector<FqElem>>> m;
    for (const auto& row : T.frobenius) {
        std::vector<std::vector<FqElem>> r;
        for (const auto& e : row) {
            std::vector<FqElem> c(v.k, F->zero());
            for (int j = 0; j < v.k; ++j) c[j] = e.coeff(j);
            r.push_back(std::move(c));
        }
        m.push_back(std::move(r));
    }
    std::vector<Poly> out;
    for (const auto& c : berkowitz(R, m)) out.emplace_back(F, c, Var::t);
    return out;
}

std::vector<RationalFn> elementary_symmetric(const std::vector<Poly>& c) {
    const std::size_t r = c.size() - 1;
    std::vector<RationalFn> e(r + 1);
    for (std::size_t k = 0; k <= r; ++k) {
        RationalFn x(c[r - k]);
        e[k] = (k % 2) ? -x : x;
    }
    return e;
}

std::vector<RationalFn> from_elementary_symmetric(const std::vector<RationalFn>& e) {
    const std::size_t r = e.size() - 1;
    std::vector<RationalFn> c(r + 1);
    for (std::size_t k = 0; k <= r; ++k) c[r - k] = (k % 2) ? -e[k] : e[k];
    return c;
}

TransformReport eigenvalue_transform_check(const TModule& phi, int n, const Poly& beta) {
    if (phi.type != ModuleType::drinfeld) throw DomainError("eigenvalue_transform_check needs a Drinfeld module");
    const FieldPtr& F = phi.F;
    TransformReport rep;
    auto integral = [](const TModule& G) { return G.is_integral() ? G : integral_model(G).module; };
    rep.q_phi = frobenius_charpoly(phi, beta).coeffs;
    rep.q_tilde = frobenius_charpoly(integral(make_g_tilde(phi, n)), beta).coeffs;
    rep.q_prime = frobenius_charpoly(integral(make_g_prime(phi, n)), beta).coeffs;
    const std::size_t r = rep.q_phi.size() - 1;
    const auto e = elementary_symmetric(rep.q_phi);
    const RationalFn lambda(pow(t_poly(beta), static_cast<std::uint64_t>(n + 1)));
    const RationalFn er = e[r];
    std::vector<RationalFn> et(r + 1), ep(r + 1);
    for (std::size_t k = 0; k <= r; ++k) {
        et[k] = (lambda / er).pow(static_cast<std::int64_t>(k)) * e[k];
        ep[k] = lambda.pow(static_cast<std::int64_t>(k)) * e[r - k] / er;
    }
    auto clear = [&](const std::vector<RationalFn>& es, std::vector<Poly>& out) {
        for (const auto& c : from_elementary_symmetric(es)) {
            if (!c.is_polynomial()) return false;
            out.push_back(c.num().is_zero() ? Poly(F, Var::t) : c.num());
        }
        return true;
    };
    const bool pt = clear(et, rep.expected_tilde);
    const bool pp = clear(ep, rep.expected_prime);
    auto same = [](const std::vector<Poly>& a, const std::vector<Poly>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    };
    std::string why;
    if (!pt) why += "tilde transform has non-polynomial coefficients; ";
    if (!pp) why += "prime transform has non-polynomial coefficients; ";
    if (pt && !same(rep.expected_tilde, rep.q_tilde)) why += "tilde mismatch; ";
    if (pp && !same(rep.expected_prime, rep.q_prime)) why += "prime mismatch; ";
    rep.ok = why.empty();
    rep.detail = rep.ok ? "match at " + beta.str() : why + "at " + beta.str();
    return rep;
}

std::vector<Poly> smith_invariant_factors(const FieldPtr& F, const FqMatrix& m) {
    const std::size_t n = m.rows;
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n, Poly(F, Var::t)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly e = Poly::constant(F, F->neg(m(i, j)), Var::t);
            if (i == j) e += Poly::variable(F, Var::t);
            a[i][j] = e;
        }
    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            // smallest-degree nonzero entry of the trailing block to (k, k)
            int best = -1;
            std::size_t bi = k, bj = k;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (!a[i][j].is_zero() && (best < 0 || a[i][j].degree() < best)) {
                        best = a[i][j].degree();
                        bi = i;
                        bj = j;
                    }
            if (best < 0) break;
            std::swap(a[k], a[bi]);
            for (auto& row : a) std::swap(row[k], row[bj]);
            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (a[i][k].is_zero()) continue;
                const Poly qt = a[i][k] / a[k][k];
                for (std::size_t j = k; j < n; ++j) a[i][j] -= qt * a[k][j];
                if (!a[i][k].is_zero()) clean = false;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (a[k][j].is_zero()) continue;
                const Poly qt = a[k][j] / a[k][k];
                for (std::size_t i = k; i < n; ++i) a[i][j] -= qt * a[i][k];
                if (!a[k][j].is_zero()) clean = false;
            }
            if (!clean) continue;
            // divisibility of the remaining block
            bool divides = true;
            for (std::size_t i = k + 1; i < n && divides; ++i)
                for (std::size_t j = k + 1; j < n && divides; ++j)
                    if (!(a[i][j] % a[k][k]).is_zero()) {
                        for (std::size_t jj = k; jj < n; ++jj) a[k][jj] += a[i][jj];
                        divides = false;
                    }
            if (divides) break;
        }
    }
    std::vector<Poly> out;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k].is_zero()) throw ConsistencyError("t Id - T is singular");
        if (a[k][k].degree() > 0) out.push_back(a[k][k].monic());
    }
    return out;
}

Poly brute_force_count(const FieldPtr& F, const FqMatrix& m) {
    FqField ff(F);
    const std::size_t n = m.rows;
    const std::uint32_t q = F->q();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    Poly out = Poly::constant(F, F->one(), Var::t);
    for (int dg = 1; dg <= static_cast<int>(n); ++dg)
        for (const auto& pi : monic_irreducibles(F, dg, Var::t)) {
            // π(m)^n
            FqMatrix pm(ff, n, n);
            FqMatrix pw = identity_matrix(ff, n);
            for (std::size_t i = 0; i < pi.size(); ++i) {
                for (std::size_t x = 0; x < n * n; ++x) pm.a[x] = F->add(pm.a[x], F->mul(pi.coeff(i), pw.a[x]));
                pw = mat_mul(ff, pw, m);
            }
            FqMatrix big = identity_matrix(ff, n);
            for (std::size_t j = 0; j < n; ++j) big = mat_mul(ff, big, pm);
            std::uint64_t count = 0;
            std::vector<FqElem> x(n);
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                std::uint64_t v = idx;
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = FqElem{static_cast<std::uint32_t>(v % q)};
                    v /= q;
                }
                const auto y = mat_vec(ff, big, x);
                if (std::all_of(y.begin(), y.end(), [](FqElem e) { return e.v == 0; })) ++count;
            }
            int e = 0;
            while (count > 1) {
                for (int i = 0; i < dg; ++i) count /= q;
                ++e;
            }
            out = out * pow(pi, static_cast<std::uint64_t>(e));
        }
    return out;
}

}  // namespace drinfeld
