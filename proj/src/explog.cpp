#include "drinfeld/explog.hpp"

#include <algorithm>

namespace drinfeld {

namespace {

constexpr std::int64_t kDegreeBudget = 1 << 17;

struct Prepared {
    PMat N;
    int e = 1;                  // c^{-1} Neumann length: 2ν - 1
    Poly delta;                 // common denominator of A_1..A_m
    std::vector<PMat> At;       // δ A_j, j >= 1 (index j)
};

Prepared prepare(const TModule& G) {
    Prepared P;
    const KMat N = G.nilpotent_part();
    if (!is_integral(N)) throw DomainError("Exp/Log need A_0 - θ Id over A");
    P.N = to_pmat(N);
    const int nu = N.nilpotency_index();
    P.e = std::max(1, 2 * nu - 1);
    P.delta = Scalars<Poly>::one(G.F);
    for (int j = 1; j <= G.tau_degree(); ++j) P.delta = lcm(P.delta, common_denominator(G.A(static_cast<std::size_t>(j))));
    P.At.push_back(PMat());
    for (int j = 1; j <= G.tau_degree(); ++j)
        P.At.push_back(to_pmat(G.A(static_cast<std::size_t>(j)).scaled(RationalFn(P.delta))));
    return P;
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("internal: inexact denominator division");
    return q;
}

PMat scaled(const PMat& m, const Poly& s) {
    if (s.is_one()) return m;
    return m.scaled(s);
}

// Y with c Y + Y Nk - N Y = c^e R, i.e. Y = Σ_{i<e} (-1)^i c^{e-1-i} T^i(R)
PMat sylvester(const PMat& R, const Poly& c, int e, const PMat& N, const PMat& Nk) {
    std::vector<PMat> terms{R};
    for (int i = 1; i < e; ++i) {
        PMat t = terms.back() * Nk - N * terms.back();
        if (t.is_zero()) break;
        terms.push_back(std::move(t));
    }
    PMat Y(R.field(), R.rows(), R.cols());
    Poly cp = Scalars<Poly>::one(R.field());
    std::vector<Poly> cpow{cp};
    for (int i = 1; i < e; ++i) cpow.push_back(cpow.back() * c);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        PMat t = scaled(terms[i], cpow[static_cast<std::size_t>(e - 1) - i]);
        if (i % 2) Y -= t;
        else Y += t;
    }
    return Y;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) {
        if (r > kDegreeBudget * 64) throw ConvergenceError("Exp/Log series beyond the degree budget");
        r *= b;
    }
    return r;
}

std::int64_t val_bound(const LaurentSeries& x) {
    if (x.is_exact_zero()) return LaurentSeries::kExact;
    return x.is_zero() ? x.precision() : x.valuation();
}

std::int64_t vec_val(const LieVec& x) {
    std::int64_t v = LaurentSeries::kExact;
    for (const auto& y : x) v = std::min(v, val_bound(y));
    return v;
}

int ram_of(const LieVec& x) {
    for (const auto& y : x)
        if (y.field()) return y.ramification();
    return 1;
}

}  // namespace

KMat ExpLogSeries::coeff(int k) const {
    const PMat& m = num.at(static_cast<std::size_t>(k));
    KMat r(m.field(), m.rows(), m.cols());
    const Poly& d = den[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = RationalFn(m(i, j), d);
    return r;
}

ExpLogSeries extend_series(const TModule& G, const ExpLogSeries& s0, int kmax) {
    ExpLogSeries s = s0;
    const FieldPtr& F = G.F;
    const std::size_t d = G.dim();
    const Prepared P = prepare(G);
    const int m = G.tau_degree();
    if (s.num.empty()) {
        s.num.push_back(PMat::identity(F, d));
        s.den.push_back(Scalars<Poly>::one(F));
    }
    const Poly th = Poly::variable(F);
    for (int k = s.computed_to() + 1; k <= kmax; ++k) {
        const std::int64_t Q = ipow(F->q(), k);
        if (Q * P.e * (k + 1) > kDegreeBudget) throw ConvergenceError("Exp/Log series beyond the degree budget");
        const Poly c = Poly::monomial(F, static_cast<std::size_t>(Q)) - th;
        const PMat Nk = P.N.twist(k);
        PMat R(F, d, d);
        Poly dk;
        if (s.kind == SeriesKind::exp) {
            const Poly D1 = s.den[static_cast<std::size_t>(k - 1)].twist(1);
            for (int j = 1; j <= std::min(k, m); ++j) {
                if (P.At[static_cast<std::size_t>(j)].is_zero()) continue;
                const std::size_t kj = static_cast<std::size_t>(k - j);
                PMat t = P.At[static_cast<std::size_t>(j)] * s.num[kj].twist(j);
                if (j > 1) t = scaled(t, exact_div(D1, s.den[kj].twist(j)));
                R += t;
            }
            dk = D1 * P.delta;
        } else {
            const Poly Dp = s.den[static_cast<std::size_t>(k - 1)] * P.delta.twist(k - 1);
            for (int j = 1; j <= std::min(k, m); ++j) {
                if (P.At[static_cast<std::size_t>(j)].is_zero()) continue;
                const std::size_t kj = static_cast<std::size_t>(k - j);
                PMat t = s.num[kj] * P.At[static_cast<std::size_t>(j)].twist(k - j);
                if (j > 1) t = scaled(t, exact_div(Dp, s.den[kj] * P.delta.twist(k - j)));
                R -= t;
            }
            dk = Dp;
        }
        Poly ce = Scalars<Poly>::one(F);
        for (int i = 0; i < P.e; ++i) ce = ce * c;
        s.num.push_back(sylvester(R, c, P.e, P.N, Nk));
        s.den.push_back(ce * dk);
    }
    return s;
}

ExpLogSeries exp_series(const TModule& G, int kmax) {
    ExpLogSeries s;
    s.kind = SeriesKind::exp;
    return extend_series(G, s, kmax);
}

ExpLogSeries log_series(const TModule& G, int kmax) {
    ExpLogSeries s;
    s.kind = SeriesKind::log;
    return extend_series(G, s, kmax);
}

namespace {

// P / den with P over A
struct Frac {
    PMat num;
    Poly den;
};

Frac to_frac(const KMat& m) {
    const FieldPtr& F = m.field();
    Poly L = Poly::constant(F, F->one());
    for (const auto& x : m.entries()) L = lcm(L, x.den());
    PMat n(F, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) n(i, j) = m(i, j).num() * (L / m(i, j).den());
    return {std::move(n), std::move(L)};
}

Frac twisted(const Frac& f, int j) { return {f.num.twist(j), f.den.twist(j)}; }
Frac product(const Frac& a, const Frac& b) { return {a.num * b.num, a.den * b.den}; }

// Σ sign_i · term_i == 0, cleared to a common denominator over A
bool sums_to_zero(const std::vector<std::pair<int, Frac>>& terms) {
    const FieldPtr& F = terms.front().second.num.field();
    Poly L = Poly::constant(F, F->one());
    for (const auto& [sg, t] : terms) L = lcm(L, t.den);
    PMat acc(F, terms.front().second.num.rows(), terms.front().second.num.cols());
    for (const auto& [sg, t] : terms) {
        const PMat part = t.num.scaled(L / t.den);
        if (sg > 0) acc += part;
        else acc -= part;
    }
    return acc.is_zero();
}

}  // namespace

bool series_residual_zero(const TModule& G, const ExpLogSeries& s) {
    const FieldPtr& F = G.F;
    const std::size_t d = G.dim();
    if (!(s.coeff(0) == KMat::identity(F, d))) return false;
    const int m = G.tau_degree();
    std::vector<Frac> A;
    for (int j = 0; j <= m; ++j) A.push_back(to_frac(G.A(static_cast<std::size_t>(j))));
    auto coeff = [&](int k) { return Frac{s.num[static_cast<std::size_t>(k)], s.den[static_cast<std::size_t>(k)]}; };
    for (int k = 1; k <= s.computed_to(); ++k) {
        const Frac a = coeff(k);
        std::vector<std::pair<int, Frac>> terms{{+1, product(a, twisted(A[0], k))}, {-1, product(A[0], a)}};
        for (int j = 1; j <= std::min(k, m); ++j) {
            if (s.kind == SeriesKind::exp) terms.emplace_back(-1, product(A[static_cast<std::size_t>(j)], twisted(coeff(k - j), j)));
            else terms.emplace_back(+1, product(coeff(k - j), twisted(A[static_cast<std::size_t>(j)], k - j)));
        }
        if (!sums_to_zero(terms)) return false;
    }
    return true;
}

bool log_exp_telescopes(const ExpLogSeries& ex, const ExpLogSeries& lg) {
    const int K = std::min(ex.computed_to(), lg.computed_to());
    std::vector<KMat> a, b;
    for (int k = 0; k <= K; ++k) {
        a.push_back(ex.coeff(k));
        b.push_back(lg.coeff(k));
    }
    for (int k = 1; k <= K; ++k) {
        KMat s(a[0].field(), a[0].rows(), a[0].cols());
        for (int i = 0; i <= k; ++i) s += b[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(k - i)].twist(i);
        if (!s.is_zero()) return false;
    }
    return true;
}

SeriesEvaluator::SeriesEvaluator(TModule G, SeriesKind kind, int kmax) : G_(std::move(G)), kmax_(kmax) {
    s_.kind = kind;
    s_ = extend_series(G_, s_, 0);
}

const std::vector<LaurentSeries>& SeriesEvaluator::coeff_laurent(int k, std::int64_t prec, int ram) {
    Cached& c = cache_[{k, ram}];
    if (!c.entries.empty() && c.prec >= prec) return c.entries;
    const PMat& num = s_.num[static_cast<std::size_t>(k)];
    const Poly& den = s_.den[static_cast<std::size_t>(k)];
    int maxdeg = 0;
    for (const auto& x : num.entries()) maxdeg = std::max(maxdeg, x.degree());
    const LaurentSeries dl = LaurentSeries::from_poly(den, ram);
    const LaurentSeries dinv = den.is_constant() ? dl.inv() : dl.inv(prec + static_cast<std::int64_t>(maxdeg) * ram);
    c.entries.clear();
    for (const auto& x : num.entries()) {
        if (x.is_zero()) c.entries.push_back(LaurentSeries::zero(G_.F, LaurentSeries::kExact, ram));
        else c.entries.push_back((LaurentSeries::from_poly(x, ram) * dinv).truncated(prec));
    }
    c.prec = prec;
    return c.entries;
}

LieVec SeriesEvaluator::operator()(const LieVec& x, std::int64_t theta_prec) {
    const std::size_t d = G_.dim();
    if (x.size() != d) throw DomainError("Lie vector has the wrong dimension");
    const int ram = ram_of(x);
    const std::int64_t target = theta_prec * ram;
    LieVec acc(d, LaurentSeries::zero(G_.F, LaurentSeries::kExact, ram));
    if (vec_val(x) >= LaurentSeries::kExact) return acc;
    // vals: valuations of the terms that are nonzero to precision; bounds: all terms
    std::vector<std::int64_t> vals, bounds;
    for (int k = 0; k <= kmax_; ++k) {
        if (s_.computed_to() < k) s_ = extend_series(G_, s_, k);
        LieVec xk;
        for (const auto& y : x) xk.push_back(y.twist(k));
        const std::int64_t vx = vec_val(xk);
        const auto& L = coeff_laurent(k, target - vx, ram);
        std::int64_t tv = LaurentSeries::kExact;
        bool term_zero = true;
        for (std::size_t i = 0; i < d; ++i) {
            LaurentSeries t = LaurentSeries::zero(G_.F, LaurentSeries::kExact, ram);
            for (std::size_t j = 0; j < d; ++j) {
                const LaurentSeries& a = L[i * d + j];
                if (a.is_exact_zero() || xk[j].is_exact_zero()) continue;
                t += a * xk[j];
            }
            tv = std::min(tv, val_bound(t));
            if (!t.is_zero()) term_zero = false;
            acc[i] += t;
        }
        bounds.push_back(tv);
        if (!term_zero) vals.push_back(tv);
        const std::size_t nb = bounds.size();
        if (nb >= 3 && std::min({bounds[nb - 1], bounds[nb - 2], bounds[nb - 3]}) >= target) {
            for (auto& y : acc) y = y.truncated(target);
            return acc;
        }
        if (vals.size() >= 3 && s_.kind == SeriesKind::log) {
            // Log terms are geometric in q^k once they grow
            const std::int64_t v1 = vals[vals.size() - 3], v2 = vals[vals.size() - 2], v3 = vals.back();
            if (v1 > v2 && v2 > v3) throw ConvergenceError("Log evaluation diverges: terms are growing");
        }
        if (vals.size() >= 3 && bounds.back() >= std::min(target, vals.back())) {
            const std::int64_t v1 = vals[vals.size() - 3], v2 = vals[vals.size() - 2], v3 = vals.back();
            if (v1 < v2 && v2 < v3 && v3 + (v3 - v2) >= target) {
                const std::int64_t p = std::min(target, v3 + (v3 - v2));
                for (auto& y : acc) y = y.truncated(p);
                return acc;
            }
        }
    }
    throw ConvergenceError(std::string(s_.kind == SeriesKind::exp ? "Exp" : "Log") +
                           " evaluation: terms not certified small within the series length");
}

LieVec exp_eval(const TModule& G, const LieVec& x, std::int64_t theta_prec) {
    SeriesEvaluator ev(G, SeriesKind::exp);
    return ev(x, theta_prec);
}

LieVec log_eval(const TModule& G, const LieVec& x, std::int64_t theta_prec) {
    SeriesEvaluator ev(G, SeriesKind::log);
    return ev(x, theta_prec);
}

namespace {

// A_0^{-1} = Σ_{j<ν} (-1)^j N^j θ^{-j-1}
KMat a0_inverse(const TModule& G) {
    const FieldPtr& F = G.F;
    const std::size_t d = G.dim();
    const KMat N = G.nilpotent_part();
    const RationalFn ith = RationalFn(Poly::variable(F)).inv();
    KMat r(F, d, d), p = KMat::identity(F, d);
    RationalFn s = ith;
    for (std::size_t j = 0; j <= d && !p.is_zero(); ++j) {
        r += p.scaled(s);
        p = p * N;
        s = -(s * ith);
    }
    return r;
}

int coeff_height(const TModule& G) {
    int h = 1;
    for (const auto& m : G.phi_t.coeffs())
        for (const auto& x : m.entries())
            if (!x.is_zero()) h = std::max(h, x.degree());
    return h;
}

}  // namespace

AGFVector agf(const TModule& G, const LieVec& w, int t_prec, std::int64_t theta_prec, SeriesEvaluator* exp) {
    const std::size_t d = G.dim();
    if (w.size() != d) throw DomainError("Lie vector has the wrong dimension");
    if (t_prec < 0) throw DomainError("negative t-precision");
    SeriesEvaluator local(G, SeriesKind::exp);
    SeriesEvaluator& ev = exp ? *exp : local;
    const int ram = ram_of(w);
    const std::int64_t Mw = theta_prec + coeff_height(G) + 1;
    const KMat Ainv = a0_inverse(G);
    std::vector<std::vector<LaurentSeries>> cols(d);
    LieVec z = w;
    for (int i = 0; i <= t_prec; ++i) {
        z = apply(Ainv, z, (Mw + 1) * ram, ram);
        const LieVec g = ev(z, Mw);
        for (std::size_t j = 0; j < d; ++j) cols[j].push_back(g[j]);
    }
    AGFVector r;
    r.t_precision = t_prec;
    r.theta_precision = Mw;
    for (std::size_t j = 0; j < d; ++j) r.series.emplace_back(G.F, cols[j], t_prec, ram);
    return r;
}

bool agf_identity_holds(const TModule& G, const AGFVector& g, const LieVec& exp_w, std::int64_t theta_prec) {
    const std::size_t d = G.dim();
    const int T = g.t_precision;
    const int ram = g.series.empty() ? 1 : g.series[0].ramification();
    const std::int64_t target = theta_prec * ram;
    for (std::size_t r = 0; r < d; ++r) {
        TateSeries lhs = TateSeries::zero(G.F, T, ram);
        for (std::size_t k = 0; k < G.phi_t.coeffs().size(); ++k) {
            const KMat& A = G.A(k);
            for (std::size_t l = 0; l < d; ++l) {
                if (A(r, l).is_zero()) continue;
                const TateSeries gt = g.series[l].twist(static_cast<int>(k));
                std::int64_t v = LaurentSeries::kExact;
                for (const auto& c : gt.coeffs()) v = std::min(v, val_bound(c));
                if (v >= LaurentSeries::kExact) continue;
                lhs += gt * LaurentSeries::from_rational(A(r, l), target - v, ram);
            }
        }
        TateSeries rhs = g.series[r].shift_t(1).truncated(T) +
                         TateSeries::polynomial(G.F, {exp_w[r]}, ram);
        if (!lhs.equal_to(rhs, T, theta_prec)) return false;
    }
    return true;
}

PeriodMatrix quasi_periods(const TModule& phi, const std::vector<LaurentSeries>& lambdas, std::int64_t theta_prec) {
    if (phi.dim() != 1) throw DomainError("quasi-periods need a Drinfeld module");
    const int r = phi.tate_rank();
    const std::int64_t q = phi.F->q();
    SeriesEvaluator ev(phi, SeriesKind::exp);
    PeriodMatrix P;
    P.theta_precision = theta_prec;
    for (const auto& lam : lambdas) {
        const int ram = lam.ramification();
        const LaurentSeries e = ev({lam}, theta_prec)[0];
        if (!e.is_zero() || e.precision() < theta_prec * ram)
            throw DomainError("supplied vector is not a period to the requested precision");
        std::vector<LaurentSeries> row{-lam};
        if (r > 1) {
            const std::int64_t vl = lam.is_zero() ? 0 : lam.valuation() / ram;
            const std::int64_t T = std::max<std::int64_t>(6, (theta_prec - q * (1 + std::min<std::int64_t>(vl, 0))) / (q - 1) + 4);
            const AGFVector f = agf(phi, {lam}, static_cast<int>(T), theta_prec + T, &ev);
            for (int k = 1; k < r; ++k) row.push_back(f.series[0].twist(k).eval_at_theta().truncated(theta_prec * ram));
        }
        P.rows.push_back(std::move(row));
    }
    return P;
}

LaurentSeries determinant(const std::vector<std::vector<LaurentSeries>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw DomainError("determinant of an empty matrix");
    if (n == 1) return m[0][0];
    LaurentSeries acc;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<LaurentSeries>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<LaurentSeries> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        LaurentSeries t = m[0][c] * determinant(minor);
        if (c % 2) t = -t;
        acc = (c == 0) ? t : acc + t;
    }
    return acc;
}

LegendreRatio legendre_ratio(const PeriodMatrix& P, int dmax) {
    if (P.rows.empty()) throw DomainError("empty period matrix");
    const LaurentSeries det = determinant(P.rows);
    const FieldPtr& F = det.field();
    const std::int64_t M = std::min(det.theta_precision(), P.theta_precision);
    const LaurentSeries pi = carlitz_period(F, M + 4);
    LegendreRatio r;
    LaurentSeries dk = det.ramification() == 1 ? det.to_kummer() : det;
    r.value = dk * pi.inv();
    try {
        const LaurentSeries v = r.value.project_to_kinf();
        r.in_kinf = true;
        r.reconstruction = rational_reconstruct(v, dmax);
    } catch (const DomainError&) {
        r.in_kinf = false;
    } catch (const PrecisionError&) {
        r.reconstruction.ok = false;
    }
    return r;
}

}  // namespace drinfeld
