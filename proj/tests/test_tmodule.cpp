#include <random>

#include "doctest.h"
#include "drinfeld/explog.hpp"
#include "drinfeld/tmodule.hpp"

using namespace drinfeld;

namespace {

RationalFn rf(const FieldPtr& F, std::initializer_list<std::int64_t> c) { return RationalFn(Poly::from_ints(F, c)); }
RationalFn th(const FieldPtr& F) { return rf(F, {0, 1}); }
RationalFn k(const FieldPtr& F, std::int64_t c) { return rf(F, {c}); }

Poly rnd_poly(const FieldPtr& F, int deg, std::mt19937_64& g, Var x = Var::theta) {
    std::vector<FqElem> c(static_cast<std::size_t>(deg + 1));
    for (auto& e : c) e = F->element(static_cast<std::uint32_t>(g() % F->q()));
    return Poly(F, c, x);
}

RationalFn rnd_nonzero(const FieldPtr& F, int deg, std::mt19937_64& g) {
    for (;;) {
        Poly p = rnd_poly(F, deg, g);
        if (!p.is_zero()) return RationalFn(p);
    }
}

KMat kmat(const FieldPtr& F, std::vector<std::vector<RationalFn>> rows) {
    KMat m(F, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

LieVec lie(std::initializer_list<LaurentSeries> x) { return LieVec(x); }

}  // namespace

TEST_CASE("Drinfeld modules and Carlitz tensor powers") {
    auto F = Fq::make(3);
    auto C = make_drinfeld(F, {k(F, 1)});
    CHECK(C.dim() == 1);
    CHECK(C.A(0)(0, 0) == th(F));
    CHECK(C.A(1)(0, 0) == k(F, 1));
    auto phi = make_drinfeld(F, {k(F, 1), k(F, -1)});
    CHECK(phi.rank == 2);
    CHECK(phi.A(2)(0, 0) == k(F, -1));
    CHECK_THROWS_AS(make_drinfeld(F, {k(F, 1), k(F, 0)}), DomainError);

    auto C1 = make_carlitz_tensor(F, 1, k(F, 1));
    CHECK(C1.phi_t == C.phi_t);
    auto C2 = make_carlitz_tensor(F, 2, k(F, 1));
    CHECK(C2.A(0) == kmat(F, {{th(F), k(F, 1)}, {k(F, 0), th(F)}}));
    CHECK(C2.A(1) == kmat(F, {{k(F, 0), k(F, 0)}, {k(F, 1), k(F, 0)}}));
    auto C2b = make_carlitz_tensor(F, 2, th(F));
    CHECK(C2b.A(1) == kmat(F, {{k(F, 0), k(F, 0)}, {th(F), k(F, 0)}}));
    CHECK_THROWS_AS(make_carlitz_tensor(F, 2, k(F, 0)), DomainError);
}

TEST_CASE("G_n, exterior powers and their twists") {
    auto F = Fq::make(3);
    const auto a1 = rf(F, {1, 1}), a2 = rf(F, {2});
    auto phi = make_drinfeld(F, {a1, a2});
    auto G1 = make_g_n(phi, 1);
    const auto z = k(F, 0), o = k(F, 1);
    CHECK(G1.nilpotent_part() == kmat(F, {{z, z, o}, {z, z, z}, {z, z, z}}));
    CHECK(G1.A(1) == kmat(F, {{z, z, z}, {o, z, z}, {a1, a2, z}}));
    CHECK_THROWS_AS(make_g_n(make_drinfeld(F, {o}), 1), DomainError);

    std::mt19937_64 g(17);
    for (int r = 2; r <= 4; ++r)
        for (int n = 1; n <= 3; ++n) {
            std::vector<RationalFn> a;
            for (int i = 0; i < r; ++i) a.push_back(rnd_nonzero(F, 2, g));
            auto ph = make_drinfeld(F, a);
            auto G = make_g_n(ph, n);
            CHECK(G.dim() == static_cast<std::size_t>(r * n + 1));
            const KMat N = G.nilpotent_part();
            for (std::size_t i = G.dim() - static_cast<std::size_t>(r); i < G.dim(); ++i)
                for (std::size_t j = 0; j < G.dim(); ++j) CHECK(N(i, j).is_zero());
            CHECK(N.nilpotency_index() == n + 1);
            auto W = make_wedge_tensor(ph, n);
            CHECK(W.dim() == static_cast<std::size_t>(r * n + r - 1));
            const KMat Np = W.nilpotent_part();
            for (std::size_t i = W.dim() - static_cast<std::size_t>(r); i < W.dim(); ++i)
                for (std::size_t j = 0; j < W.dim(); ++j) CHECK(Np(i, j).is_zero());
            CHECK(make_wedge(ph).dim() == static_cast<std::size_t>(r - 1));
            // G'_n is the conjugate of (∧^{r-1}φ) ⊗ C^{⊗n} by a root of (-1)^{r-1} a_r^{-1}
            RationalFn u = a.back().inv();
            if (r % 2 == 0) u = -u;
            CHECK(make_g_prime(ph, n).phi_t == conjugate_by_root(W, u).phi_t);
            CHECK(make_g_prime(ph, 0).phi_t == conjugate_by_root(make_wedge(ph), u).phi_t);
            // explicit γ when a_r = (-1)^{r-1} θ^{q-1}: γ = θ^{-1}
            std::vector<RationalFn> b = a;
            b.back() = th(F).pow(2);
            if (r % 2 == 0) b.back() = -b.back();
            auto pb = make_drinfeld(F, b);
            const RationalFn gamma = th(F).inv();
            CHECK(make_g_prime(pb, n).phi_t == conjugate_scalar(make_wedge_tensor(pb, n), gamma).phi_t);
            CHECK(make_g_prime(pb, 0).phi_t == conjugate_scalar(make_wedge(pb), gamma).phi_t);
        }

    // ∧^{r-1}φ at r = 3 and r = 2
    const auto a3 = rf(F, {0, 2});
    auto phi3 = make_drinfeld(F, {a1, a2, a3});
    auto W3 = make_wedge(phi3);
    CHECK(W3.A(1) == kmat(F, {{-a2, a3}, {-a1, z}}));
    CHECK(W3.A(2) == kmat(F, {{z, z}, {a3, z}}));
    CHECK(make_wedge(phi).phi_t == phi.phi_t);
    auto WT = make_wedge_tensor(phi, 1);
    CHECK(WT.A(1) == kmat(F, {{z, z, z}, {-o, z, z}, {a1, -a2, z}}));
    CHECK(make_wedge_tensor(phi3, 1).dim() == 5);

    // G'_0 for r = 2, a_2 = -1: θ + a_1 τ - τ^2
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto Fq_ = Fq::make(q);
        const auto b1 = rf(Fq_, {0, 1, 1});
        auto ph = make_drinfeld(Fq_, {b1, k(Fq_, -1)});
        auto Gp = make_g_prime(ph, 0);
        CHECK(Gp.phi_t == ph.phi_t);
        CHECK(make_g_prime(ph, 1).dim() == 3);
        auto Gt = make_g_tilde(ph, 0);
        CHECK(Gt.phi_t == ph.phi_t);
    }
    // G~_1 with a_2 = 1: E-part is -E
    auto psi = make_drinfeld(F, {a1, o});
    auto Gt1 = make_g_tilde(psi, 1);
    CHECK(Gt1.A(1) == -g_n_E(F, psi.a, 1));
    CHECK(Gt1.is_integral());
    CHECK_THROWS_AS(make_g_tilde(make_drinfeld(F, {a1, th(F)}), 1), DomainError);
    CHECK_THROWS_AS(make_g_tilde(make_drinfeld(F, {th(F).inv(), o}), 1), DomainError);
}

TEST_CASE("integral models and the A-action") {
    auto F = Fq::make(3);
    auto C = make_drinfeld(F, {k(F, 1)});
    auto im = integral_model(C);
    CHECK(im.conjugator.is_one());
    CHECK(im.module.phi_t == C.phi_t);
    auto phi = make_drinfeld(F, {th(F).inv()});
    auto im2 = integral_model(phi);
    CHECK(im2.conjugator == Poly::variable(F));
    CHECK(im2.module.A(1)(0, 0) == th(F));
    CHECK(im2.module.A(0) == phi.A(0));

    // Carlitz: C_{t^2} = θ^2 + (θ^q + θ) τ + τ^2
    const Poly t2 = Poly::monomial(F, 2, Var::t);
    auto s = phi_of_a(C, t2);
    REQUIRE(s.degree() == 2);
    CHECK(s.coeff(0)(0, 0) == th(F).pow(2));
    CHECK(s.coeff(1)(0, 0) == th(F).pow(3) + th(F));
    CHECK(s.coeff(2)(0, 0) == k(F, 1));
    CHECK(phi_of_a(C, Poly::constant(F, F->one(), Var::t)).coeff(0) == KMat::identity(F, 1));

    std::mt19937_64 g(23);
    for (std::uint32_t q : {2u, 3u}) {
        auto Fq_ = Fq::make(q);
        auto ph = make_drinfeld(Fq_, {rnd_nonzero(Fq_, 1, g), k(Fq_, 1)});
        auto C2 = make_carlitz_tensor(Fq_, 2, k(Fq_, 1));
        for (int it = 0; it < 25; ++it) {
            const Poly a = rnd_poly(Fq_, static_cast<int>(g() % 5), g, Var::t);
            const Poly b = rnd_poly(Fq_, static_cast<int>(g() % 5), g, Var::t);
            for (const TModule* G : {&ph, &C2}) {
                CHECK(phi_of_a(*G, a * b) == phi_of_a(*G, a) * phi_of_a(*G, b));
                CHECK(phi_of_a(*G, a + b) == phi_of_a(*G, a) + phi_of_a(*G, b));
            }
            if (!a.is_zero()) CHECK(phi_of_a(ph, a).degree() == 2 * a.degree());
        }
    }
}

TEST_CASE("Exp and Log series") {
    for (std::uint32_t q : {2u, 3u, 4u}) {
        CAPTURE(q);
        auto F = Fq::make(q);
        auto C = make_drinfeld(F, {k(F, 1)});
        const int K = q == 2 ? 5 : 4;
        auto ex = exp_series(C, K);
        auto lg = log_series(C, K);
        CHECK(ex.coeff(0) == KMat::identity(F, 1));
        const Poly tp = Poly::variable(F);
        for (int i = 1; i <= K; ++i) {
            // D_i = Π_{j<i} (θ^{q^i} - θ^{q^j}), L_i = Π_{j=1..i} (θ - θ^{q^j})
            Poly D = Poly::constant(F, F->one()), L = Poly::constant(F, F->one());
            std::size_t Qi = 1;
            for (int j = 0; j < i; ++j) Qi *= q;
            std::size_t Qj = 1;
            for (int j = 0; j < i; ++j) {
                D = D * (Poly::monomial(F, Qi) - Poly::monomial(F, Qj));
                Qj *= q;
                L = L * (tp - Poly::monomial(F, Qj));
            }
            CHECK(ex.coeff(i)(0, 0) == RationalFn(Poly::constant(F, F->one()), D));
            CHECK(lg.coeff(i)(0, 0) == RationalFn(Poly::constant(F, F->one()), L));
        }
        CHECK(series_residual_zero(C, ex));
        CHECK(series_residual_zero(C, lg));
        CHECK(log_exp_telescopes(ex, lg));
    }
    // every constructor, small q
    auto F = Fq::make(3);
    auto phi = make_drinfeld(F, {rf(F, {1, 1}), k(F, 2)});
    auto phi3 = make_drinfeld(F, {th(F), k(F, 1), k(F, 1)});
    std::vector<TModule> mods{make_carlitz_tensor(F, 2, k(F, 1)), make_carlitz_tensor(F, 3, th(F)), make_g_n(phi, 1),
                              make_wedge(phi3), make_wedge_tensor(phi, 1), make_g_prime(phi, 1), make_g_prime(phi3, 0),
                              make_g_tilde(phi, 1), make_drinfeld(F, {th(F).inv(), k(F, 1)})};
    for (const auto& G : mods) {
        CAPTURE(G.describe());
        auto ex = exp_series(G, 3);
        auto lg = log_series(G, 3);
        CHECK(series_residual_zero(G, ex));
        CHECK(series_residual_zero(G, lg));
        auto bad = ex;
        bad.num[2](0, 0) += Poly::constant(F, F->one());
        CHECK_FALSE(series_residual_zero(G, bad));
        CHECK(log_exp_telescopes(ex, lg));
        // extension agrees with direct computation
        CHECK(extend_series(G, exp_series(G, 1), 3).coeff(3) == ex.coeff(3));
    }
}

TEST_CASE("Exp and Log evaluation") {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        CAPTURE(q);
        auto F = Fq::make(q);
        auto C = make_drinfeld(F, {k(F, 1)});
        const auto x = LaurentSeries::theta(F).inv();
        auto z = exp_eval(C, lie({LaurentSeries::zero(F)}), 30);
        CHECK(z[0].is_exact_zero());
        auto l = log_eval(C, lie({x}), 34);
        auto back = exp_eval(C, l, 30);
        CHECK(back[0].equal_to_theta(x, 30));
        // linearity
        std::mt19937_64 g(q);
        for (int it = 0; it < 5; ++it) {
            std::vector<FqElem> ca(6), cb(6);
            for (auto& c : ca) c = F->element(static_cast<std::uint32_t>(g() % q));
            for (auto& c : cb) c = F->element(static_cast<std::uint32_t>(g() % q));
            ca[0] = cb[0] = F->one();
            LaurentSeries a(F, -1, ca, 40), b(F, 0, cb, 40);
            const FqElem c = F->element(static_cast<std::uint32_t>(1 + g() % (q - 1)));
            auto ea = exp_eval(C, lie({a}), 30)[0], eb = exp_eval(C, lie({b}), 30)[0];
            CHECK(exp_eval(C, lie({a + b}), 30)[0].equal_to_theta(ea + eb, 30));
            CHECK(exp_eval(C, lie({a.scaled(c)}), 30)[0].equal_to_theta(ea.scaled(c), 30));
        }
        // π̃ is a period
        auto pi = carlitz_period(F, 40);
        auto e = exp_eval(C, lie({pi}), 30);
        CHECK(e[0].is_zero());
        CHECK(e[0].theta_precision() >= 30);
        auto P = quasi_periods(C, {pi}, 30);
        REQUIRE(P.rows.size() == 1);
        REQUIRE(P.rows[0].size() == 1);
        CHECK(P.rows[0][0] == -pi);
        auto lr = legendre_ratio(P, 2);
        CHECK(lr.in_kinf);
        CHECK(lr.reconstruction.ok);
        CHECK(lr.reconstruction.value == RationalFn::one(F).scaled(F->neg(F->one())));
        CHECK_THROWS_AS(quasi_periods(C, {LaurentSeries::one(F).to_kummer()}, 30), DomainError);
    }
    // divergence: Log outside its radius
    auto F = Fq::make(3);
    auto C = make_drinfeld(F, {k(F, 1)});
    CHECK_THROWS_AS(log_eval(C, lie({LaurentSeries::theta(F).pow(3)}), 20), ConvergenceError);
}

TEST_CASE("Anderson generating functions") {
    for (std::uint32_t q : {2u, 3u}) {
        auto F = Fq::make(q);
        auto C = make_drinfeld(F, {k(F, 1)});
        const LieVec w{LaurentSeries::theta(F).inv()};
        auto G = agf(C, w, 10, 25);
        CHECK(agf_identity_holds(C, G, exp_eval(C, w, 30), 25));
        auto G2 = agf(C, w, 15, 25);
        for (int i = 0; i <= 10; ++i) CHECK(G2.series[0].coeff(static_cast<std::size_t>(i)) == G.series[0].coeff(static_cast<std::size_t>(i)));
        auto Z = agf(C, LieVec{LaurentSeries::zero(F)}, 5, 20);
        for (const auto& c : Z.series[0].coeffs()) CHECK(c.is_zero());
        CHECK(agf_identity_holds(C, Z, LieVec{LaurentSeries::zero(F)}, 20));
    }
    std::mt19937_64 g(31);
    auto F = Fq::make(3);
    auto phi = make_drinfeld(F, {rf(F, {1, 1}), k(F, 2)});
    std::vector<TModule> mods{make_drinfeld(F, {k(F, 1)}), make_carlitz_tensor(F, 2, k(F, 1)), phi, make_g_n(phi, 1),
                              make_wedge_tensor(phi, 1)};
    for (int it = 0; it < 20; ++it) {
        const TModule& G = mods[static_cast<std::size_t>(it) % mods.size()];
        CAPTURE(G.describe());
        LieVec w;
        for (std::size_t j = 0; j < G.dim(); ++j) {
            std::vector<FqElem> c(5);
            for (auto& x : c) x = F->element(static_cast<std::uint32_t>(g() % 3));
            c[0] = F->one();
            w.emplace_back(F, static_cast<std::int64_t>(g() % 3), c, 60);
        }
        SeriesEvaluator ev(G, SeriesKind::exp);
        auto A = agf(G, w, 8, 20, &ev);
        CHECK(agf_identity_holds(G, A, ev(w, 30), 20));
    }
}
