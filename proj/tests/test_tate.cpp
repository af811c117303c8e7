#include <random>

#include "doctest.h"
#include "drinfeld/tate.hpp"

using namespace drinfeld;

namespace {

LaurentSeries rnd_laurent(const FieldPtr& F, std::mt19937_64& g, std::int64_t val, int len, std::int64_t prec) {
    std::vector<FqElem> c(static_cast<std::size_t>(len));
    for (auto& x : c) x = F->element(static_cast<std::uint32_t>(g() % F->q()));
    c[0] = F->one();
    return LaurentSeries(F, val, c, prec);
}

TateSeries rnd_tate(const FieldPtr& F, std::mt19937_64& g, int T) {
    std::vector<LaurentSeries> c;
    for (int i = 0; i <= T; ++i) c.push_back(rnd_laurent(F, g, static_cast<std::int64_t>(g() % 5) - 2 + i, 6, 40));
    return TateSeries(F, c, T);
}

LaurentSeries poly_ls(const FieldPtr& F, std::initializer_list<std::int64_t> c) { return LaurentSeries::from_poly(Poly::from_ints(F, c)); }

}  // namespace

TEST_CASE("Tate series basics") {
    auto F = Fq::make(3);
    const auto th = LaurentSeries::theta(F);
    const auto one = LaurentSeries::one(F);
    // ‖θ + t/θ‖ = q
    auto f = TateSeries::polynomial(F, {th, th.inv()});
    CHECK(f.gauss_norm() == QExponent(1));
    // twist(c t, 1) = c^q t
    auto ct = TateSeries::polynomial(F, {LaurentSeries::zero(F), poly_ls(F, {1, 1})});
    CHECK(ct.twist(1).coeff(1) == poly_ls(F, {1, 0, 0, 1}));
    CHECK(ct.twist(1).twist(-1).coeff(1) == ct.coeff(1));
    // eval(t - θ) = 0
    auto tmt = TateSeries::polynomial(F, {-th, one});
    CHECK(tmt.eval_at_theta().is_exact_zero());
    // eval(Σ θ^{-2i} t^i) = Σ θ^{-i}
    std::vector<LaurentSeries> geo;
    for (int i = 0; i <= 20; ++i) geo.push_back(LaurentSeries::monomial(F, F->one(), 2 * i));
    auto v = TateSeries(F, geo, 20).eval_at_theta();
    CHECK(v.precision() == 21);
    CHECK(v.equal_to(poly_ls(F, {-1, 1}).inv(40).shifted(-1).truncated(21), 21));
    // divergent: Σ t^i
    std::vector<LaurentSeries> ones(10, one);
    CHECK_THROWS_AS(TateSeries(F, ones, 9).eval_at_theta(), ConvergenceError);
}

TEST_CASE("hyperderivatives") {
    auto F3 = Fq::make(3);
    auto F2 = Fq::make(2);
    auto t2 = [](const FieldPtr& F) {
        return TateSeries::polynomial(F, {LaurentSeries::zero(F), LaurentSeries::zero(F), LaurentSeries::one(F)});
    };
    auto d3 = t2(F3).hyperderivative(1);
    REQUIRE(d3.size() == 2);
    CHECK(d3.coeff(1) == LaurentSeries::monomial(F3, F3->from_int(2), 0));
    CHECK(t2(F2).hyperderivative(1).size() == 0);
    for (int j = 0; j < 12; ++j) {
        std::vector<LaurentSeries> c(static_cast<std::size_t>(j) + 1, LaurentSeries::zero(F3));
        c.back() = LaurentSeries::one(F3);
        auto d = TateSeries::polynomial(F3, c).hyperderivative(j);
        CHECK(d.coeff(0) == LaurentSeries::one(F3));
    }
    CHECK(binomial_mod_p(10, 3, 3) == 0);
    CHECK(binomial_mod_p(10, 1, 3) == 1);
    CHECK(binomial_mod_p(7, 3, 5) == (35 % 5));
    CHECK(binomial_mod_p(8, 4, 7) == (70 % 7));

    std::mt19937_64 g(5);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto F = Fq::make(q);
        for (int it = 0; it < 5; ++it) {
            auto a = rnd_tate(F, g, 8), b = rnd_tate(F, g, 8);
            for (int j = 0; j <= 5; ++j) {
                auto lhs = (a * b).hyperderivative(j);
                auto rhs = TateSeries::zero(F, 8 - j);
                for (int k = 0; k <= j; ++k) rhs += a.hyperderivative(k) * b.hyperderivative(j - k);
                CHECK(lhs.equal_to(rhs, 8 - j, 30));
                // ∂^a ∘ ∂^b = C(a+b, a) ∂^{a+b}
                for (int k = 0; k <= j; ++k) {
                    auto comp = a.hyperderivative(k).hyperderivative(j - k);
                    auto sc = a.hyperderivative(j) * LaurentSeries::monomial(F, F->from_int(binomial_mod_p(j, k, F->p())), 0);
                    CHECK(comp.equal_to(sc, 8 - j, 30));
                }
            }
            CHECK((a * b).twist(1).equal_to(a.twist(1) * b.twist(1), 8, 30));
            CHECK((a + b).twist(2).equal_to(a.twist(2) + b.twist(2), 8, 60));
            CHECK(((a * b).gauss_norm() == QExponent(a.gauss_norm().num + b.gauss_norm().num)));
        }
    }
}

TEST_CASE("eval_at_theta is a ring homomorphism") {
    std::mt19937_64 g(9);
    for (std::uint32_t q : {2u, 3u, 5u}) {
        auto F = Fq::make(q);
        for (int it = 0; it < 10; ++it) {
            // coefficients of valuation >= 2i + 1 converge at θ
            std::vector<LaurentSeries> ca, cb;
            for (int i = 0; i <= 15; ++i) {
                ca.push_back(rnd_laurent(F, g, 2 * i + 1, 8, 60));
                cb.push_back(rnd_laurent(F, g, 2 * i, 8, 60));
            }
            TateSeries a(F, ca, 15), b(F, cb, 15);
            auto ea = a.eval_at_theta(), eb = b.eval_at_theta(), eab = (a * b).eval_at_theta();
            const std::int64_t P = std::min({ea.precision(), eb.precision(), eab.precision()});
            CHECK(P >= 14);
            CHECK(eab.equal_to(ea * eb, P));
            CHECK((a + b).eval_at_theta().equal_to(ea + eb, P));
        }
    }
}

TEST_CASE("Omega and the Carlitz period") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        CAPTURE(q);
        auto F = Fq::make(q);
        const int e = static_cast<int>(q) - 1;
        const int T = 12;
        const std::int64_t M = 40;
        auto om = omega(F, T, q * (M + 1));
        const auto& W = om.series;
        CHECK(W.gauss_norm() == QExponent(-static_cast<std::int64_t>(q), e));
        // leading coefficient η^{-q} times a 1-unit
        CHECK(W.coeff(0).valuation() == static_cast<std::int64_t>(q));
        CHECK(W.coeff(0).shifted(-static_cast<std::int64_t>(q)).is_one_unit());
        // Ω^{(-1)} = (t - θ) Ω
        auto tmt = TateSeries::polynomial(F, {-LaurentSeries::theta(F, e), LaurentSeries::one(F, e)}, e);
        CHECK(W.twist(-1).equal_to(tmt * W, T, M));
        // unit in the Tate algebra
        auto u = W * W.inverse() - TateSeries::polynomial(F, {LaurentSeries::one(F, e)}, e);
        CHECK(u.equal_to(TateSeries::zero(F, T, e), T, M));
        // a wrong sign must break the identity
        auto tpt = TateSeries::polynomial(F, {LaurentSeries::theta(F, e), LaurentSeries::one(F, e)}, e);
        CHECK(W.twist(-1).equal_to(tpt * W, T, M) == (F->p() == 2));
    }
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        CAPTURE(q);
        auto F = Fq::make(q);
        const int e = static_cast<int>(q) - 1;
        const std::int64_t M = 30;
        auto pi = carlitz_period(F, M);
        CHECK(pi.theta_precision() >= M);
        CHECK(pi.norm() == QExponent(static_cast<std::int64_t>(q), e));
        auto om = omega(F, 12, M + 14).series;
        auto alt = -om.eval_at_theta().inv();
        CHECK(pi.equal_to_theta(alt, M));
        auto pw = pi.pow(e).project_to_kinf();
        CHECK(pw.ramification() == 1);
    }
}
