#include <random>

#include "doctest.h"
#include "drinfeld/ffield.hpp"
#include "drinfeld/fq.hpp"
#include "drinfeld/laurent.hpp"
#include "drinfeld/poly.hpp"

using namespace drinfeld;

namespace {

FqElem rnd(const Fq& F, std::mt19937_64& g) { return F.element(static_cast<std::uint32_t>(g() % F.q())); }

Poly rnd_poly(const FieldPtr& F, int deg, std::mt19937_64& g, Var x = Var::theta) {
    std::vector<FqElem> c(static_cast<std::size_t>(deg + 1));
    for (auto& e : c) e = rnd(*F, g);
    return Poly(F, c, x);
}

}  // namespace

TEST_CASE("F_q basics") {
    auto F2 = Fq::make(2);
    CHECK(F2->add(F2->one(), F2->one()) == F2->zero());

    auto F4 = Fq::make(4);
    REQUIRE(F4->spec().modulus == std::vector<std::uint32_t>{1, 1, 1});
    const FqElem g = F4->from_coords({0, 1});
    CHECK(F4->mul(g, g) == F4->from_coords({1, 1}));

    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u, 81u, 121u, 125u, 128u, 169u, 243u, 256u, 625u}) {
        CAPTURE(q);
        auto F = Fq::make(q);
        std::mt19937_64 gen(q);
        for (int it = 0; it < 200; ++it) {
            FqElem a = rnd(*F, gen), b = rnd(*F, gen), c = rnd(*F, gen);
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
            CHECK(F->sub(F->add(a, b), b) == a);
            if (a.v) CHECK(F->mul(a, F->inv(a)) == F->one());
            CHECK(F->frobenius_power(a, static_cast<std::int64_t>(F->m()) * 3) == a);
            CHECK(F->frobenius_power(F->frobenius_power(a, 1), -1) == a);
            CHECK(F->frobenius_power(a, 1) == F->pow(a, F->p()));
            CHECK(F->pow(a, F->q()) == a);
        }
        // the coordinate g generates F_q^* for the tabulated moduli
        if (F->m() > 1) {
            const FqElem g1 = F->from_coords({0, 1});
            std::uint32_t order = 1;
            FqElem x = g1;
            while (x != F->one()) {
                x = F->mul(x, g1);
                ++order;
            }
            CHECK(order == q - 1);
        }
    }
    CHECK_THROWS_AS(F2->inv(F2->zero()), DomainError);
    CHECK_THROWS_AS(Fq::make(6), DomainError);
    CHECK_THROWS_AS(Fq::make(FieldSpec{2, 2, {1, 0, 1}}), DomainError);
}

TEST_CASE("polynomial arithmetic") {
    auto F3 = Fq::make(3);
    Poly a = Poly::from_ints(F3, {1, 1}), b = Poly::from_ints(F3, {2, 1});
    CHECK(a * b == Poly::from_ints(F3, {2, 0, 1}));
    Poly th = Poly::variable(F3);
    CHECK(gcd(th * th - th, th) == th);
    Poly f = Poly::from_ints(F3, {1, 1, 1});
    Poly ft = f.substitute(Var::t);
    CHECK(ft.var() == Var::t);
    CHECK(ft.str() == "t^2 + t + 1");
    CHECK_THROWS_AS(f + ft, DomainError);
    CHECK_THROWS_AS(divmod(a, Poly(F3)), DomainError);

    std::mt19937_64 g(7);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto F = Fq::make(q);
        for (int it = 0; it < 50; ++it) {
            Poly x = rnd_poly(F, static_cast<int>(g() % 9), g), y = rnd_poly(F, static_cast<int>(g() % 6), g);
            Poly z = rnd_poly(F, 3, g);
            CHECK(x * (y + z) == x * y + x * z);
            if (!y.is_zero()) {
                auto [qq, r] = divmod(x, y);
                CHECK(qq * y + r == x);
                CHECK(r.degree() < y.degree());
            }
            XGcd e = xgcd(x, y);
            CHECK(e.u * x + e.v * y == e.g);
            CHECK(x.twist(1) == pow(x, q));
            CHECK(x.twist(2).twist(-1) == x.twist(1));
        }
    }
}

TEST_CASE("monic irreducibles") {
    auto F2 = Fq::make(2);
    auto F3 = Fq::make(3);
    auto d2 = monic_irreducibles(F2, 2);
    REQUIRE(d2.size() == 1);
    CHECK(d2[0] == Poly::from_ints(F2, {1, 1, 1}));
    auto d1 = monic_irreducibles(F3, 1);
    REQUIRE(d1.size() == 3);
    CHECK(d1[0] == Poly::from_ints(F3, {0, 1}));
    CHECK(d1[1] == Poly::from_ints(F3, {1, 1}));
    CHECK(d1[2] == Poly::from_ints(F3, {2, 1}));
    CHECK(monic_irreducibles(F2, 3).size() == 2);
    CHECK(necklace_count(2, 3) == 2);

    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        auto F = Fq::make(q);
        for (int d = 1; d <= 8; ++d) {
            CAPTURE(q);
            CAPTURE(d);
            auto irr = monic_irreducibles(F, d);
            CHECK(irr.size() == necklace_count(q, d));
            if (d <= 4)
                for (const auto& f : irr) CHECK(is_irreducible(f));
        }
    }
}

TEST_CASE("rational functions") {
    auto F = Fq::make(5);
    std::mt19937_64 g(11);
    for (int it = 0; it < 50; ++it) {
        Poly n1 = rnd_poly(F, 3, g), d1 = rnd_poly(F, 2, g), n2 = rnd_poly(F, 2, g), d2 = rnd_poly(F, 3, g);
        if (d1.is_zero() || d2.is_zero()) continue;
        RationalFn a(n1, d1), b(n2, d2);
        CHECK(a.den().is_monic());
        CHECK(gcd(a.num(), a.den()).is_one());
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        CHECK(a.twist(1) == a.pow(5));
    }
}

TEST_CASE("Laurent series") {
    auto F = Fq::make(3);
    auto th = LaurentSeries::theta(F);
    auto u = LaurentSeries::monomial(F, F->one(), 1).truncated(20);
    auto one = u * th;
    CHECK(one.equal_to(LaurentSeries::one(F), 20 - 1));
    CHECK(one.precision() == 19);

    // 1/(θ - 1) = θ^{-1} + θ^{-2} + ...
    auto s = LaurentSeries::from_poly(Poly::from_ints(F, {-1, 1})).inv(12);
    CHECK(s.valuation() == 1);
    CHECK(s.precision() == 12);
    for (int k = 1; k < 12; ++k) CHECK(s.coeff(k) == F->one());

    auto p = LaurentSeries::from_poly(Poly::from_ints(F, {1, 0, 1}));
    CHECK(p.norm() == QExponent(2));

    CHECK_THROWS_AS(LaurentSeries::zero(F, 10).inv(), PrecisionError);

    // precision soundness: lower precision result is the truncation of a higher one
    std::mt19937_64 g(3);
    for (std::uint32_t q : {2u, 3u, 4u}) {
        auto Fq_ = Fq::make(q);
        for (int it = 0; it < 30; ++it) {
            std::vector<FqElem> ca(12), cb(12);
            for (auto& c : ca) c = rnd(*Fq_, g);
            for (auto& c : cb) c = rnd(*Fq_, g);
            ca[0] = Fq_->one();
            cb[0] = Fq_->one();
            LaurentSeries a(Fq_, -2, ca, 30), b(Fq_, 1, cb, 25);
            auto lo = (a * b.inv() + a).truncated(10);
            auto hi = (a.truncated(20) * b.truncated(22).inv() + a.truncated(20)).truncated(10);
            CHECK(lo == hi);
            CHECK((a * b).twist(1) == a.twist(1) * b.twist(1));
            CHECK(a.twist(2).twist(-2).equal_to(a, 30));
        }
    }
}

TEST_CASE("Kummer extension") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        CAPTURE(q);
        auto F = Fq::make(q);
        const int e = static_cast<int>(q) - 1;
        auto eta = LaurentSeries::eta(F);
        auto th = LaurentSeries::theta(F, e);
        // η^{q-1} = -θ
        CHECK(eta.pow(e) == -th);
        CHECK(eta * eta.pow(e - 1) == -th);
        for (int a = 1; a < 4; ++a) CHECK(eta.pow(a).pow(e) == (-th).pow(a));
        CHECK(eta.norm() == QExponent(1, e));
        // components of η^k
        for (int k = 0; k < e; ++k) {
            auto comp = eta.pow(k).kummer_components();
            for (int j = 0; j < e; ++j) CHECK(comp[static_cast<std::size_t>(j)].is_exact_zero() == (j != k));
        }
        auto x = LaurentSeries::from_poly(Poly::from_ints(F, {1, 2, 1})).inv(15);
        CHECK(x.to_kummer().project_to_kinf() == x);
        if (q > 2) {
            CHECK_THROWS_AS(eta.project_to_kinf(), DomainError);
        }
    }
    auto F3 = Fq::make(3);
    auto eta = LaurentSeries::eta(F3);
    auto one = LaurentSeries::one(F3, 2);
    auto sq = (eta + one).pow(2);
    auto comp = sq.kummer_components();
    CHECK(comp[0] == LaurentSeries::from_poly(Poly::from_ints(F3, {1, -1})));
    CHECK(comp[1] == LaurentSeries::from_poly(Poly::from_ints(F3, {2})));
    auto back = LaurentSeries::from_kummer_components(comp);
    CHECK(back == sq);
}

TEST_CASE("rational reconstruction") {
    auto F = Fq::make(3);
    RationalFn f(Poly::from_ints(F, {1, 1}), Poly::from_ints(F, {0, 0, 1}));
    auto s = LaurentSeries::from_rational(f, 10);
    auto r = rational_reconstruct(s, 3);
    REQUIRE(r.ok);
    CHECK(r.value == f);
    auto r1 = rational_reconstruct(LaurentSeries::one(F).truncated(12), 4);
    REQUIRE(r1.ok);
    CHECK(r1.value == RationalFn::one(F));
    CHECK_THROWS_AS(rational_reconstruct(s, 6), PrecisionError);

    std::mt19937_64 g(2024);
    int done = 0;
    const std::uint32_t qs[] = {2, 3, 5};
    while (done < 200) {
        auto Fq_ = Fq::make(qs[done % 3]);
        const int dn = static_cast<int>(g() % 7), dd = static_cast<int>(g() % 7);
        Poly n = rnd_poly(Fq_, dn, g), d = rnd_poly(Fq_, dd, g);
        if (d.is_zero()) continue;
        RationalFn h(n, d);
        const int deg = std::max(h.num().degree(), h.den().degree());
        auto ex = LaurentSeries::from_rational(h, 2 * 6 + 2 + 4);
        auto rr = rational_reconstruct(ex, std::max(deg, 0));
        CHECK(rr.ok);
        CHECK(rr.value == h);
        ++done;
    }
    CHECK(done == 200);
}
