#include "doctest.h"

#include "theta/fixture.hpp"

using namespace theta;

TEST_CASE("fixture generation p=17 n=4") {
    FixtureBundle b = fixture_gen(17, 4, 1);
    CHECK(b.ctx->m() == 2);
    CHECK(b.basis.n == 4);
    CHECK(validate_null(*b.ctx).ok);
    AffinePoint zero = b.ctx->null_point();
    for (const auto& tp : b.basis.e) {
        AffinePoint s = scalar_mult(4, tp.pt, tp.pt, zero, zero);
        CHECK(projectively_equal(s, zero));
        AffinePoint h = scalar_mult(2, tp.pt, tp.pt, zero, zero);
        CHECK(!projectively_equal(h, zero));
    }
    // side tags
    AffinePoint zpt = theta_act_x(zero, IndexVector(2, {1}));
    AffinePoint dpt = theta_act_y(zero, DualIndex(2, {1}));
    AffinePoint d1 = scalar_mult(2, b.basis.e[0].pt, b.basis.e[0].pt, zero, zero);
    AffinePoint d2 = scalar_mult(2, b.basis.e[1].pt, b.basis.e[1].pt, zero, zero);
    CHECK(projectively_equal(d1, zpt));
    CHECK(projectively_equal(d2, dpt));
    // determinism
    FixtureBundle b2 = fixture_gen(17, 4, 1);
    CHECK(b2.ctx->null_point().c == b.ctx->null_point().c);
    CHECK(b2.basis.e[0].pt.c == b.basis.e[0].pt.c);
    FixtureBundle b3 = fixture_gen(17, 4, 2);
    CHECK(b3.ctx->null_point().c != b.ctx->null_point().c);
    // precondition
    CHECK_THROWS_AS(fixture_gen(19, 4, 1), PreconditionViolated); // 19 != 1 mod 8
}

TEST_CASE("fixture generation p=97 n=4") {
    FixtureBundle b = fixture_gen(97, 4, 1);
    CHECK(validate_null(*b.ctx).ok);
    AffinePoint zero = b.ctx->null_point();
    Fe e = weil_pairing(b.basis.e[0].pt, b.basis.e[1].pt, b.basis.chain.at({0, 1}), 4, zero);
    CHECK(element_order(e) == 4);
    CHECK(e == b.ctx->zeta(4));
}

TEST_CASE("fixture generation p=257 n=8") {
    FixtureBundle b = fixture_gen(257, 8, 1);
    CHECK(validate_null(*b.ctx).ok);
    AffinePoint zero = b.ctx->null_point();
    Fe e = weil_pairing(b.basis.e[0].pt, b.basis.e[1].pt, b.basis.chain.at({0, 1}), 8, zero);
    CHECK(element_order(e) == 8);
    CHECK(e == b.ctx->zeta(8));
}

TEST_CASE("product fixture g=2") {
    FixtureBundle a = fixture_gen(17, 4, 1);
    FixtureBundle c = fixture_gen(17, 4, 2);
    FixtureBundle p = product_fixture(a, c);
    CHECK(p.ctx->g() == 2);
    CHECK(p.ctx->coord_count() == 4);
    CHECK(validate_null(*p.ctx).ok);
    AffinePoint zero = p.ctx->null_point();
    for (const auto& tp : p.basis.e) {
        AffinePoint s = scalar_mult(4, tp.pt, tp.pt, zero, zero);
        CHECK(projectively_equal(s, zero));
    }
    // chain lifts are lifts of the right sums: order checks via pairings
    Fe e13 = weil_pairing(p.basis.e[0].pt, p.basis.e[2].pt, p.basis.chain.at({0, 2}), 4, zero);
    CHECK(element_order(e13) == 4);
    Fe e12 = weil_pairing(p.basis.e[0].pt, p.basis.e[1].pt, p.basis.chain.at({0, 1}), 4, zero);
    CHECK(e12 == Fe::one(p.ctx->field()));
}
