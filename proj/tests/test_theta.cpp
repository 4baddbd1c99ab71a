#include "doctest.h"

#include <random>

#include "theta/context.hpp"

using namespace theta;

namespace {
FieldPtr f17() {
    static FieldPtr f = FieldSpec::make(17);
    return f;
}
CtxPtr ctx_ab(std::uint64_t a, std::uint64_t b, std::uint64_t aux = 8) {
    auto f = f17();
    return ThetaContext::make(f, 1, 2, {Fe(f, a), Fe(f, b)}, aux);
}
HeisenbergElement rand_elem(const CtxPtr& ctx, std::mt19937_64& rng) {
    const auto& f = ctx->field();
    std::uint32_t m = ctx->m();
    return ctx->elem(Fe(f, 1 + rng() % (f->p() - 1)),
                     IndexVector(m, {(std::uint32_t)(rng() % m)}),
                     DualIndex(m, {(std::uint32_t)(rng() % m)}));
}
} // namespace

TEST_CASE("context construction guards") {
    auto f = f17();
    CHECK_THROWS_AS(ThetaContext::make(f, 1, 3, {Fe(f, 1), Fe(f, 2), Fe(f, 3)}),
                    PreconditionViolated);
    CHECK_THROWS_AS(ThetaContext::make(f, 1, 2, {Fe::zero(f), Fe::zero(f)}),
                    PreconditionViolated);
    auto ctx = ctx_ab(5, 2);
    CHECK(ctx->zeta(2) == Fe(f, 16));
    CHECK(ctx->zeta(4).pow(4) == Fe::one(f));
    CHECK_THROWS_AS(ctx->zeta(3), NoSuchRoot);
}

TEST_CASE("theta action") {
    auto ctx = ctx_ab(5, 2);
    auto f = ctx->field();
    AffinePoint nil = ctx->null_point();
    // identity acts trivially
    AffinePoint same = theta_act(nil, HeisenbergElement::identity(f, 2, 1));
    CHECK(same.c == nil.c);
    // index translation at m = 2 swaps the coordinates
    AffinePoint sw = theta_act_x(nil, IndexVector(2, {1}));
    CHECK(sw.c[0] == nil.c[1]);
    CHECK(sw.c[1] == nil.c[0]);
    // successive actions compose through the group law
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        auto h1 = rand_elem(ctx, rng), h2 = rand_elem(ctx, rng);
        AffinePoint lhs = theta_act(theta_act(nil, h1), h2);
        AffinePoint rhs = theta_act(nil, heisenberg_mul(h1, h2, ctx->zeta(2)));
        CHECK(lhs.c == rhs.c);
    }
}

TEST_CASE("inversion operator") {
    auto ctx = ctx_ab(5, 2);
    AffinePoint nil = ctx->null_point();
    CHECK(inv_point(nil).c == nil.c); // null point symmetry at m = 2
    std::mt19937_64 rng(5);
    auto f = ctx->field();
    AffinePoint pt(ctx, {Fe(f, 7), Fe(f, 11)});
    CHECK(inv_point(inv_point(pt)).c == pt.c);
    Fe lam(f, 9);
    CHECK(inv_point(pt.scaled(lam)).c == inv_point(pt).scaled(lam).c);
    (void)rng;
}

TEST_CASE("hadamard duality") {
    auto ctx = ctx_ab(5, 2);
    auto f = ctx->field();
    AffinePoint pt(ctx, {Fe(f, 7), Fe(f, 11)});
    AffinePoint h = hadamard_dual(pt);
    Fe half = Fe(f, 2).inv();
    CHECK(h.c[0] == (Fe(f, 7) + Fe(f, 11)) * half);
    CHECK(h.c[1] == (Fe(f, 7) - Fe(f, 11)) * half);
    // twice = (1/m^g) * Inv
    AffinePoint hh = hadamard_dual(h);
    CHECK(hh.c == inv_point(pt).scaled(half).c);
    // inverse transform recovers the input exactly
    CHECK(hadamard_dual_inverse(h).c == pt.c);
}

TEST_CASE("null point validation") {
    // every nondegenerate (a : b) is a level-2 null point
    auto rep = validate_null(*ctx_ab(5, 2));
    CHECK(rep.ok);
    // broken symmetry at m = 4 is caught
    auto f = f17();
    auto bad = ThetaContext::make(f, 1, 4, {Fe(f, 1), Fe(f, 2), Fe(f, 3), Fe(f, 4)}, 8);
    auto rep2 = validate_null(*bad);
    CHECK(!rep2.ok);
    CHECK(rep2.first_violation.find("symmetry") != std::string::npos);
}

TEST_CASE("riemann position helper") {
    const std::uint32_t n = 8;
    auto iv = [&](std::uint32_t v) { return IndexVector(n, {v}); };
    // (0, x+y, x+z, y+z) with certificate x+y+z
    std::uint32_t x = 1, y = 2, z = 3;
    auto out = riemann_position({iv(0), iv(x + y), iv(x + z), iv(y + z)}, iv(x + y + z));
    CHECK(out[4] == iv(x + y + z));
    CHECK(out[5] == -iv(z));
    CHECK(out[6] == -iv(y));
    CHECK(out[7] == -iv(x));
    // (x+y, x-y, 0, 0) with certificate -y
    auto out2 = riemann_position({iv(x + y), iv(x - y), iv(0), iv(0)}, -iv(y));
    CHECK(out2[4] == iv(x));
    CHECK(out2[5] == iv(x));
    CHECK(out2[6] == iv(y));
    CHECK(out2[7] == iv(y));
    // all zero with zero certificate
    auto out3 = riemann_position({iv(0), iv(0), iv(0), iv(0)}, iv(0));
    for (const auto& o : out3) CHECK(o.is_zero());
    CHECK_THROWS_AS(riemann_position({iv(1), iv(0), iv(0), iv(0)}, iv(0)), NotRiemannPosition);
}

TEST_CASE("orbit search") {
    auto ctx = ctx_ab(5, 2);
    AffinePoint probe = theta_act_y(ctx->null_point(), DualIndex(2, {1}));
    auto found = find_in_orbit(probe.scaled(Fe(ctx->field(), 7)));
    REQUIRE(found.has_value());
    CHECK(found->first.is_zero());
    CHECK(found->second == DualIndex(2, {1}));
}
