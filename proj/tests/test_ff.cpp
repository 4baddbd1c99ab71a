#include "doctest.h"

#include "theta/ff.hpp"

using namespace theta;

namespace {
FieldPtr f17() {
    static FieldPtr f = FieldSpec::make(17);
    return f;
}
FieldPtr f17_2() {
    // F_17[t]/(t^2 - 3); 3 is a non-residue mod 17
    static FieldPtr f = FieldSpec::make(17, 2, {14, 0, 1});
    return f;
}
} // namespace

TEST_CASE("prime field arithmetic") {
    auto f = f17();
    Fe a(f, 3), b(f, 5);
    CHECK(a * b == Fe(f, 15));
    CHECK((a - a).is_zero());
    CHECK(Fe(f, 2).pow(16) == Fe::one(f));
    CHECK(a * (Fe::one(f) / a) == Fe::one(f));
    CHECK_THROWS_AS(a / Fe::zero(f), DivisionByZero);
}

TEST_CASE("field spec validation") {
    CHECK_THROWS_AS(FieldSpec::make(16), PreconditionViolated);
    CHECK_THROWS_AS(FieldSpec::make(2), PreconditionViolated);
    // t^2 - 1 = (t-1)(t+1) is reducible
    CHECK_THROWS_AS(FieldSpec::make(17, 2, {16, 0, 1}), PreconditionViolated);
}

TEST_CASE("extension arithmetic and inversion") {
    auto f = f17_2();
    Fe t(f, {0, 1});
    CHECK(t * t == Fe(f, 3)); // t^2 = 3
    Fe x(f, {5, 7});
    CHECK(x * x.inv() == Fe::one(f));
    CHECK(x.pow(17 * 17 - 1) == Fe::one(f));
    for (std::uint64_t r = 1; r < 50; ++r) {
        Fe y = Fe::from_rank(f, r);
        if (y.is_zero()) continue;
        CHECK(y * y.inv() == Fe::one(f));
    }
}

TEST_CASE("primitive roots of unity") {
    auto f = f17();
    CHECK(primitive_root_of_unity(f, 1) == Fe::one(f));
    CHECK(primitive_root_of_unity(f, 2) == Fe(f, 16));
    CHECK(primitive_root_of_unity(f, 4) == Fe(f, 4));
    CHECK_THROWS_AS(primitive_root_of_unity(f, 3), NoSuchRoot);
    for (std::uint64_t ord : {2ull, 4ull, 8ull, 16ull}) {
        Fe z = primitive_root_of_unity(f, ord);
        CHECK(z.pow((std::int64_t)ord) == Fe::one(f));
        CHECK(element_order(z) == ord);
    }
}

TEST_CASE("square roots") {
    auto f = f17();
    CHECK(square_root(Fe::one(f)) == Fe::one(f));
    CHECK(square_root(Fe(f, 16)) == Fe(f, 4)); // canonical branch: 4 < 13
    CHECK_THROWS_AS(square_root(Fe(f, 3)), NotASquare);
    for (std::uint64_t r = 1; r < 17; ++r) {
        Fe a(f, r);
        if (!is_square(a)) continue;
        Fe s = square_root(a);
        CHECK(s * s == a);
        CHECK((s.encoding_less(-s) || s == -s));
    }
    auto f2 = f17_2();
    // every element of F_{q} is a square in F_{q^2} or has a root there
    for (std::uint64_t r = 1; r < 40; ++r) {
        Fe a = Fe::from_rank(f2, r);
        if (a.is_zero() || !is_square(a)) continue;
        Fe s = square_root(a);
        CHECK(s * s == a);
    }
}

TEST_CASE("discrete log and nth roots") {
    auto f = f17();
    Fe g = field_generator(f);
    CHECK(element_order(g) == 16);
    Fe x(f, 13);
    CHECK(g.pow((std::int64_t)discrete_log(x)) == x);
    auto roots = nth_roots(Fe(f, 16), 4);
    CHECK(roots.size() == 4);
    for (const auto& r : roots) CHECK(r.pow(4) == Fe(f, 16));
    CHECK(nth_roots(Fe(f, 3), 2).empty());
}
