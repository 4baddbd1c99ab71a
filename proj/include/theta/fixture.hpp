#pragma once

#include "theta/serialize.hpp"
#include "theta/transform.hpp"

namespace theta {

/// Desk-scale fixture generator for g = 1, m = 2: a random nondegenerate null
/// point over F_p (p = 1 mod 2n) whose Kummer line carries a fully rational
/// symplectic n-torsion basis.  Deterministic for a given seed; the oracle
/// block records the Legendre-model dictionary data.
FixtureBundle fixture_gen(std::uint64_t p, std::uint32_t n, std::uint64_t seed);

/// g = 2 product fixture from two elliptic bundles over the same field.
FixtureBundle product_fixture(const FixtureBundle& a, const FixtureBundle& b);

/// Level-4 bundle derived from a level-2 bundle with 2n-torsion: the context
/// is the change-of-level image, the basis the images of the input basis.
FixtureBundle derive_level4_bundle(const FixtureBundle& b2, std::uint64_t seed);

/// Fractional-linear map determined by three source/target pairs; used for
/// the theta <-> Legendre x-line dictionary.
struct Mobius {
    // (a z + b) / (c z + d) on column vectors (z : w)
    Fe a, b, c, d;
    std::pair<Fe, Fe> apply(const Fe& z, const Fe& w) const;
};

/// Map sending the three points (given projectively as coordinate pairs) to
/// infinity, zero and one respectively.
Mobius mobius_to_std(const std::pair<Fe, Fe>& to_inf, const std::pair<Fe, Fe>& to_zero,
                     const std::pair<Fe, Fe>& to_one);

/// x-line value of a level-2, g = 1 point under the bundle's dictionary:
/// the branch points (a:b), (b:a), (a:-b) go to infinity, 0, 1.
std::pair<Fe, Fe> kummer_to_legendre(const CtxPtr& ctx, const AffinePoint& pt);

/// The Legendre parameter (image of the fourth branch point (b:-a)).
Fe legendre_lambda(const CtxPtr& ctx);

} // namespace theta
