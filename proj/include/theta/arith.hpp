#pragma once

#include <map>
#include <optional>
#include <vector>

#include "theta/context.hpp"

namespace theta {

/// Registers of the Montgomery-style ladder: lifts of kx, (k+1)x, kx+y,
/// (k+1)x+y for the current prefix k of the scalar.
struct LadderState {
    AffinePoint kx;
    AffinePoint kx1;
    AffinePoint kxy;
    AffinePoint kxy1;
};

/// x+y from lifts of x, y, x-y and a lift of 0 via the Riemann relations.
/// Exact in the gauge diff_add(x,0,x,0) = x; scales as a^2 b^2/(c d^2) under
/// input scaling (a,b,c,d).
AffinePoint diff_add(const AffinePoint& x, const AffinePoint& y,
                     const AffinePoint& xmy, const AffinePoint& zero);

/// x+y+z from lifts of x+y, y+z, x+z, x, y, z, 0.  Reduces to the diff_add
/// gauge when z = 0.
AffinePoint three_way_add(const AffinePoint& xy, const AffinePoint& yz,
                          const AffinePoint& xz, const AffinePoint& x,
                          const AffinePoint& y, const AffinePoint& z,
                          const AffinePoint& zero);

/// l*x + y from lifts of x+y, x, y, 0.  l = 0 gives y, l = 1 gives x+y.
AffinePoint scalar_mult(std::uint64_t ell, const AffinePoint& xy, const AffinePoint& x,
                        const AffinePoint& y, const AffinePoint& zero);

/// Normal (projective) addition.  For m = 2 the result is the unordered pair
/// {x+y, x-y}; for 4 | m it is the single class of x+y followed by x-y.
std::vector<AffinePoint> normal_add(const AffinePoint& x, const AffinePoint& y,
                                    const AffinePoint& zero);

/// Affine lift of sum_i coeffs[i] * e_i from basis lifts and the pairwise
/// chain lifts e_i + e_j (key (i,j), i < j).  Deterministic ladder schedule:
/// coordinates folded in increasing order.
AffinePoint linear_combination(const std::vector<std::uint64_t>& coeffs,
                               const std::vector<AffinePoint>& basis,
                               const std::map<std::pair<unsigned, unsigned>, AffinePoint>& chain,
                               const AffinePoint& zero);

/// Commutator (Weil) pairing of l-torsion points P, Q given a lift of P+Q:
/// the ratio alpha/beta of the ladder return scalars.  Lift-independent.
Fe weil_pairing(const AffinePoint& p, const AffinePoint& q, const AffinePoint& pq,
                std::uint64_t ell, const AffinePoint& zero);

} // namespace theta
