#pragma once

#include "theta/transform.hpp"

namespace theta {

/// Prepared d-isogeny f: B -> B/K in level-m coordinates.  Setup moves the
/// kernel into the standard Z-side position, repairs symmetric compatibility,
/// builds the good lift of G1 and computes the target null point.
struct IsogenyPlan {
    CtxPtr source;        // context after the symplectic move and repair
    SymplecticMap moved;  // matrix that brought K into standard position
    std::vector<bool> k2_flip; // character applied by the theta-structure repair
    std::uint32_t d = 0;
    std::uint32_t n = 0;
    SquaresDecomposition decomposition;
    GoodLift g1;
    CtxPtr target;        // level-m null point of B/K
    std::uint64_t seed = 0;

    /// carry a point of B given in the original coordinates into the
    /// coordinates of `source`
    AffinePoint carry(const AffinePoint& x) const;
};

IsogenyPlan isogeny_setup(const CtxPtr& ctx, const std::vector<AffinePoint>& kernel_gens,
                          const std::vector<AffinePoint>& group_gens,
                          const std::map<std::pair<unsigned, unsigned>, AffinePoint>& group_pairs,
                          std::uint32_t d, std::uint64_t seed = 0);

/// Image f(x) in level-m coordinates of the target; projective.
AffinePoint isogeny_eval(const IsogenyPlan& plan, const AffinePoint& x);

} // namespace theta
