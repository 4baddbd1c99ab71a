#pragma once

#include "theta/lifts.hpp"

namespace theta {

/// d = sum a_j^2 with gcd(a_j, n) = 1, minimal number of parts.
struct SquaresDecomposition {
    std::uint32_t d = 0;
    std::vector<std::uint32_t> parts;
};

SquaresDecomposition sum_of_squares(std::uint32_t d, std::uint32_t n);

/// Prepared data for a change of level m -> n = m*d: good lifts of the two
/// halves of a compatible decomposition of B[n] (the dual half handled in the
/// Hadamard-conjugated coordinates).
struct LevelChangePlan {
    CtxPtr ctx;
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    SquaresDecomposition decomposition;
    GoodLift g1;         // Z-side lifts
    CtxPtr delta_ctx;    // context of the Hadamard-transformed null point
    GoodLift g2_delta;   // dual-side lifts, in the delta coordinates
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

/// Build the plan from a raw basis of B[n]: runs the basis repair, splits the
/// halves, renormalizes numberings and computes the good lifts.
LevelChangePlan build_level_change_plan(const CtxPtr& ctx, const TorsionBasis& basis,
                                        std::uint32_t d, std::uint64_t seed = 0,
                                        unsigned jobs = 1);

/// Level-n coordinates of x; projective output (the theorem's constant C is
/// not resolved).  alpha indexes the coordinate row used in the kernel sums.
struct LevelChangeResult {
    CtxPtr target;        // level-n context built from the image of the null point
    std::vector<Fe> coords; // when x != 0: the image of x, indexed by Z(n) rank
};

std::vector<Fe> change_level_coords(const LevelChangePlan& plan, const AffinePoint& x,
                                    const IndexVector& alpha);

LevelChangeResult change_level(const LevelChangePlan& plan, const AffinePoint& x);

} // namespace theta
