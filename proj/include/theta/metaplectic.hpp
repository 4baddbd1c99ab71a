#pragma once

#include <vector>

#include "theta/context.hpp"

namespace theta {

/// One generator of Sp_2g(Z/nZ): B(A) = [[A,0],[0,A^-T]], S(C) = [[1,0],[C,1]]
/// with C symmetric, or H = [[0,1],[-1,0]].
struct SpGenerator {
    enum class Kind { B, S, H } kind;
    std::vector<std::uint32_t> mat; // g x g block for B and S, empty for H
};

/// Word in the three generator families whose left-to-right product is the
/// decomposed matrix.
struct GeneratorWord {
    std::uint32_t n = 0;
    unsigned g = 0;
    std::vector<SpGenerator> gens;

    SymplecticMap replay() const;
};

/// Deterministic decomposition by Gaussian reduction (invertible-A, then
/// invertible-C via H, then the rank pivot construction).  Prime-power n.
GeneratorWord sp_decompose(const SymplecticMap& m);

/// Branch choices for the S(C) square roots; empty = canonical roots.
struct BranchChoices {
    std::vector<Fe> s_seeds; // per-coordinate seed values, size g when present
};

/// Action of one generator on a null point plus any carried points.  The
/// global scalar is fixed to 1; outputs are meant to be compared projectively.
void act_generator(CtxPtr& ctx, std::vector<AffinePoint>& points, const SpGenerator& gen,
                   const BranchChoices& branches = {});

/// Algorithm: decompose M and fold the generator actions.
std::pair<CtxPtr, std::vector<AffinePoint>>
act_symplectic(const CtxPtr& ctx, const SymplecticMap& m, std::vector<AffinePoint> points = {},
               const BranchChoices& branches = {});

/// Action of c = (c1, c2) in K(2), as bit vectors: out[i] = c2(i) in[i - c1].
AffinePoint act_k2(const AffinePoint& pt, const std::vector<bool>& c1_bits,
                   const std::vector<bool>& c2_bits);
CtxPtr act_k2_ctx(const CtxPtr& ctx, const std::vector<bool>& c1_bits,
                  const std::vector<bool>& c2_bits);

/// All 4^g points of the K(2)-orbit of pt (used for orbit-modulo comparisons).
std::vector<AffinePoint> k2_orbit(const AffinePoint& pt);

} // namespace theta
