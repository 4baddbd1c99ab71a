#pragma once

#include <map>

#include "theta/arith.hpp"
#include "theta/symcompat.hpp"

namespace theta {

/// Numbered subgroup data for a Z-side group G with Z(m)-orbit containment:
/// generators w_i with d * w_i = orbit((unit_i, 0)) and the pairwise sums.
struct NumberedGroup {
    CtxPtr ctx;
    std::uint32_t n = 0;
    std::vector<AffinePoint> gens;
    std::map<std::pair<unsigned, unsigned>, AffinePoint> pair_lifts;
};

/// Renormalize generators (integer recombinations) so that d*w_i is exactly
/// the orbit point of (unit_i, 0); rebuilds the pairwise sums.  The input
/// lifts must span a group containing the Z(m) orbit.
NumberedGroup canonicalize_numbering(const CtxPtr& ctx, const std::vector<AffinePoint>& gens,
                                     const std::map<std::pair<unsigned, unsigned>, AffinePoint>& pairs,
                                     std::uint32_t n);

/// Chain-basis lifts with the normalization scalars applied: the ladder
/// relation, the symmetry relation and the cross relations hold exactly.
struct ChainBasisLift {
    CtxPtr ctx;
    std::uint32_t n = 0;
    std::vector<AffinePoint> gens;   // lambda_e applied
    std::map<std::pair<unsigned, unsigned>, AffinePoint> pairs;
    std::vector<Fe> lambda;
    std::map<std::pair<unsigned, unsigned>, Fe> lambda_pair;
    std::vector<std::uint64_t> ell;  // minimal l with l*e_i in the orbit
};

/// Full lift table over Z(n); Z(m)-translates produced by the theta action.
struct GoodLift {
    ChainBasisLift chain;
    std::vector<AffinePoint> table; // indexed by Z(n) rank
    const AffinePoint& at(const IndexVector& i) const { return table[i.rank()]; }
};

/// Translated lifts over a base point z.
struct TranslatedLift {
    AffinePoint base;
    std::vector<AffinePoint> table;
    std::vector<Fe> lambda;
    const AffinePoint& at(const IndexVector& i) const { return table[i.rank()]; }
};

/// Solve the normalization relations for the chain basis.  The root-of-unity
/// ambiguity is resolved deterministically: admissible candidates sorted by
/// encoding, entry (seed mod count) selected.
ChainBasisLift good_lift_chain_basis(const NumberedGroup& group, std::uint64_t seed = 0);

/// Expand a chain-basis lift to the full Z(n) table.  alt_schedule switches
/// to a second deterministic reconstruction order (the results must agree).
GoodLift expand_good_lift(const ChainBasisLift& chain, bool alt_schedule = false);

/// Basis part of a good lift of z + G, then the full translated table.
TranslatedLift good_lift_translated(const GoodLift& lift, const AffinePoint& z,
                                    std::uint64_t seed = 0);

} // namespace theta
