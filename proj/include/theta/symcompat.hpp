#pragma once

#include <map>

#include "theta/arith.hpp"
#include "theta/metaplectic.hpp"

namespace theta {

enum class Side { Z, Dual };

/// Torsion point of B[n] carried in level-m coordinates.
struct TorsionPoint {
    AffinePoint pt;
    std::uint32_t order = 0;
    Side tag = Side::Z;
};

/// 2g torsion points e_1..e_2g with the pairwise chain lifts e_i + e_j
/// (one fixed root of the Kummer ambiguity per pair).
struct TorsionBasis {
    std::uint32_t n = 0;
    std::vector<TorsionPoint> e;
    std::map<std::pair<unsigned, unsigned>, AffinePoint> chain;

    AffinePoint lift_combination(const std::vector<std::uint64_t>& coeffs,
                                 const AffinePoint& zero) const;
};

/// Sign of the involution w -> (1, e, 0).Inv(w) on lifts of a point fixed by
/// Inv modulo the theta orbit; e is the K(m)-index of twice the class.
/// Lift-independent.  Throws NotInvolutive when the scalar is not +-1.
int kappa(const AffinePoint& lift, const IndexVector& e_index, Side side);

/// Symmetric-compatibility test: true immediately for odd d, else the
/// kappa sign of the d/2-multiple.  d*x must land in the claimed orbit side.
bool test_sym_compat(const CtxPtr& ctx, const AffinePoint& x, std::uint32_t d, Side side);

struct ThetaFixResult {
    CtxPtr ctx;
    std::vector<AffinePoint> basis;
    std::vector<bool> flipped;   // which generators were incompatible
    std::vector<bool> character; // dual K(2)-character actually applied
};

/// Change the theta structure by a K(2)-character so every basis point of G1
/// becomes Z-side symmetric compatible.  Basis points are returned in the new
/// coordinates.
ThetaFixResult fix_theta_structure(const CtxPtr& ctx, const std::vector<AffinePoint>& basis,
                                   std::uint32_t d);

struct BasisFixResult {
    TorsionBasis basis;
    std::vector<std::vector<std::uint64_t>> coeffs; // new basis over the input basis
    std::vector<bool> translated;
};

/// Symplectic Gram-Schmidt (pairing logarithms base the context's zeta_n)
/// followed by the kappa repair: translate an incompatible generator by the
/// dual 2-torsion orbit point that flips its sign.
BasisFixResult fix_basis(const CtxPtr& ctx, const TorsionBasis& basis, std::uint32_t d);

} // namespace theta
