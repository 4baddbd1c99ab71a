#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "theta/indices.hpp"

namespace theta {

class ThetaContext;
using CtxPtr = std::shared_ptr<const ThetaContext>;

/// Affine lift of a variety point: m^g coordinates indexed by the rank of
/// Z(m), coordinate 0 fastest.
struct AffinePoint {
    CtxPtr ctx;
    std::vector<Fe> c;

    AffinePoint() = default;
    AffinePoint(CtxPtr ctx_, std::vector<Fe> coords);

    const Fe& at(const IndexVector& i) const { return c[i.rank()]; }
    Fe& at(const IndexVector& i) { return c[i.rank()]; }
    bool is_zero_vector() const;

    AffinePoint scaled(const Fe& lambda) const;
};

/// Projective comparison of coordinate vectors (proportionality).
bool projectively_equal(const AffinePoint& a, const AffinePoint& b);

/// Scalar lambda with a = lambda * b, when it exists.
std::optional<Fe> proportionality_factor(const AffinePoint& a, const AffinePoint& b);

struct ValidationReport {
    bool ok = true;
    std::string first_violation;
};

/// Level-m, dimension-g theta null point over a finite field, together with
/// the root-of-unity conventions every character evaluation goes through.
/// All derived roots come from one master root zeta of order zeta_order, so
/// zeta_k := zeta^(zeta_order/k) is consistent across levels.
class ThetaContext : public std::enable_shared_from_this<ThetaContext> {
public:
    /// zeta_aux: extra order the master root must support (e.g. 2n for a
    /// planned change of level); the master order is lcm(2m, zeta_aux).
    static CtxPtr make(FieldPtr field, unsigned g, std::uint32_t m,
                       std::vector<Fe> null_coords, std::uint64_t zeta_aux = 1);

    const FieldPtr& field() const { return field_; }
    unsigned g() const { return g_; }
    std::uint32_t m() const { return m_; }
    std::size_t coord_count() const { return count_; }
    std::uint64_t zeta_order() const { return zeta_order_; }

    /// master root and derived roots of exact order k (k | zeta_order)
    const Fe& zeta_master() const { return zeta_; }
    Fe zeta(std::uint64_t k) const;

    AffinePoint null_point() const;

    /// Heisenberg element (alpha, x, y) at this context's level.
    HeisenbergElement elem(Fe alpha, IndexVector x, DualIndex y) const;
    HeisenbergElement elem_x(const IndexVector& x) const;
    HeisenbergElement elem_y(const DualIndex& y) const;

private:
    ThetaContext() = default;
    FieldPtr field_;
    unsigned g_ = 1;
    std::uint32_t m_ = 2;
    std::vector<Fe> null_;
    std::size_t count_ = 0;
    std::uint64_t zeta_order_ = 0;
    Fe zeta_;
};

/// Action of (alpha, x, y) on coordinates: out[i] = alpha y(-i-x) in[i+x].
/// Successive actions compose through the Heisenberg product:
/// act(act(pt,h1),h2) = act(pt, h1*h2).
AffinePoint theta_act(const AffinePoint& pt, const HeisenbergElement& h);
AffinePoint theta_act_x(const AffinePoint& pt, const IndexVector& x);
AffinePoint theta_act_y(const AffinePoint& pt, const DualIndex& y);

/// out[j] = in[-j]; an affine lift of -x.
AffinePoint inv_point(const AffinePoint& pt);

/// Discrete Fourier transform attached to Delta(m) ((1,e_i,0) <-> (1,0,-e^_i)):
/// out[v] = (1/m^g) sum_w zeta_m^{-<v,w>} in[w].  Applying it twice gives
/// (1/m^g) * inv_point.
AffinePoint hadamard_dual(const AffinePoint& pt);
AffinePoint hadamard_dual_inverse(const AffinePoint& pt);

/// Symmetry and Riemann checks for the null point.  Exhaustive for
/// m^g <= 16, otherwise 256 seeded samples.
ValidationReport validate_null(const ThetaContext& ctx);

/// The 8-tuple (x1..x4; x1+z, x2-z, x3-z, x4-z); requires -x1+x2+x3+x4 = 2z.
std::vector<IndexVector> riemann_position(const std::vector<IndexVector>& x4, const IndexVector& z);

/// Projective table of the K(m)-orbit of the null point: entry (i,j)-rank ->
/// theta_act(0, (1,i,j)).  Used to locate points inside the orbit.
std::vector<AffinePoint> orbit_table(const CtxPtr& ctx);

/// Index of the orbit point projectively equal to pt, if any.
std::optional<std::pair<IndexVector, DualIndex>> find_in_orbit(const AffinePoint& pt);

} // namespace theta
