#pragma once

#include <optional>
#include <vector>

#include "theta/ff.hpp"

// Independent elliptic-curve arithmetic used as the numeric authority in the
// tests: affine Weierstrass points, naive scalar multiplication, Miller-loop
// Weil pairing and the degree-2 isogeny formulas.  Nothing here touches the
// theta path.

namespace oracle {

using theta::Fe;
using theta::FieldPtr;

struct Curve {
    // y^2 = x^3 + a2 x^2 + a4 x + a6
    Fe a2, a4, a6;

    Fe rhs(const Fe& x) const { return ((x + a2) * x + a4) * x + a6; }
    bool on_curve(const Fe& x, const Fe& y) const { return y * y == rhs(x); }
    Fe j_invariant() const;
};

Curve legendre_curve(const Fe& lambda); // y^2 = x(x-1)(x-lambda)

struct Point {
    bool inf = true;
    Fe x, y;
    static Point infinity() { return Point{}; }
    bool operator==(const Point& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
};

Point neg(const Point& p);
Point add(const Curve& c, const Point& p, const Point& q);
Point smul(const Curve& c, std::uint64_t k, const Point& p);
std::uint64_t order_of(const Curve& c, const Point& p, std::uint64_t bound);

/// Points with the given x, if any (over the point's own field).
std::vector<Point> lift_x(const Curve& c, const Fe& x);

/// Weil pairing of n-torsion points by two Miller loops with a random offset;
/// retries offsets until all line evaluations are defined.
Fe weil_pairing(const Curve& c, const Point& p, const Point& q, std::uint64_t n,
                std::uint64_t seed = 1);

/// 2-isogeny with kernel (x0, 0): returns the image curve and the evaluation map.
struct TwoIsogeny {
    Curve image;
    Fe x0;
    Point map(const Curve& src, const Point& p) const;
};

TwoIsogeny velu2(const Curve& c, const Fe& x0);

} // namespace oracle
