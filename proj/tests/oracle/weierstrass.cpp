#include "oracle/weierstrass.hpp"

#include <random>

namespace oracle {

using theta::DegeneratePoint;
using theta::NotTorsion;
using theta::PreconditionViolated;

Fe Curve::j_invariant() const {
    // short form via b-invariants of y^2 = x^3 + a2 x^2 + a4 x + a6
    const auto& f = a2.spec();
    Fe b2 = Fe(f, 4) * a2;
    Fe b4 = Fe(f, 2) * a4;
    Fe b6 = Fe(f, 4) * a6;
    Fe b8 = Fe(f, 4) * a2 * a6 - a4 * a4;
    Fe c4 = b2 * b2 - Fe(f, 24) * b4;
    Fe disc = -b2 * b2 * b8 - Fe(f, 8) * b4 * b4 * b4 - Fe(f, 27) * b6 * b6 +
              Fe(f, 9) * b2 * b4 * b6;
    if (disc.is_zero()) throw DegeneratePoint("singular curve");
    return c4 * c4 * c4 / disc;
}

Curve legendre_curve(const Fe& lambda) {
    const auto& f = lambda.spec();
    return Curve{-(Fe::one(f) + lambda), lambda, Fe::zero(f)};
}

Point neg(const Point& p) {
    if (p.inf) return p;
    return Point{false, p.x, -p.y};
}

Point add(const Curve& c, const Point& p, const Point& q) {
    if (p.inf) return q;
    if (q.inf) return p;
    const auto& f = p.x.spec();
    if (p.x == q.x) {
        if (p.y == -q.y) return Point::infinity();
        // doubling
        Fe num = Fe(f, 3) * p.x * p.x + Fe(f, 2) * c.a2 * p.x + c.a4;
        Fe lam = num / (Fe(f, 2) * p.y);
        Fe x3 = lam * lam - c.a2 - p.x - q.x;
        Fe y3 = lam * (p.x - x3) - p.y;
        return Point{false, x3, y3};
    }
    Fe lam = (q.y - p.y) / (q.x - p.x);
    Fe x3 = lam * lam - c.a2 - p.x - q.x;
    Fe y3 = lam * (p.x - x3) - p.y;
    return Point{false, x3, y3};
}

Point smul(const Curve& c, std::uint64_t k, const Point& p) {
    Point acc = Point::infinity();
    Point base = p;
    while (k) {
        if (k & 1) acc = add(c, acc, base);
        base = add(c, base, base);
        k >>= 1;
    }
    return acc;
}

std::uint64_t order_of(const Curve& c, const Point& p, std::uint64_t bound) {
    Point acc = p;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        if (acc.inf) return k;
        acc = add(c, acc, p);
    }
    return 0;
}

std::vector<Point> lift_x(const Curve& c, const Fe& x) {
    Fe r = c.rhs(x);
    std::vector<Point> out;
    if (r.is_zero()) {
        out.push_back(Point{false, x, r});
        return out;
    }
    if (!theta::is_square(r)) return out;
    Fe y = theta::square_root(r);
    out.push_back(Point{false, x, y});
    out.push_back(Point{false, x, -y});
    return out;
}

namespace {

// evaluation of the line through p, q at r (tangent when p == q)
std::optional<Fe> line_eval(const Curve& c, const Point& p, const Point& q, const Point& r) {
    const auto& f = c.a2.spec();
    if (r.inf) return std::nullopt;
    if (p.inf && q.inf) return Fe::one(f);
    if (p.inf) return r.x - q.x;
    if (q.inf) return r.x - p.x;
    if (p.x == q.x && p.y == -q.y) return r.x - p.x; // vertical
    Fe lam;
    if (p == q) {
        if (p.y.is_zero()) return r.x - p.x;
        lam = (Fe(f, 3) * p.x * p.x + Fe(f, 2) * c.a2 * p.x + c.a4) / (Fe(f, 2) * p.y);
    } else {
        lam = (q.y - p.y) / (q.x - p.x);
    }
    return r.y - p.y - lam * (r.x - p.x);
}

// Miller function f_{n,P} evaluated at the divisor point r; nullopt when a
// zero/pole of an intermediate line is hit
std::optional<Fe> miller(const Curve& c, const Point& p, std::uint64_t n, const Point& r) {
    const auto& f = c.a2.spec();
    Fe acc = Fe::one(f);
    Point t = p;
    int top = 63;
    while (top >= 0 && !((n >> top) & 1)) --top;
    for (int b = top - 1; b >= 0; --b) {
        auto l1 = line_eval(c, t, t, r);
        Point t2 = add(c, t, t);
        auto l2 = line_eval(c, t2, neg(t2), r);
        if (!l1 || !l2 || l2->is_zero()) return std::nullopt;
        acc = acc * acc * *l1 / *l2;
        if (acc.is_zero()) return std::nullopt;
        t = t2;
        if ((n >> b) & 1) {
            auto l3 = line_eval(c, t, p, r);
            Point t3 = add(c, t, p);
            auto l4 = line_eval(c, t3, neg(t3), r);
            if (!l3 || !l4) return std::nullopt;
            if (!t3.inf && l4->is_zero()) return std::nullopt;
            acc = acc * *l3 / (t3.inf ? Fe::one(f) : *l4);
            if (acc.is_zero()) return std::nullopt;
            t = t3;
        }
    }
    return acc;
}

Point random_point(const Curve& c, std::mt19937_64& rng) {
    const auto& f = c.a2.spec();
    for (int i = 0; i < 1000; ++i) {
        Fe x = Fe::from_rank(f, rng() % f->q());
        auto lifts = lift_x(c, x);
        if (!lifts.empty()) return lifts[rng() % lifts.size()];
    }
    throw PreconditionViolated("no random point found");
}

} // namespace

Fe weil_pairing(const Curve& c, const Point& p, const Point& q, std::uint64_t n,
                std::uint64_t seed) {
    const auto& f = c.a2.spec();
    if (p.inf || q.inf) return Fe::one(f);
    if (p == q) return Fe::one(f);
    if (!smul(c, n, p).inf || !smul(c, n, q).inf) throw NotTorsion("inputs are not n-torsion");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 500; ++attempt) {
        // e_n(P,Q) = f_P(D_Q)/f_Q(D_P), D_Q = (Q+S)-(S), D_P = (P-S)-(-S)
        Point s = random_point(c, rng);
        auto a1 = miller(c, p, n, add(c, q, s));
        auto a2 = miller(c, p, n, s);
        auto b1 = miller(c, q, n, add(c, p, neg(s)));
        auto b2 = miller(c, q, n, neg(s));
        if (!a1 || !a2 || !b1 || !b2) continue;
        if (a1->is_zero() || a2->is_zero() || b1->is_zero() || b2->is_zero()) continue;
        Fe e = (*a1 / *a2) / (*b1 / *b2);
        if (e.pow((std::int64_t)n) != Fe::one(f)) continue;
        return e;
    }
    throw PreconditionViolated("weil pairing evaluation kept hitting degenerate offsets");
}

TwoIsogeny velu2(const Curve& c, const Fe& x0) {
    const auto& f = c.a2.spec();
    if (!c.rhs(x0).is_zero()) throw PreconditionViolated("kernel x is not a 2-torsion root");
    // shift so the kernel is (0,0): y^2 = x^3 + A x^2 + B x; the quotient by
    // <(0,0)> is Y^2 = X^3 - 2A X^2 + (A^2-4B) X with
    // X = (x^2 + A x + B)/x, Y = y (x^2 - B)/x^2.
    Fe A = c.a2 + Fe(f, 3) * x0;
    Fe B = Fe(f, 3) * x0 * x0 + Fe(f, 2) * c.a2 * x0 + c.a4;
    if (B.is_zero() || (A * A - Fe(f, 4) * B).is_zero())
        throw DegeneratePoint("kernel root is degenerate");
    TwoIsogeny iso;
    iso.x0 = x0;
    iso.image = Curve{Fe(f, 2) * (-A), A * A - Fe(f, 4) * B, Fe::zero(f)};
    return iso;
}

Point TwoIsogeny::map(const Curve& src, const Point& p) const {
    const auto& f = x0.spec();
    if (p.inf) return Point::infinity();
    Fe xs = p.x - x0; // kernel at the origin of the shifted model
    if (xs.is_zero()) return Point::infinity();
    Fe A = src.a2 + Fe(f, 3) * x0;
    Fe B = Fe(f, 3) * x0 * x0 + Fe(f, 2) * src.a2 * x0 + src.a4;
    Fe X = (xs * xs + A * xs + B) / xs;
    Fe Y = p.y * (xs * xs - B) / (xs * xs);
    return Point{false, X, Y};
}

} // namespace oracle
