#include "theta/context.hpp"

#include <numeric>
#include <random>

namespace theta {

AffinePoint::AffinePoint(CtxPtr ctx_, std::vector<Fe> coords)
    : ctx(std::move(ctx_)), c(std::move(coords)) {
    if (c.size() != ctx->coord_count())
        throw LevelMismatch("coordinate vector has wrong length for level");
}

bool AffinePoint::is_zero_vector() const {
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

AffinePoint AffinePoint::scaled(const Fe& lambda) const {
    AffinePoint r = *this;
    for (auto& x : r.c) x = x * lambda;
    return r;
}

std::optional<Fe> proportionality_factor(const AffinePoint& a, const AffinePoint& b) {
    if (a.c.size() != b.c.size()) return std::nullopt;
    std::optional<Fe> lambda;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (b.c[i].is_zero() != a.c[i].is_zero()) return std::nullopt;
        if (b.c[i].is_zero()) continue;
        Fe f = a.c[i] / b.c[i];
        if (!lambda) lambda = f;
        else if (*lambda != f) return std::nullopt;
    }
    return lambda; // nullopt only if both vectors are all-zero
}

bool projectively_equal(const AffinePoint& a, const AffinePoint& b) {
    auto f = proportionality_factor(a, b);
    return f.has_value();
}

CtxPtr ThetaContext::make(FieldPtr field, unsigned g, std::uint32_t m,
                          std::vector<Fe> null_coords, std::uint64_t zeta_aux) {
    if (m % 2 != 0) throw PreconditionViolated("even level is required");
    if (g == 0) throw PreconditionViolated("dimension must be >= 1");
    auto ctx = std::shared_ptr<ThetaContext>(new ThetaContext());
    ctx->field_ = std::move(field);
    ctx->g_ = g;
    ctx->m_ = m;
    std::size_t count = 1;
    for (unsigned i = 0; i < g; ++i) count *= m;
    ctx->count_ = count;
    if (null_coords.size() != count) throw LevelMismatch("null point has wrong length");
    bool nz = false;
    for (const auto& x : null_coords) nz = nz || !x.is_zero();
    if (!nz) throw PreconditionViolated("null point must be nonzero");
    ctx->null_ = std::move(null_coords);
    ctx->zeta_order_ = std::lcm<std::uint64_t>(2 * m, zeta_aux);
    ctx->zeta_ = primitive_root_of_unity(ctx->field_, ctx->zeta_order_);
    return ctx;
}

Fe ThetaContext::zeta(std::uint64_t k) const {
    if (k == 0 || zeta_order_ % k != 0)
        throw NoSuchRoot("context master root has no order-" + std::to_string(k) + " power");
    return zeta_.pow((std::int64_t)(zeta_order_ / k));
}

AffinePoint ThetaContext::null_point() const {
    return AffinePoint(shared_from_this(), null_);
}

HeisenbergElement ThetaContext::elem(Fe alpha, IndexVector x, DualIndex y) const {
    if (x.n != m_ || y.n() != m_) throw LevelMismatch("Heisenberg element level != context level");
    return HeisenbergElement(std::move(alpha), std::move(x), std::move(y));
}

HeisenbergElement ThetaContext::elem_x(const IndexVector& x) const {
    return elem(Fe::one(field_), x, DualIndex::zero(m_, g_));
}

HeisenbergElement ThetaContext::elem_y(const DualIndex& y) const {
    return elem(Fe::one(field_), IndexVector::zero(m_, g_), y);
}

AffinePoint theta_act(const AffinePoint& pt, const HeisenbergElement& h) {
    const auto& ctx = *pt.ctx;
    if (h.x.n != ctx.m() || h.x.g() != ctx.g())
        throw LevelMismatch("acting element has wrong level");
    const Fe zm = ctx.zeta(ctx.m());
    std::vector<Fe> out(pt.c.size(), Fe::zero(ctx.field()));
    for (std::size_t r = 0; r < pt.c.size(); ++r) {
        IndexVector i = IndexVector::from_rank(ctx.m(), ctx.g(), r);
        Fe chi = h.y.eval(-(i + h.x), zm);
        out[r] = h.alpha * chi * pt.c[(i + h.x).rank()];
    }
    return AffinePoint(pt.ctx, std::move(out));
}

AffinePoint theta_act_x(const AffinePoint& pt, const IndexVector& x) {
    return theta_act(pt, pt.ctx->elem_x(x));
}

AffinePoint theta_act_y(const AffinePoint& pt, const DualIndex& y) {
    return theta_act(pt, pt.ctx->elem_y(y));
}

AffinePoint inv_point(const AffinePoint& pt) {
    const auto& ctx = *pt.ctx;
    std::vector<Fe> out(pt.c.size(), Fe::zero(ctx.field()));
    for (std::size_t r = 0; r < pt.c.size(); ++r) {
        IndexVector i = IndexVector::from_rank(ctx.m(), ctx.g(), r);
        out[r] = pt.c[(-i).rank()];
    }
    return AffinePoint(pt.ctx, std::move(out));
}

AffinePoint hadamard_dual(const AffinePoint& pt) {
    const auto& ctx = *pt.ctx;
    const Fe zm = ctx.zeta(ctx.m());
    const Fe norm = Fe(ctx.field(), (std::uint64_t)ctx.coord_count() % ctx.field()->p()).inv();
    std::vector<Fe> out(pt.c.size(), Fe::zero(ctx.field()));
    for (std::size_t r = 0; r < pt.c.size(); ++r) {
        IndexVector v = IndexVector::from_rank(ctx.m(), ctx.g(), r);
        Fe acc = Fe::zero(ctx.field());
        for (std::size_t s = 0; s < pt.c.size(); ++s) {
            IndexVector w = IndexVector::from_rank(ctx.m(), ctx.g(), s);
            acc = acc + DualIndex(v).eval(-w, zm) * pt.c[s];
        }
        out[r] = norm * acc;
    }
    return AffinePoint(pt.ctx, std::move(out));
}

AffinePoint hadamard_dual_inverse(const AffinePoint& pt) {
    // H o H = (1/m^g) Inv, so H^-1 = m^g * Inv o H
    const Fe mg = Fe(pt.ctx->field(), (std::uint64_t)pt.ctx->coord_count() % pt.ctx->field()->p());
    return inv_point(hadamard_dual(pt)).scaled(mg);
}

std::vector<IndexVector> riemann_position(const std::vector<IndexVector>& x4, const IndexVector& z) {
    if (x4.size() != 4) throw PreconditionViolated("need exactly four entries");
    IndexVector s = (-x4[0]) + x4[1] + x4[2] + x4[3];
    if (s != z.scaled(2)) throw NotRiemannPosition("-x1+x2+x3+x4 != 2z");
    std::vector<IndexVector> out = x4;
    out.push_back(x4[0] + z);
    out.push_back(x4[1] - z);
    out.push_back(x4[2] - z);
    out.push_back(x4[3] - z);
    return out;
}

namespace {

// L(chi, i, j, u, v) = sum_{eta in Z(2)} chi(eta) u_{i+eta} v_{j+eta}
// chi indexed by a bitmask over the g coordinates.
Fe null_L(const ThetaContext& ctx, const std::vector<Fe>& nc, unsigned chi,
          const IndexVector& i, const IndexVector& j) {
    const unsigned g = ctx.g();
    const std::uint32_t m = ctx.m();
    const std::uint32_t half = m / 2;
    Fe acc = Fe::zero(ctx.field());
    for (unsigned b = 0; b < (1u << g); ++b) {
        IndexVector eta = IndexVector::zero(m, g);
        int sign = 1;
        for (unsigned t = 0; t < g; ++t)
            if (b & (1u << t)) {
                eta.c[t] = half;
                if (chi & (1u << t)) sign = -sign;
            }
        Fe term = nc[(i + eta).rank()] * nc[(j + eta).rank()];
        acc = sign > 0 ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

ValidationReport validate_null(const ThetaContext& ctx) {
    ValidationReport rep;
    const unsigned g = ctx.g();
    const std::uint32_t m = ctx.m();
    const std::size_t N = ctx.coord_count();
    const auto nc = ctx.null_point().c;

    for (std::size_t r = 0; r < N; ++r) {
        IndexVector i = IndexVector::from_rank(m, g, r);
        if (nc[r] != nc[(-i).rank()]) {
            rep.ok = false;
            rep.first_violation = "symmetry: null[" + std::to_string(r) + "] != null[-i]";
            return rep;
        }
    }

    auto check_tuple = [&](const IndexVector& i1, const IndexVector& i2,
                           const IndexVector& i3, const IndexVector& i4,
                           const IndexVector& t) -> bool {
        IndexVector i5 = i1 + t, i6 = i2 - t, i7 = i3 - t, i8 = i4 - t;
        for (unsigned chi = 0; chi < (1u << g); ++chi) {
            Fe lhs = null_L(ctx, nc, chi, i1, i2) * null_L(ctx, nc, chi, i3, i4);
            Fe rhs = null_L(ctx, nc, chi, i5, i6) * null_L(ctx, nc, chi, i7, i8);
            if (lhs != rhs) return false;
        }
        return true;
    };

    // all t with 2t = s, when solvable
    auto two_torsion_shifts = [&](const IndexVector& s) {
        std::vector<IndexVector> ts;
        IndexVector t0 = IndexVector::zero(m, g);
        bool solvable = true;
        for (unsigned k = 0; k < g; ++k) {
            if (s.c[k] % 2 != 0) { solvable = false; break; }
            t0.c[k] = s.c[k] / 2;
        }
        if (!solvable) return ts;
        for (unsigned b = 0; b < (1u << g); ++b) {
            IndexVector t = t0;
            for (unsigned k = 0; k < g; ++k)
                if (b & (1u << k)) t.c[k] = (t.c[k] + m / 2) % m;
            ts.push_back(t);
        }
        return ts;
    };

    auto run_tuple = [&](std::size_t r1, std::size_t r2, std::size_t r3, std::size_t r4) -> bool {
        IndexVector i1 = IndexVector::from_rank(m, g, r1);
        IndexVector i2 = IndexVector::from_rank(m, g, r2);
        IndexVector i3 = IndexVector::from_rank(m, g, r3);
        IndexVector i4 = IndexVector::from_rank(m, g, r4);
        IndexVector s = (-i1) + i2 + i3 + i4;
        for (const auto& t : two_torsion_shifts(s)) {
            if (!check_tuple(i1, i2, i3, i4, t)) {
                rep.ok = false;
                rep.first_violation = "riemann: tuple (" + std::to_string(r1) + "," +
                                      std::to_string(r2) + "," + std::to_string(r3) + "," +
                                      std::to_string(r4) + ")";
                return false;
            }
        }
        return true;
    };

    if (N <= 16) {
        for (std::size_t r1 = 0; r1 < N; ++r1)
            for (std::size_t r2 = 0; r2 < N; ++r2)
                for (std::size_t r3 = 0; r3 < N; ++r3)
                    for (std::size_t r4 = 0; r4 < N; ++r4)
                        if (!run_tuple(r1, r2, r3, r4)) return rep;
    } else {
        std::mt19937_64 rng(0x7e7a5eedULL);
        for (int trial = 0; trial < 256; ++trial) {
            std::size_t r1 = rng() % N, r2 = rng() % N, r3 = rng() % N, r4 = rng() % N;
            if (!run_tuple(r1, r2, r3, r4)) return rep;
        }
    }
    return rep;
}

std::vector<AffinePoint> orbit_table(const CtxPtr& ctx) {
    const std::size_t N = ctx->coord_count();
    std::vector<AffinePoint> out;
    out.reserve(N * N);
    AffinePoint nil = ctx->null_point();
    for (std::size_t ry = 0; ry < N; ++ry) {
        DualIndex y(IndexVector::from_rank(ctx->m(), ctx->g(), ry));
        for (std::size_t rx = 0; rx < N; ++rx) {
            IndexVector x = IndexVector::from_rank(ctx->m(), ctx->g(), rx);
            out.push_back(theta_act(nil, ctx->elem(Fe::one(ctx->field()), x, y)));
        }
    }
    return out;
}

std::optional<std::pair<IndexVector, DualIndex>> find_in_orbit(const AffinePoint& pt) {
    const auto& ctx = pt.ctx;
    const std::size_t N = ctx->coord_count();
    AffinePoint nil = ctx->null_point();
    for (std::size_t ry = 0; ry < N; ++ry) {
        DualIndex y(IndexVector::from_rank(ctx->m(), ctx->g(), ry));
        for (std::size_t rx = 0; rx < N; ++rx) {
            IndexVector x = IndexVector::from_rank(ctx->m(), ctx->g(), rx);
            AffinePoint cand = theta_act(nil, ctx->elem(Fe::one(ctx->field()), x, y));
            if (projectively_equal(pt, cand)) return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

} // namespace theta
