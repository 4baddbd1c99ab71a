#include "theta/symcompat.hpp"

#include "theta/detail/smallmat.hpp"

namespace theta {

namespace {

using detail::SmallMat;

// exponent k with zeta^k = v, brute force over the cyclic group of order n
std::uint32_t root_log(const Fe& v, const Fe& zeta, std::uint32_t n) {
    Fe acc = Fe::one(v.spec());
    for (std::uint32_t k = 0; k < n; ++k) {
        if (acc == v) return k;
        acc = acc * zeta;
    }
    throw PreconditionViolated("pairing value is not a power of zeta_n");
}

HeisenbergElement side_elem(const CtxPtr& ctx, const IndexVector& e, Side side) {
    if (side == Side::Z) return ctx->elem_x(e);
    return ctx->elem_y(DualIndex(e));
}

// K(m)-index of a point in the theta orbit, restricted to the given side
std::optional<IndexVector> find_orbit_index(const AffinePoint& pt, Side side) {
    const auto& ctx = pt.ctx;
    const std::size_t N = ctx->coord_count();
    AffinePoint nil = ctx->null_point();
    for (std::size_t r = 0; r < N; ++r) {
        IndexVector i = IndexVector::from_rank(ctx->m(), ctx->g(), r);
        AffinePoint cand = theta_act(nil, side_elem(ctx, i, side));
        if (projectively_equal(pt, cand)) return i;
    }
    return std::nullopt;
}

} // namespace

AffinePoint TorsionBasis::lift_combination(const std::vector<std::uint64_t>& coeffs,
                                           const AffinePoint& zero) const {
    std::vector<AffinePoint> pts;
    pts.reserve(e.size());
    for (const auto& tp : e) pts.push_back(tp.pt);
    return linear_combination(coeffs, pts, chain, zero);
}

int kappa(const AffinePoint& lift, const IndexVector& e_index, Side side) {
    AffinePoint t = theta_act(inv_point(lift), side_elem(lift.ctx, e_index, side));
    auto lambda = proportionality_factor(lift, t);
    if (!lambda) throw NotInvolutive("lift is not fixed by the Inv2 involution");
    const Fe one = Fe::one(lift.ctx->field());
    if (*lambda == one) return 1;
    if (*lambda == -one) return -1;
    throw NotInvolutive("Inv2 scalar is not a sign");
}

bool test_sym_compat(const CtxPtr& ctx, const AffinePoint& x, std::uint32_t d, Side side) {
    if (d % 2 != 0) return true;
    AffinePoint zero = ctx->null_point();
    AffinePoint w = scalar_mult(d / 2, x, x, zero, zero);
    AffinePoint dx = diff_add(w, w, zero, zero);
    auto e = find_orbit_index(dx, side);
    if (!e) throw PreconditionViolated("d*x does not land in the claimed theta orbit side");
    return kappa(w, *e, side) == 1;
}

namespace {

// indices t_i of d*e_i (must form a basis of Z(m)); rows of (m/2) T^-1 are the
// characters with c_i(t_j) = -1 exactly at i = j
SmallMat dual_flip_rows(const CtxPtr& ctx, const std::vector<AffinePoint>& basis,
                        std::uint32_t d, Side side) {
    const std::uint32_t m = ctx->m();
    const unsigned g = ctx->g();
    AffinePoint zero = ctx->null_point();
    SmallMat T(m, g);
    for (unsigned j = 0; j < g; ++j) {
        AffinePoint dx = scalar_mult(d, basis[j], basis[j], zero, zero);
        auto idx = find_orbit_index(dx, side);
        if (!idx) throw PreconditionViolated("d*e_j is not in the claimed orbit side");
        for (unsigned i = 0; i < g; ++i) T.at(i, j) = idx->c[i];
    }
    auto tinv = detail::inverse(T);
    if (!tinv) throw NotABasis("the d-multiples of the generators do not span Z(m)");
    SmallMat rows(m, g);
    for (unsigned i = 0; i < g; ++i)
        for (unsigned c = 0; c < g; ++c)
            rows.at(i, c) = (std::uint32_t)((std::uint64_t)(m / 2) * tinv->at(i, c) % m);
    return rows;
}

} // namespace

ThetaFixResult fix_theta_structure(const CtxPtr& ctx, const std::vector<AffinePoint>& basis,
                                   std::uint32_t d) {
    const unsigned g = ctx->g();
    ThetaFixResult res;
    res.flipped.assign(g, false);
    res.character.assign(g, false);
    if (d % 2 != 0) {
        res.ctx = ctx;
        res.basis = basis;
        return res;
    }
    bool any = false;
    for (unsigned j = 0; j < g; ++j) {
        res.flipped[j] = !test_sym_compat(ctx, basis[j], d, Side::Z);
        any = any || res.flipped[j];
    }
    if (!any) {
        res.ctx = ctx;
        res.basis = basis;
        return res;
    }
    SmallMat rows = dual_flip_rows(ctx, basis, d, Side::Z);
    std::vector<bool> c1(g, false), c2(g, false);
    for (unsigned j = 0; j < g; ++j) {
        if (!res.flipped[j]) continue;
        for (unsigned c = 0; c < g; ++c)
            if (rows.at(j, c) == ctx->m() / 2) c2[c] = !c2[c];
    }
    res.character = c2;
    res.ctx = act_k2_ctx(ctx, c1, c2);
    for (const auto& pt : basis) {
        AffinePoint moved = act_k2(pt, c1, c2);
        res.basis.emplace_back(res.ctx, std::move(moved.c));
    }
    for (unsigned j = 0; j < g; ++j)
        if (!test_sym_compat(res.ctx, res.basis[j], d, Side::Z))
            throw NotSymCompatible("theta-structure repair failed for a generator");
    return res;
}

namespace {

std::vector<std::uint64_t> add_coeffs(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b, std::uint32_t n) {
    std::vector<std::uint64_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % n;
    return r;
}

std::vector<std::uint64_t> scale_coeffs(const std::vector<std::uint64_t>& a, std::uint64_t k,
                                        std::uint32_t n) {
    std::vector<std::uint64_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] * (k % n)) % n;
    return r;
}

bool coeffs_zero(const std::vector<std::uint64_t>& a) {
    for (auto x : a)
        if (x) return false;
    return true;
}

} // namespace

BasisFixResult fix_basis(const CtxPtr& ctx, const TorsionBasis& basis, std::uint32_t d) {
    const std::uint32_t n = basis.n;
    const unsigned g = ctx->g();
    const unsigned count = 2 * g;
    if (basis.e.size() != count) throw NotABasis("need 2g basis points");
    AffinePoint zero = ctx->null_point();
    const Fe zeta_n = ctx->zeta(n);

    auto lift_of = [&](const std::vector<std::uint64_t>& c) {
        return basis.lift_combination(c, zero);
    };
    auto pairing_exp = [&](const std::vector<std::uint64_t>& ca,
                           const std::vector<std::uint64_t>& cb) -> std::uint32_t {
        Fe v = weil_pairing(lift_of(ca), lift_of(cb), lift_of(add_coeffs(ca, cb, n)), n, zero);
        return root_log(v, zeta_n, n);
    };

    // symplectic Gram-Schmidt over Z/nZ on coefficient vectors
    std::vector<std::vector<std::uint64_t>> pool;
    for (unsigned i = 0; i < count; ++i) {
        std::vector<std::uint64_t> u(count, 0);
        u[i] = 1;
        pool.push_back(u);
    }
    std::vector<std::vector<std::uint64_t>> w(count);
    for (unsigned k = 0; k < g; ++k) {
        unsigned pi = count, pj = count;
        std::uint32_t pe = 0;
        for (unsigned i = 0; i < pool.size() && pi == count; ++i)
            for (unsigned j = i + 1; j < pool.size(); ++j) {
                std::uint32_t e = pairing_exp(pool[i], pool[j]);
                if (detail::unit_inverse(e, n)) { pi = i; pj = j; pe = e; break; }
            }
        if (pi == count) throw NotABasis("no primitive pairing value among remaining vectors");
        std::uint32_t u = *detail::unit_inverse(pe, n);
        w[k] = pool[pi];
        w[g + k] = scale_coeffs(pool[pj], u, n);
        std::vector<std::vector<std::uint64_t>> next;
        for (unsigned i = 0; i < pool.size(); ++i) {
            if (i == pi || i == pj) continue;
            std::uint32_t a = pairing_exp(pool[i], w[g + k]);
            std::uint32_t b = (n - pairing_exp(pool[i], w[k])) % n;
            auto v = add_coeffs(pool[i], scale_coeffs(w[k], n - a, n), n);
            v = add_coeffs(v, scale_coeffs(w[g + k], b, n), n);
            if (coeffs_zero(v)) throw NotABasis("input points are not a basis of B[n]");
            next.push_back(v);
        }
        pool = std::move(next);
    }

    // side adjustment: d*w_k must land in the Z orbit for k < g and in the
    // dual orbit for k >= g
    auto side_of = [&](const std::vector<std::uint64_t>& c) -> std::optional<Side> {
        AffinePoint pt = lift_of(c);
        AffinePoint dx = scalar_mult(d, pt, pt, zero, zero);
        if (find_orbit_index(dx, Side::Z)) return Side::Z;
        if (find_orbit_index(dx, Side::Dual)) return Side::Dual;
        return std::nullopt;
    };
    for (unsigned k = 0; k < g; ++k) {
        bool placed = false;
        for (std::uint32_t a = 0; a < n && !placed; ++a) {
            for (std::uint32_t b = 0; b < n && !placed; ++b) {
                if (a == 0 && b == 0) continue;
                auto cand = add_coeffs(scale_coeffs(w[k], a, n), scale_coeffs(w[g + k], b, n), n);
                auto cand2 = add_coeffs(scale_coeffs(w[k], n - b, n), scale_coeffs(w[g + k], a, n), n);
                // candidate pair (a w1 + b w2, -b w1 + a w2) stays symplectic
                // when a^2 + b^2-style determinant is a unit
                std::uint32_t det = (std::uint32_t)(((std::uint64_t)a * a + (std::uint64_t)b * b) % n);
                if (!detail::unit_inverse(det, n)) continue;
                auto s1 = side_of(cand);
                auto s2 = side_of(cand2);
                if (s1 == Side::Z && s2 == Side::Dual) {
                    std::uint32_t di = *detail::unit_inverse(det, n);
                    w[k] = cand;
                    w[g + k] = scale_coeffs(cand2, di, n);
                    placed = true;
                }
            }
        }
        if (!placed) throw NotABasis("cannot split the symplectic pair across orbit sides");
    }

    // kappa repair: translate an incompatible generator by the opposite-side
    // 2-torsion orbit point whose character flips the sign
    BasisFixResult res;
    res.translated.assign(count, false);
    if (d % 2 == 0) {
        const std::uint32_t m = ctx->m();
        for (unsigned half = 0; half < 2; ++half) {
            Side side = half == 0 ? Side::Z : Side::Dual;
            std::vector<AffinePoint> gens;
            for (unsigned k = 0; k < g; ++k) gens.push_back(lift_of(w[half * g + k]));
            SmallMat rows = dual_flip_rows(ctx, gens, d, side);
            for (unsigned k = 0; k < g; ++k) {
                if (test_sym_compat(ctx, gens[k], d, side)) continue;
                res.translated[half * g + k] = true;
                // orbit point with character row k on the opposite side
                IndexVector ch = IndexVector::zero(m, g);
                for (unsigned c = 0; c < g; ++c) ch.c[c] = rows.at(k, c);
                HeisenbergElement h = side == Side::Z ? ctx->elem_y(DualIndex(ch)) : ctx->elem_x(ch);
                AffinePoint tpt = theta_act(zero, h);
                // coefficients of the translation point over the symplectic basis
                std::vector<std::uint64_t> tc(count, 0);
                for (unsigned i = 0; i < g; ++i) {
                    AffinePoint wi = lift_of(w[i]);
                    AffinePoint wgi = lift_of(w[g + i]);
                    std::uint32_t ai = root_log(
                        weil_pairing(tpt, wgi, theta_act(wgi, h), n, zero), zeta_n, n);
                    std::uint32_t bi = (n - root_log(
                        weil_pairing(tpt, wi, theta_act(wi, h), n, zero), zeta_n, n)) % n;
                    tc = add_coeffs(tc, scale_coeffs(w[i], ai, n), n);
                    tc = add_coeffs(tc, scale_coeffs(w[g + i], bi, n), n);
                }
                w[half * g + k] = add_coeffs(w[half * g + k], tc, n);
                if (!test_sym_compat(ctx, lift_of(w[half * g + k]), d, side))
                    throw NotSymCompatible("basis repair failed for a generator");
            }
        }
    }

    res.coeffs = w;
    res.basis.n = n;
    for (unsigned i = 0; i < count; ++i) {
        TorsionPoint tp;
        tp.pt = lift_of(w[i]);
        tp.order = n;
        tp.tag = i < g ? Side::Z : Side::Dual;
        res.basis.e.push_back(std::move(tp));
    }
    for (unsigned i = 0; i < count; ++i)
        for (unsigned j = i + 1; j < count; ++j)
            res.basis.chain.emplace(std::make_pair(i, j), lift_of(add_coeffs(w[i], w[j], n)));
    return res;
}

} // namespace theta
