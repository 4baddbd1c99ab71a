#include "theta/fixture.hpp"

#include <random>

namespace theta {

std::pair<Fe, Fe> Mobius::apply(const Fe& z, const Fe& w) const {
    return {a * z + b * w, c * z + d * w};
}

Mobius mobius_to_std(const std::pair<Fe, Fe>& to_inf, const std::pair<Fe, Fe>& to_zero,
                     const std::pair<Fe, Fe>& to_one) {
    // rows built from the zero/infinity conditions, scaled to send to_one to 1
    const auto& [z0, w0] = to_zero;
    const auto& [zi, wi] = to_inf;
    const auto& [z1, w1] = to_one;
    // numerator vanishes at to_zero: (w0, -z0); denominator at to_inf: (wi, -zi)
    Fe na = w0, nb = -z0, da = wi, db = -zi;
    Fe num1 = na * z1 + nb * w1;
    Fe den1 = da * z1 + db * w1;
    if (num1.is_zero() || den1.is_zero())
        throw PreconditionViolated("mobius anchors are not distinct");
    // scale numerator by den1/num1
    Fe s = den1 / num1;
    return Mobius{na * s, nb * s, da, db};
}

namespace {

std::pair<Fe, Fe> orbit_pair(const CtxPtr& ctx, unsigned which) {
    // branch points of the g=1, m=2 Kummer line: (a:b), (b:a), (a:-b), (b:-a)
    const Fe a = ctx->null_point().c[0], b = ctx->null_point().c[1];
    switch (which) {
    case 0: return {a, b};
    case 1: return {b, a};
    case 2: return {a, -b};
    default: return {b, -a};
    }
}

Mobius dictionary(const CtxPtr& ctx) {
    return mobius_to_std(orbit_pair(ctx, 0), orbit_pair(ctx, 1), orbit_pair(ctx, 2));
}

} // namespace

std::pair<Fe, Fe> kummer_to_legendre(const CtxPtr& ctx, const AffinePoint& pt) {
    if (ctx->m() != 2 || ctx->g() != 1)
        throw PreconditionViolated("dictionary is defined for m = 2, g = 1");
    return dictionary(ctx).apply(pt.c[0], pt.c[1]);
}

Fe legendre_lambda(const CtxPtr& ctx) {
    auto [z, w] = dictionary(ctx).apply(orbit_pair(ctx, 3).first, orbit_pair(ctx, 3).second);
    if (w.is_zero()) throw DegeneratePoint("lambda at infinity");
    return z / w;
}

namespace {

std::uint32_t kummer_order(const AffinePoint& pt, const AffinePoint& zero, std::uint32_t n) {
    for (std::uint32_t l = 1; l <= n; ++l) {
        if (n % l != 0) continue;
        try {
            AffinePoint s = scalar_mult(l, pt, pt, zero, zero);
            if (projectively_equal(s, zero)) return l;
        } catch (const DegeneratePoint&) {
            return 0;
        }
    }
    return 0;
}

} // namespace

FixtureBundle fixture_gen(std::uint64_t p, std::uint32_t n, std::uint64_t seed) {
    if (p % (2 * (std::uint64_t)n) != 1)
        throw PreconditionViolated("need p = 1 mod 2n for the root-of-unity conventions");
    FieldPtr field = FieldSpec::make(p);
    std::mt19937_64 rng(seed);
    const std::uint32_t expected_classes = n * n / 2 + 2;

    for (int attempt = 0; attempt < 512; ++attempt) {
        std::uint64_t a = 1 + rng() % (p - 1);
        std::uint64_t b = 1 + rng() % (p - 1);
        Fe fa(field, a), fb(field, b);
        if ((fa * fa == fb * fb) || (fa * fa == -(fb * fb))) continue;
        CtxPtr ctx;
        try {
            ctx = ThetaContext::make(field, 1, 2, {fa, fb}, 2 * (std::uint64_t)n);
        } catch (const Error&) {
            continue;
        }
        AffinePoint zero = ctx->null_point();

        // enumerate the projective line and classify torsion orders
        std::vector<AffinePoint> full_order;
        std::uint32_t classes = 0;
        bool bad = false;
        for (std::uint64_t r = 0; r <= p && !bad; ++r) {
            std::vector<Fe> c = r < p ? std::vector<Fe>{Fe(field, r), Fe::one(field)}
                                      : std::vector<Fe>{Fe::one(field), Fe::zero(field)};
            AffinePoint pt(ctx, std::move(c));
            std::uint32_t ord = kummer_order(pt, zero, n);
            if (ord == 0) continue;
            ++classes;
            if (ord == n) full_order.push_back(pt);
        }
        if (bad || classes != expected_classes) continue;

        // the two nontrivial 2-torsion orbit points fix the side tags
        AffinePoint zside = theta_act(zero, ctx->elem_x(IndexVector::unit(2, 1, 0)));
        AffinePoint dside = theta_act(zero, ctx->elem_y(DualIndex::unit(2, 1, 0)));
        const std::uint32_t d_tag = n / 2;
        const Fe zeta_n = ctx->zeta(n);

        for (std::size_t i = 0; i < full_order.size(); ++i) {
            AffinePoint e1 = full_order[i];
            AffinePoint de1 = scalar_mult(d_tag, e1, e1, zero, zero);
            if (!projectively_equal(de1, zside)) continue;
            for (std::size_t j = 0; j < full_order.size(); ++j) {
                if (i == j) continue;
                AffinePoint e2 = full_order[j];
                AffinePoint de2 = scalar_mult(d_tag, e2, e2, zero, zero);
                if (!projectively_equal(de2, dside)) continue;
                std::vector<AffinePoint> cands;
                try {
                    cands = normal_add(e1, e2, zero);
                } catch (const Error&) {
                    continue;
                }
                for (const auto& chain_root : cands) {
                    Fe pairing;
                    try {
                        pairing = weil_pairing(e1, e2, chain_root, n, zero);
                    } catch (const Error&) {
                        continue;
                    }
                    if (element_order(pairing) != n) continue;
                    if (pairing != zeta_n) continue; // fixture convention
                    FixtureBundle bundle;
                    bundle.ctx = ctx;
                    bundle.seed = seed;
                    bundle.basis.n = n;
                    bundle.basis.e.push_back({e1, n, Side::Z});
                    bundle.basis.e.push_back({e2, n, Side::Dual});
                    bundle.basis.chain.emplace(std::make_pair(0u, 1u), chain_root);
                    Json oracle;
                    oracle["model"] = "legendre";
                    oracle["lambda"] = fe_to_json(legendre_lambda(ctx));
                    auto img = [&](const AffinePoint& pt) {
                        auto [z, w] = kummer_to_legendre(ctx, pt);
                        Json o;
                        o["z"] = fe_to_json(z);
                        o["w"] = fe_to_json(w);
                        return o;
                    };
                    oracle["x1"] = img(e1);
                    oracle["x2"] = img(e2);
                    oracle["x12"] = img(chain_root);
                    bundle.oracle = std::move(oracle);
                    return bundle;
                }
            }
        }
    }
    throw NoRationalTorsion("no admissible null point found for p = " + std::to_string(p) +
                            ", n = " + std::to_string(n));
}

FixtureBundle product_fixture(const FixtureBundle& A, const FixtureBundle& B) {
    if (!A.ctx->field()->same(*B.ctx->field()))
        throw PreconditionViolated("product factors must share the base field");
    if (A.ctx->m() != 2 || B.ctx->m() != 2 || A.ctx->g() != 1 || B.ctx->g() != 1)
        throw PreconditionViolated("product fixtures take two elliptic level-2 bundles");
    if (A.basis.n != B.basis.n) throw PreconditionViolated("factors need equal torsion order");
    const FieldPtr& field = A.ctx->field();
    const std::uint32_t n = A.basis.n;

    auto tensor = [&](const AffinePoint& x, const AffinePoint& y) {
        std::vector<Fe> c(4, Fe::zero(field));
        for (unsigned i0 = 0; i0 < 2; ++i0)
            for (unsigned i1 = 0; i1 < 2; ++i1) c[i0 + 2 * i1] = x.c[i0] * y.c[i1];
        return c;
    };

    CtxPtr ctx = ThetaContext::make(field, 2, 2,
                                    tensor(A.ctx->null_point(), B.ctx->null_point()),
                                    std::max(A.ctx->zeta_order(), B.ctx->zeta_order()));
    auto wrap = [&](const std::vector<Fe>& c) { return AffinePoint(ctx, c); };
    AffinePoint za = A.ctx->null_point(), zb = B.ctx->null_point();
    const AffinePoint& a1 = A.basis.e[0].pt;
    const AffinePoint& a2 = A.basis.e[1].pt;
    const AffinePoint& b1 = B.basis.e[0].pt;
    const AffinePoint& b2 = B.basis.e[1].pt;
    const AffinePoint& a12 = A.basis.chain.at({0, 1});
    const AffinePoint& b12 = B.basis.chain.at({0, 1});

    FixtureBundle out;
    out.ctx = ctx;
    out.seed = A.seed ^ (B.seed << 1);
    out.basis.n = n;
    // order: e1 = (P_A, 0), e2 = (0, P_B) Z-side; e3 = (Q_A, 0), e4 = (0, Q_B)
    out.basis.e.push_back({wrap(tensor(a1, zb)), n, Side::Z});
    out.basis.e.push_back({wrap(tensor(za, b1)), n, Side::Z});
    out.basis.e.push_back({wrap(tensor(a2, zb)), n, Side::Dual});
    out.basis.e.push_back({wrap(tensor(za, b2)), n, Side::Dual});
    auto put = [&](unsigned i, unsigned j, std::vector<Fe> c) {
        out.basis.chain.emplace(std::make_pair(i, j), wrap(std::move(c)));
    };
    put(0, 1, tensor(a1, b1));
    put(0, 2, tensor(a12, zb));
    put(0, 3, tensor(a1, b2));
    put(1, 2, tensor(a2, b1));
    put(1, 3, tensor(za, b12));
    put(2, 3, tensor(a2, b2));
    return out;
}

FixtureBundle derive_level4_bundle(const FixtureBundle& b2, std::uint64_t seed) {
    const CtxPtr& ctx = b2.ctx;
    if (ctx->m() != 2) throw PreconditionViolated("expected a level-2 bundle");
    const std::uint32_t n = b2.basis.n;
    if (n % 4 != 0) throw PreconditionViolated("need 4 | n to derive a level-4 bundle");
    AffinePoint zero = ctx->null_point();

    // B[4] basis from the double of the bundle basis
    TorsionBasis b4;
    b4.n = 4;
    const std::uint32_t h = n / 4;
    std::vector<std::uint64_t> c1 = {h, 0}, c2 = {0, h}, c12 = {h, h};
    b4.e.push_back({b2.basis.lift_combination(c1, zero), 4, Side::Z});
    b4.e.push_back({b2.basis.lift_combination(c2, zero), 4, Side::Dual});
    b4.chain.emplace(std::make_pair(0u, 1u), b2.basis.lift_combination(c12, zero));

    LevelChangePlan plan = build_level_change_plan(ctx, b4, 2, seed);
    LevelChangeResult base = change_level(plan, zero);

    FixtureBundle out;
    out.ctx = base.target;
    out.seed = seed;
    out.basis.n = n;
    auto image = [&](const AffinePoint& pt) {
        std::vector<Fe> c = change_level_coords(plan, pt, IndexVector::zero(2, 1));
        return AffinePoint(base.target, std::move(c));
    };
    for (std::size_t i = 0; i < b2.basis.e.size(); ++i) {
        TorsionPoint tp;
        tp.pt = image(b2.basis.e[i].pt);
        tp.order = b2.basis.e[i].order;
        tp.tag = b2.basis.e[i].tag;
        out.basis.e.push_back(std::move(tp));
    }
    for (const auto& [key, pt] : b2.basis.chain)
        out.basis.chain.emplace(key, image(pt));
    return out;
}

} // namespace theta
