#include "theta/isogeny.hpp"

#include "theta/detail/smallmat.hpp"

namespace theta {

namespace {

using detail::SmallMat;

// complete the first-half columns v_1..v_g to a symplectic matrix over Z/mZ;
// prime-power m, the v's must be extendable (isotropic, unimodular family)
SymplecticMap complete_symplectic(std::uint32_t m, unsigned g,
                                  const std::vector<std::vector<std::uint32_t>>& cols) {
    const unsigned dim = 2 * g;
    // start from the standard basis and correct: brute-force search over
    // candidate dual columns; desk-scale dimensions only
    if (g == 1) {
        // column (a, b); need (c, e) with a*e - b*c = 1 mod m
        std::uint32_t a = cols[0][0], b = cols[0][1];
        for (std::uint32_t c = 0; c < m; ++c)
            for (std::uint32_t e = 0; e < m; ++e) {
                std::int64_t det = (std::int64_t)a * e - (std::int64_t)b * c;
                if (((det % m) + m) % m == 1) {
                    SymplecticMap out(m, 1, {a, c, b, e});
                    if (out.is_symplectic()) return out;
                }
            }
        throw NotIsotropic("kernel column cannot be completed to a symplectic matrix");
    }
    // general case: greedy completion via the symplectic form
    // J((x1,y1),(x2,y2)) = <x1,y2> - <y1,x2>
    auto form = [&](const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v) {
        std::int64_t s = 0;
        for (unsigned k = 0; k < g; ++k)
            s += (std::int64_t)u[k] * v[g + k] - (std::int64_t)u[g + k] * v[k];
        return (std::uint32_t)(((s % m) + m) % m);
    };
    std::vector<std::vector<std::uint32_t>> basis = cols; // first half
    std::vector<std::vector<std::uint32_t>> duals(g);
    for (unsigned k = 0; k < g; ++k) {
        // find w with form(basis[k], w) a unit and form(basis[j], w) = 0, j != k,
        // form(duals[j], w) = 0 for j < k
        bool found = false;
        std::size_t total = 1;
        for (unsigned t = 0; t < dim; ++t) total *= m;
        for (std::size_t rank = 1; rank < total && !found; ++rank) {
            std::vector<std::uint32_t> w(dim);
            std::size_t r = rank;
            for (unsigned t = 0; t < dim; ++t) { w[t] = (std::uint32_t)(r % m); r /= m; }
            std::uint32_t fk = form(basis[k], w);
            auto inv = detail::unit_inverse(fk, m);
            if (!inv) continue;
            bool ok = true;
            for (unsigned j = 0; j < g && ok; ++j)
                if (j != k && form(basis[j], w) != 0) ok = false;
            for (unsigned j = 0; j < k && ok; ++j)
                if (form(duals[j], w) != 0) ok = false;
            if (!ok) continue;
            for (auto& x : w) x = (std::uint32_t)((std::uint64_t)x * *inv % m);
            duals[k] = w;
            found = true;
        }
        if (!found) throw NotIsotropic("symplectic completion failed");
    }
    SymplecticMap out(m, g, std::vector<std::uint32_t>(4 * g * g, 0));
    for (unsigned col = 0; col < g; ++col)
        for (unsigned row = 0; row < dim; ++row) out.set(row, col, basis[col][row]);
    for (unsigned col = 0; col < g; ++col)
        for (unsigned row = 0; row < dim; ++row) out.set(row, g + col, duals[col][row]);
    if (!out.is_symplectic()) throw NotIsotropic("completion is not symplectic");
    return out;
}

} // namespace

AffinePoint IsogenyPlan::carry(const AffinePoint& x) const {
    auto [ctx2, pts] = act_symplectic(x.ctx, moved, {x});
    (void)ctx2;
    AffinePoint moved_pt = pts[0];
    bool flip = false;
    for (bool b : k2_flip) flip = flip || b;
    if (flip) {
        std::vector<bool> c1(k2_flip.size(), false);
        moved_pt = act_k2(moved_pt, c1, k2_flip);
    }
    return AffinePoint(source, std::move(moved_pt.c));
}

IsogenyPlan isogeny_setup(const CtxPtr& ctx, const std::vector<AffinePoint>& kernel_gens,
                          const std::vector<AffinePoint>& group_gens,
                          const std::map<std::pair<unsigned, unsigned>, AffinePoint>& group_pairs,
                          std::uint32_t d, std::uint64_t seed) {
    const std::uint32_t m = ctx->m();
    const unsigned g = ctx->g();
    if (m % d != 0) throw PreconditionViolated("isogeny degree must satisfy d | m");
    const std::uint32_t n = m * d;
    if (kernel_gens.size() != g) throw PreconditionViolated("need g kernel generators");
    AffinePoint zero = ctx->null_point();
    const Fe zm = ctx->zeta(m);

    // locate the kernel inside K(m) and check isotropy and type Z(d)
    std::vector<IndexVector> kx;
    std::vector<DualIndex> ky;
    for (const auto& t : kernel_gens) {
        auto idx = find_in_orbit(t);
        if (!idx) throw PreconditionViolated("kernel point is not m-torsion in the theta orbit");
        kx.push_back(idx->first);
        ky.push_back(idx->second);
        std::uint32_t ord = std::lcm(idx->first.order(), idx->second.v.order());
        if (ord != d) throw PreconditionViolated("kernel generator does not have order d");
    }
    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = 0; j < g; ++j)
            if (commutator_pairing(kx[i], ky[i], kx[j], ky[j], zm) != Fe::one(ctx->field()))
                throw NotIsotropic("kernel is not isotropic for the commutator pairing");

    // symplectic matrix M with M(standard kernel indices) = kernel indices
    std::vector<std::vector<std::uint32_t>> cols(g, std::vector<std::uint32_t>(2 * g, 0));
    const std::uint32_t md = m / d;
    for (unsigned j = 0; j < g; ++j) {
        for (unsigned i = 0; i < g; ++i) {
            if (kx[j].c[i] % md != 0 || ky[j].v.c[i] % md != 0)
                throw PreconditionViolated("kernel index is not divisible by m/d");
            cols[j][i] = kx[j].c[i] / md;
            cols[j][g + i] = ky[j].v.c[i] / md;
        }
    }
    SymplecticMap M = complete_symplectic(m, g, cols);

    IsogenyPlan plan;
    plan.moved = M;
    plan.d = d;
    plan.n = n;
    plan.seed = seed;
    plan.decomposition = sum_of_squares(d, n);

    // move kernel and group into the standard position
    std::vector<AffinePoint> carried;
    carried.reserve(kernel_gens.size() + group_gens.size() + group_pairs.size());
    for (const auto& p : kernel_gens) carried.push_back(p);
    for (const auto& p : group_gens) carried.push_back(p);
    std::vector<std::pair<unsigned, unsigned>> pair_keys;
    for (const auto& [key, p] : group_pairs) {
        pair_keys.push_back(key);
        carried.push_back(p);
    }
    auto [ctx1, pts1] = act_symplectic(ctx, plan.moved, carried);

    // kernel must now be the standard Z-side subgroup
    for (unsigned j = 0; j < g; ++j) {
        IndexVector want = IndexVector::zero(m, g);
        want.c[j] = md;
        AffinePoint expect = theta_act(ctx1->null_point(), ctx1->elem_x(want));
        if (!projectively_equal(pts1[j], expect))
            throw PreconditionViolated("kernel did not land on the standard orbit position");
    }

    // repair the theta structure so G1 is symmetric compatible
    std::vector<AffinePoint> ggens(pts1.begin() + g, pts1.begin() + g + group_gens.size());
    ThetaFixResult fixed = fix_theta_structure(ctx1, ggens, d);
    plan.source = fixed.ctx;
    plan.k2_flip = fixed.character;

    std::map<std::pair<unsigned, unsigned>, AffinePoint> gp;
    {
        const std::vector<bool> no_flip(g, false);
        std::size_t off = g + group_gens.size();
        for (std::size_t idx = 0; idx < pair_keys.size(); ++idx) {
            AffinePoint moved_pair = pts1[off + idx];
            if (plan.k2_flip != no_flip)
                moved_pair = act_k2(moved_pair, no_flip, plan.k2_flip);
            gp.emplace(pair_keys[idx], AffinePoint(plan.source, std::move(moved_pair.c)));
        }
    }
    std::vector<AffinePoint> gg_src;
    for (auto& p : fixed.basis) gg_src.emplace_back(plan.source, p.c);

    NumberedGroup G1 = canonicalize_numbering(plan.source, gg_src, gp, n);

    // the kernel must sit at the m-multiples of the numbering
    for (unsigned j = 0; j < g; ++j) {
        AffinePoint mk = scalar_mult(m, G1.gens[j], G1.gens[j], plan.source->null_point(),
                                     plan.source->null_point());
        IndexVector want = IndexVector::zero(m, g);
        want.c[j] = md;
        AffinePoint expect = theta_act(plan.source->null_point(), plan.source->elem_x(want));
        if (!projectively_equal(mk, expect))
            throw PreconditionViolated("kernel is not contained in the numbered group");
    }

    plan.g1 = expand_good_lift(good_lift_chain_basis(G1, seed));

    // target null point = image of 0
    AffinePoint img0 = isogeny_eval(plan, plan.source->null_point());
    plan.target = ThetaContext::make(ctx->field(), g, m, img0.c, ctx->zeta_order());
    return plan;
}

AffinePoint isogeny_eval(const IsogenyPlan& plan, const AffinePoint& x) {
    const CtxPtr& ctx = plan.g1.chain.ctx;
    const std::uint32_t m = ctx->m();
    const unsigned g = ctx->g();
    const std::uint32_t d = plan.d, n = plan.n;
    AffinePoint zero = ctx->null_point();
    if (x.ctx->m() != m || x.ctx->g() != g) throw LevelMismatch("point has wrong level");
    AffinePoint xin(ctx, x.c);

    TranslatedLift tx = good_lift_translated(plan.g1, xin, plan.seed);
    const auto& parts = plan.decomposition.parts;
    const std::size_t count = ctx->coord_count();
    std::vector<Fe> out(count, Fe::zero(ctx->field()));

    // d^g kernel translates mu_{d,n}(Z(d)) = m * Z(d)^g inside Z(n)
    std::size_t kt = 1;
    for (unsigned i = 0; i < g; ++i) kt *= d;

    for (std::size_t j0r = 0; j0r < count; ++j0r) {
        IndexVector j0 = IndexVector::from_rank(m, g, j0r);
        // digits: j0 = j1 + d*j2 with j1 in [0,d), j2 in [0,m/d)
        IndexVector j1 = IndexVector::zero(n, g);
        IndexVector j2 = IndexVector::zero(m, g);
        for (unsigned k = 0; k < g; ++k) {
            j1.c[k] = j0.c[k] % d;
            j2.c[k] = j0.c[k] / d;
        }
        Fe acc = Fe::zero(ctx->field());
        for (std::size_t nu = 0; nu < kt; ++nu) {
            IndexVector shift = IndexVector::zero(n, g);
            std::size_t r = nu;
            for (unsigned k = 0; k < g; ++k) {
                shift.c[k] = (std::uint32_t)((r % d) * m % n);
                r /= d;
            }
            const AffinePoint& w = tx.table[(shift + j1).rank()];
            Fe prod = Fe::one(ctx->field());
            for (std::uint32_t a : parts) {
                AffinePoint aw = a == 1 ? w : scalar_mult(a, w, w, zero, zero);
                prod = prod * aw.at(j2);
            }
            acc = acc + prod;
        }
        out[j0r] = acc;
    }
    return AffinePoint(plan.target ? plan.target : ctx, std::move(out));
}

} // namespace theta
