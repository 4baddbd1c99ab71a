#include "theta/lifts.hpp"

#include "theta/detail/smallmat.hpp"

namespace theta {

namespace {

using detail::SmallMat;

// orbit point of (e, 0) at level m
AffinePoint orbit_point(const CtxPtr& ctx, const IndexVector& e) {
    return theta_act(ctx->null_point(), ctx->elem_x(e));
}

std::uint32_t order_in_quotient(const IndexVector& e, std::uint32_t d) {
    return pi_project(e, d).order();
}

// Z(m)-index e* with l*E_i = mu_{m,n}(e*) for the canonical unit E_i
IndexVector scaled_unit_index(std::uint32_t n, std::uint32_t m, unsigned g, unsigned i,
                              std::uint64_t ell) {
    const std::uint32_t dd = n / m;
    IndexVector le = IndexVector::unit(n, g, i).scaled((std::int64_t)ell);
    IndexVector em = IndexVector::zero(m, g);
    for (unsigned k = 0; k < g; ++k) {
        if (le.c[k] % dd != 0) throw PreconditionViolated("l*e is not in the theta orbit");
        em.c[k] = (le.c[k] / dd) % m;
    }
    return em;
}

Fe pick_root(const std::vector<Fe>& cands, std::uint64_t seed) {
    if (cands.empty()) throw NoSuchRoot("no admissible scalar in the base field");
    return cands[seed % cands.size()];
}

} // namespace

NumberedGroup canonicalize_numbering(const CtxPtr& ctx, const std::vector<AffinePoint>& gens,
                                     const std::map<std::pair<unsigned, unsigned>, AffinePoint>& pairs,
                                     std::uint32_t n) {
    const std::uint32_t m = ctx->m();
    const unsigned g = ctx->g();
    if (n % m != 0 || n == m) throw DivisibilityViolation("need m | n, n > m");
    AffinePoint zero = ctx->null_point();

    // T: columns are the Z(m)-indices of d * w_j
    SmallMat T(m, g);
    for (unsigned j = 0; j < g; ++j) {
        AffinePoint dx = scalar_mult(n / m, gens[j], gens[j], zero, zero);
        bool found = false;
        for (std::size_t r = 0; r < ctx->coord_count() && !found; ++r) {
            IndexVector idx = IndexVector::from_rank(m, g, r);
            if (projectively_equal(dx, orbit_point(ctx, idx))) {
                for (unsigned i = 0; i < g; ++i) T.at(i, j) = idx.c[i];
                found = true;
            }
        }
        if (!found) throw PreconditionViolated("d*w_j is not in the Z-side theta orbit");
    }
    auto tinv = detail::inverse(T);
    if (!tinv) throw NotABasis("d-multiples of the generators do not span Z(m)");

    // U = T^-1 lifted mod n (n and m share prime factors since d | m)
    SmallMat U(n, g);
    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = 0; j < g; ++j) U.at(i, j) = tinv->at(i, j) % n;
    if (!detail::inverse(U)) throw NotABasis("numbering lift is singular mod n");

    NumberedGroup out;
    out.ctx = ctx;
    out.n = n;
    std::map<std::pair<unsigned, unsigned>, AffinePoint> chain(pairs);
    std::vector<AffinePoint> base = gens;
    auto combo = [&](const std::vector<std::uint64_t>& coeffs) {
        return linear_combination(coeffs, base, chain, zero);
    };
    std::vector<std::vector<std::uint64_t>> rows(g, std::vector<std::uint64_t>(g, 0));
    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = 0; j < g; ++j) rows[i][j] = U.at(i, j);
    for (unsigned i = 0; i < g; ++i) out.gens.push_back(combo(rows[i]));
    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = i + 1; j < g; ++j) {
            std::vector<std::uint64_t> s(g, 0);
            for (unsigned c = 0; c < g; ++c) s[c] = (rows[i][c] + rows[j][c]) % n;
            out.pair_lifts.emplace(std::make_pair(i, j), combo(s));
        }

    // the numbering invariant itself
    for (unsigned i = 0; i < g; ++i) {
        AffinePoint dx = scalar_mult(n / m, out.gens[i], out.gens[i], zero, zero);
        IndexVector want = IndexVector::unit(m, g, i);
        if (!projectively_equal(dx, orbit_point(ctx, want)))
            throw PreconditionViolated("canonical numbering failed");
    }
    return out;
}

ChainBasisLift good_lift_chain_basis(const NumberedGroup& group, std::uint64_t seed) {
    const CtxPtr& ctx = group.ctx;
    const std::uint32_t n = group.n, m = ctx->m();
    const unsigned g = ctx->g();
    const std::uint32_t d = n / m;
    AffinePoint zero = ctx->null_point();

    ChainBasisLift out;
    out.ctx = ctx;
    out.n = n;

    for (unsigned i = 0; i < g; ++i) {
        const std::uint64_t ell = order_in_quotient(IndexVector::unit(n, g, i), d);
        const IndexVector estar = scaled_unit_index(n, m, g, i, ell);
        const AffinePoint target = orbit_point(ctx, estar);
        const AffinePoint& gv = group.gens[i];

        AffinePoint s1 = scalar_mult(ell, gv, gv, zero, zero);
        auto c1 = proportionality_factor(target, s1);
        if (!c1) throw NotTorsion("ladder does not land on the expected orbit point");
        AffinePoint s2 = scalar_mult(ell - 1, gv, gv, zero, zero);
        AffinePoint r2 = theta_act(inv_point(gv), ctx->elem_x(estar));
        auto c2 = proportionality_factor(r2, s2);
        if (!c2) throw NotTorsion("symmetry relation is projectively inconsistent");

        // lambda^{2l} = c1/c2, filtered by lambda^{l^2} = c1
        std::vector<Fe> cands;
        for (const Fe& cand : nth_roots(*c1 / *c2, 2 * ell))
            if (cand.pow((std::int64_t)(ell * ell)) == *c1) cands.push_back(cand);
        if (cands.empty())
            throw NotSymCompatible("normalization system has no solution (kappa = -1)");
        Fe lam = pick_root(cands, seed);
        out.lambda.push_back(lam);
        out.ell.push_back(ell);
        out.gens.push_back(gv.scaled(lam));
    }

    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = i + 1; j < g; ++j) {
            const AffinePoint& gij = group.pair_lifts.at({i, j});
            const std::uint64_t ell = out.ell[i];
            const IndexVector estar = scaled_unit_index(n, m, g, i, ell);
            AffinePoint s3 = scalar_mult(ell, gij, group.gens[i], group.gens[j], zero);
            AffinePoint r3 = theta_act(group.gens[j], ctx->elem_x(estar));
            auto c3 = proportionality_factor(r3, s3);
            if (!c3) throw NotTorsion("cross relation is projectively inconsistent");
            // lambda_ij^l = lambda_j^l lambda_i^{-l(l-1)} c3
            Fe rhs = out.lambda[j].pow((std::int64_t)ell) *
                     out.lambda[i].pow(-(std::int64_t)(ell * (ell - 1))) * *c3;
            auto roots = nth_roots(rhs, ell);
            if (roots.empty())
                throw NotSymCompatible("pair normalization has no solution");
            Fe lam = pick_root(roots, seed);
            out.lambda_pair.emplace(std::make_pair(i, j), lam);
            out.pairs.emplace(std::make_pair(i, j), gij.scaled(lam));
        }
    return out;
}

namespace {

// representatives Z(d)^g embedded in Z(n) with components < d
std::size_t rep_count(std::uint32_t d, unsigned g) {
    std::size_t c = 1;
    for (unsigned i = 0; i < g; ++i) c *= d;
    return c;
}

IndexVector rep_from_rank(std::uint32_t n, std::uint32_t d, unsigned g, std::size_t r) {
    IndexVector v = IndexVector::zero(n, g);
    for (unsigned i = 0; i < g; ++i) {
        v.c[i] = (std::uint32_t)(r % d);
        r /= d;
    }
    return v;
}

std::size_t rep_rank(const IndexVector& v, std::uint32_t d) {
    std::size_t r = 0;
    for (unsigned i = v.g(); i-- > 0;) r = r * d + v.c[i];
    return r;
}

} // namespace

GoodLift expand_good_lift(const ChainBasisLift& chain, bool alt_schedule) {
    const CtxPtr& ctx = chain.ctx;
    const std::uint32_t n = chain.n, m = ctx->m();
    const unsigned g = ctx->g();
    const std::uint32_t d = n / m;
    AffinePoint zero = ctx->null_point();

    const std::size_t R = rep_count(d, g);
    std::vector<AffinePoint> reps(R, zero);
    std::vector<bool> have(R, false);
    reps[0] = zero;
    have[0] = true;
    for (unsigned i = 0; i < g; ++i) {
        IndexVector e = IndexVector::unit(n, g, i);
        if (d > 1) {
            reps[rep_rank(e, d)] = chain.gens[i];
            have[rep_rank(e, d)] = true;
        }
    }
    for (const auto& [ij, lift] : chain.pairs) {
        IndexVector e = IndexVector::unit(n, g, ij.first) + IndexVector::unit(n, g, ij.second);
        bool in_reps = true;
        for (unsigned k = 0; k < g; ++k) in_reps = in_reps && e.c[k] < d;
        if (in_reps) {
            reps[rep_rank(e, d)] = lift;
            have[rep_rank(e, d)] = true;
        }
    }

    // fill by weight; the pivot coordinate order is the schedule choice
    for (std::size_t weight = 2; weight <= (std::size_t)(d - 1) * g; ++weight) {
        for (std::size_t r = 0; r < R; ++r) {
            if (have[r]) continue;
            IndexVector v = rep_from_rank(n, d, g, r);
            std::size_t w = 0;
            for (unsigned k = 0; k < g; ++k) w += v.c[k];
            if (w != weight) continue;
            unsigned piv = g;
            if (!alt_schedule) {
                for (unsigned k = 0; k < g; ++k)
                    if (v.c[k]) { piv = k; break; }
            } else {
                for (unsigned k = g; k-- > 0;)
                    if (v.c[k]) { piv = k; break; }
            }
            IndexVector ei = IndexVector::unit(n, g, piv);
            IndexVector v1 = v - ei;
            if (v.c[piv] >= 2) {
                IndexVector v2 = v1 - ei;
                reps[r] = diff_add(reps[rep_rank(v1, d)], chain.gens[piv],
                                   reps[rep_rank(v2, d)], zero);
            } else {
                // v = rest + e_piv + e_other with rest free of the pivot coordinate
                unsigned other = g;
                for (unsigned k = 0; k < g; ++k)
                    if (k != piv && v1.c[k]) { other = k; break; }
                IndexVector ej = IndexVector::unit(n, g, other);
                IndexVector rest = v1 - ej;
                auto pr = std::minmax(piv, other);
                reps[r] = three_way_add(reps[rep_rank(v - ej, d)],
                                        chain.pairs.at({pr.first, pr.second}),
                                        reps[rep_rank(v - ei, d)], reps[rep_rank(rest, d)],
                                        chain.gens[piv], chain.gens[other], zero);
            }
            have[r] = true;
        }
    }
    for (std::size_t r = 0; r < R; ++r)
        if (!have[r]) throw DegeneratePoint("good-lift expansion incomplete");

    GoodLift out;
    out.chain = chain;
    std::size_t total = 1;
    for (unsigned i = 0; i < g; ++i) total *= n;
    out.table.reserve(total);
    for (std::size_t r = 0; r < total; ++r) {
        IndexVector e = IndexVector::from_rank(n, g, r);
        IndexVector ed = IndexVector::zero(n, g);
        IndexVector em = IndexVector::zero(m, g);
        for (unsigned k = 0; k < g; ++k) {
            ed.c[k] = e.c[k] % d;
            em.c[k] = ((e.c[k] - ed.c[k]) / d) % m;
        }
        if (em.is_zero()) out.table.push_back(reps[rep_rank(ed, d)]);
        else out.table.push_back(theta_act(reps[rep_rank(ed, d)], ctx->elem_x(em)));
    }
    return out;
}

TranslatedLift good_lift_translated(const GoodLift& lift, const AffinePoint& z,
                                    std::uint64_t seed) {
    const CtxPtr& ctx = lift.chain.ctx;
    const std::uint32_t n = lift.chain.n, m = ctx->m();
    const unsigned g = ctx->g();
    const std::uint32_t d = n / m;
    AffinePoint zero = ctx->null_point();

    // basis part: candidates for z + w_i from normal addition, the scale from
    // the translated ladder relation
    std::vector<AffinePoint> tgens;
    std::vector<Fe> lambdas;
    const bool z_is_zero = projectively_equal(z, zero);
    for (unsigned i = 0; i < g; ++i) {
        const std::uint64_t ell = lift.chain.ell[i];
        const IndexVector estar = scaled_unit_index(n, m, g, i, ell);
        const AffinePoint target = theta_act(z, ctx->elem_x(estar));
        if (z_is_zero && z.c == zero.c) {
            // the exact null lift: the translated family is the base family
            tgens.push_back(lift.chain.gens[i]);
            lambdas.push_back(Fe::one(ctx->field()));
            continue;
        }
        std::vector<AffinePoint> cands;
        if (z_is_zero) {
            cands.push_back(lift.chain.gens[i]);
        } else {
            cands = normal_add(z, lift.chain.gens[i], zero);
        }
        bool done = false;
        for (const auto& cand : cands) {
            AffinePoint s;
            try {
                s = scalar_mult(ell, cand, lift.chain.gens[i], z, zero);
            } catch (const DegeneratePoint&) {
                continue;
            }
            auto c = proportionality_factor(target, s);
            if (!c) continue;
            auto roots = nth_roots(*c, ell);
            if (roots.empty()) continue;
            Fe lam = roots[seed % roots.size()];
            tgens.push_back(cand.scaled(lam));
            lambdas.push_back(lam);
            done = true;
            break;
        }
        if (!done) throw DegeneratePoint("no candidate lift of z + w_i satisfies the ladder relation");
    }

    // pair lifts and representative table by translated three-way additions
    const std::size_t R = rep_count(d, g);
    std::vector<AffinePoint> reps(R, z);
    std::vector<bool> have(R, false);
    reps[0] = z;
    have[0] = true;
    for (unsigned i = 0; i < g; ++i) {
        IndexVector e = IndexVector::unit(n, g, i);
        reps[rep_rank(e, d)] = tgens[i];
        have[rep_rank(e, d)] = true;
    }
    // base-lift representative table for the untranslated group
    auto base_rep = [&](const IndexVector& v) -> const AffinePoint& {
        return lift.table[v.rank()];
    };
    for (std::size_t weight = 2; weight <= (std::size_t)(d - 1) * g; ++weight) {
        for (std::size_t r = 0; r < R; ++r) {
            if (have[r]) continue;
            IndexVector v = rep_from_rank(n, d, g, r);
            std::size_t w = 0;
            for (unsigned k = 0; k < g; ++k) w += v.c[k];
            if (w != weight) continue;
            unsigned piv = g;
            for (unsigned k = 0; k < g; ++k)
                if (v.c[k]) { piv = k; break; }
            IndexVector ei = IndexVector::unit(n, g, piv);
            IndexVector v1 = v - ei;
            // z + v = (z + v1) + e_piv via the translated three-way relation
            reps[r] = three_way_add(reps[rep_rank(v1, d)], base_rep(v), tgens[piv], z,
                                    base_rep(v1), lift.chain.gens[piv], zero);
            have[r] = true;
        }
    }
    for (std::size_t r = 0; r < R; ++r)
        if (!have[r]) throw DegeneratePoint("translated expansion incomplete");

    TranslatedLift out;
    out.base = z;
    out.lambda = std::move(lambdas);
    std::size_t total = 1;
    for (unsigned i = 0; i < g; ++i) total *= n;
    out.table.reserve(total);
    for (std::size_t r = 0; r < total; ++r) {
        IndexVector e = IndexVector::from_rank(n, g, r);
        IndexVector ed = IndexVector::zero(n, g);
        IndexVector em = IndexVector::zero(m, g);
        for (unsigned k = 0; k < g; ++k) {
            ed.c[k] = e.c[k] % d;
            em.c[k] = ((e.c[k] - ed.c[k]) / d) % m;
        }
        if (em.is_zero()) out.table.push_back(reps[rep_rank(ed, d)]);
        else out.table.push_back(theta_act(reps[rep_rank(ed, d)], ctx->elem_x(em)));
    }
    return out;
}

} // namespace theta
