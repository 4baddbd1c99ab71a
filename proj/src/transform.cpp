#include "theta/transform.hpp"

#include <future>
#include <numeric>

namespace theta {

SquaresDecomposition sum_of_squares(std::uint32_t d, std::uint32_t n) {
    if (d <= 1 || n <= 1) throw PreconditionViolated("need d, n > 1");
    // exhaustive search for the minimal number of parts, nonincreasing parts
    for (std::uint32_t r = 1; r <= d; ++r) {
        std::vector<std::uint32_t> parts;
        std::function<bool(std::uint32_t, std::uint32_t, std::uint32_t)> rec =
            [&](std::uint32_t left, std::uint32_t count, std::uint32_t maxpart) -> bool {
            if (count == 0) return left == 0;
            for (std::uint32_t a = maxpart; a >= 1; --a) {
                if ((std::uint64_t)a * a > left) continue;
                if (std::gcd(a, n) != 1) continue;
                if (left - a * a > (std::uint64_t)(count - 1) * a * a) continue;
                parts.push_back(a);
                if (rec(left - a * a, count - 1, a)) return true;
                parts.pop_back();
            }
            return false;
        };
        std::uint32_t cap = 1;
        while ((std::uint64_t)(cap + 1) * (cap + 1) <= d) ++cap;
        if (rec(d, r, cap)) {
            SquaresDecomposition out;
            out.d = d;
            out.parts = parts;
            return out;
        }
    }
    throw PreconditionViolated("no admissible sum-of-squares decomposition");
}

namespace {

// conjugate a point family into the Hadamard-transformed coordinates
AffinePoint to_delta(const CtxPtr& delta_ctx, const AffinePoint& pt) {
    AffinePoint h = hadamard_dual(pt);
    return AffinePoint(delta_ctx, std::move(h.c));
}

AffinePoint from_delta(const CtxPtr& ctx, const AffinePoint& pt) {
    AffinePoint h = hadamard_dual_inverse(pt);
    return AffinePoint(ctx, std::move(h.c));
}

} // namespace

LevelChangePlan build_level_change_plan(const CtxPtr& ctx, const TorsionBasis& basis,
                                        std::uint32_t d, std::uint64_t seed, unsigned jobs) {
    const std::uint32_t m = ctx->m();
    const std::uint32_t n = m * d;
    if (m % d != 0) throw PreconditionViolated("change of level requires d | m");
    if (basis.n != n) throw LevelMismatch("basis torsion order must be n = m*d");
    if (ctx->zeta_order() % (2 * (std::uint64_t)n) != 0)
        throw NoSuchRoot("context must carry a primitive 2n-th root of unity");
    const unsigned g = ctx->g();

    LevelChangePlan plan;
    plan.ctx = ctx;
    plan.n = n;
    plan.d = d;
    plan.seed = seed;
    plan.jobs = jobs == 0 ? 1 : jobs;
    plan.decomposition = sum_of_squares(d, n);

    // basis repair: symplectic, side-split and symmetric compatible
    BasisFixResult fixed = fix_basis(ctx, basis, d);

    // Z-side half
    std::vector<AffinePoint> g1pts;
    std::map<std::pair<unsigned, unsigned>, AffinePoint> g1pairs;
    for (unsigned i = 0; i < g; ++i) g1pts.push_back(fixed.basis.e[i].pt);
    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = i + 1; j < g; ++j) g1pairs.emplace(std::make_pair(i, j), fixed.basis.chain.at({i, j}));
    NumberedGroup G1 = canonicalize_numbering(ctx, g1pts, g1pairs, n);
    plan.g1 = expand_good_lift(good_lift_chain_basis(G1, seed));

    // dual half, moved to the Hadamard-conjugated structure where it becomes
    // a Z-side group
    AffinePoint delta_null = hadamard_dual(ctx->null_point());
    plan.delta_ctx = ThetaContext::make(ctx->field(), g, m, delta_null.c, ctx->zeta_order());
    std::vector<AffinePoint> g2pts;
    std::map<std::pair<unsigned, unsigned>, AffinePoint> g2pairs;
    for (unsigned i = 0; i < g; ++i)
        g2pts.push_back(to_delta(plan.delta_ctx, fixed.basis.e[g + i].pt));
    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = i + 1; j < g; ++j)
            g2pairs.emplace(std::make_pair(i, j),
                            to_delta(plan.delta_ctx, fixed.basis.chain.at({g + i, g + j})));
    NumberedGroup G2 = canonicalize_numbering(plan.delta_ctx, g2pts, g2pairs, n);
    plan.g2_delta = expand_good_lift(good_lift_chain_basis(G2, seed));
    return plan;
}

std::vector<Fe> change_level_coords(const LevelChangePlan& plan, const AffinePoint& x,
                                    const IndexVector& alpha) {
    const CtxPtr& ctx = plan.ctx;
    const std::uint32_t n = plan.n;
    AffinePoint zero = ctx->null_point();
    AffinePoint delta_zero = plan.delta_ctx->null_point();

    // good lifts of x + Q for Q in G2, computed in the delta coordinates and
    // pulled back
    AffinePoint x_delta = to_delta(plan.delta_ctx, x);
    TranslatedLift xq_delta = good_lift_translated(plan.g2_delta, x_delta, plan.seed);
    std::size_t total = xq_delta.table.size();
    std::vector<AffinePoint> xq;
    xq.reserve(total);
    for (const auto& entry : xq_delta.table) xq.push_back(from_delta(ctx, entry));

    // for each Q: good lifts of (x+Q) + P over G1, then the kernel sums
    const auto& parts = plan.decomposition.parts;
    std::vector<Fe> out(total, Fe::zero(ctx->field()));

    auto accumulate_q = [&](std::size_t q_begin, std::size_t q_end) {
        std::vector<Fe> acc(total, Fe::zero(ctx->field()));
        for (std::size_t q = q_begin; q < q_end; ++q) {
            TranslatedLift txq = good_lift_translated(plan.g1, xq[q], plan.seed);
            for (std::size_t j = 0; j < total; ++j) {
                Fe prod = Fe::one(ctx->field());
                for (std::uint32_t a : parts) {
                    const AffinePoint& w = txq.table[j];
                    AffinePoint aw = a == 1 ? w : scalar_mult(a, w, w, zero, zero);
                    prod = prod * aw.at(alpha);
                }
                acc[j] = acc[j] + prod;
            }
        }
        return acc;
    };

    if (plan.jobs <= 1 || total < 2) {
        out = accumulate_q(0, total);
    } else {
        unsigned nj = std::min<std::size_t>(plan.jobs, total);
        std::vector<std::future<std::vector<Fe>>> futs;
        std::size_t chunk = (total + nj - 1) / nj;
        for (unsigned t = 0; t < nj; ++t) {
            std::size_t b = t * chunk, e = std::min<std::size_t>(total, b + chunk);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, accumulate_q, b, e));
        }
        for (auto& f : futs) {
            auto part = f.get();
            for (std::size_t j = 0; j < total; ++j) out[j] = out[j] + part[j];
        }
    }
    (void)n;
    return out;
}

LevelChangeResult change_level(const LevelChangePlan& plan, const AffinePoint& x) {
    LevelChangeResult res;
    res.coords = change_level_coords(plan, x, IndexVector::zero(plan.ctx->m(), plan.ctx->g()));
    // level-n context from the image of the null point
    AffinePoint zero = plan.ctx->null_point();
    std::vector<Fe> null_n = x.c == zero.c
        ? res.coords
        : change_level_coords(plan, zero, IndexVector::zero(plan.ctx->m(), plan.ctx->g()));
    res.target = ThetaContext::make(plan.ctx->field(), plan.ctx->g(), plan.n, std::move(null_n),
                                    plan.ctx->zeta_order());
    return res;
}

} // namespace theta
