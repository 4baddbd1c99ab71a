#include "theta/arith.hpp"

#include <algorithm>

namespace theta {

namespace {

// Z(2) inside Z(m) via mu_{2,m}; characters of Z(2) as sign masks.
struct TwoTorsion {
    std::uint32_t m;
    unsigned g;
    std::uint32_t half;
    explicit TwoTorsion(const ThetaContext& ctx) : m(ctx.m()), g(ctx.g()), half(ctx.m() / 2) {}

    IndexVector eta(unsigned bits) const {
        IndexVector e = IndexVector::zero(m, g);
        for (unsigned t = 0; t < g; ++t)
            if (bits & (1u << t)) e.c[t] = half;
        return e;
    }
    static int sign(unsigned chi, unsigned bits) {
        unsigned s = chi & bits;
        int parity = __builtin_popcount(s) & 1;
        return parity ? -1 : 1;
    }
};

// L(chi, i, j, u, v) = sum_eta chi(eta) u_{i+eta} v_{j+eta}
Fe Lsum(const TwoTorsion& tt, unsigned chi, const IndexVector& i, const IndexVector& j,
        const AffinePoint& u, const AffinePoint& v) {
    Fe acc = Fe::zero(u.ctx->field());
    for (unsigned b = 0; b < (1u << tt.g); ++b) {
        IndexVector e = tt.eta(b);
        Fe term = u.c[(i + e).rank()] * v.c[(j + e).rank()];
        acc = TwoTorsion::sign(chi, b) > 0 ? acc + term : acc - term;
    }
    return acc;
}

// halves of s in Z(m)^g (canonical representative), empty if not divisible
std::optional<IndexVector> half_of(const IndexVector& s) {
    IndexVector t = IndexVector::zero(s.n, s.g());
    for (unsigned k = 0; k < s.g(); ++k) {
        if (s.c[k] % 2 != 0) return std::nullopt;
        t.c[k] = s.c[k] / 2;
    }
    return t;
}

void check_ctx(const AffinePoint& a, const AffinePoint& b) {
    if (a.ctx->m() != b.ctx->m() || a.ctx->g() != b.ctx->g() ||
        !a.ctx->field()->same(*b.ctx->field()))
        throw LevelMismatch("points from different contexts");
}

// Per-chi value of L(chi, a, b, u, v) where (u, v) sit in slots (1,2) of the
// Riemann tuple (x+y, x-y, 0, 0; x, x, y, y), solved by division through the
// zero-lift factor.  Returns nullopt when every admissible index choice has a
// vanishing denominator for this chi.
std::optional<Fe> solve_uv_term(const TwoTorsion& tt, unsigned chi,
                                const IndexVector& a, const IndexVector& b,
                                const AffinePoint& x, const AffinePoint& y,
                                const AffinePoint& zero) {
    const std::size_t N = x.c.size();
    for (std::size_t r3 = 0; r3 < N; ++r3) {
        IndexVector i3 = IndexVector::from_rank(tt.m, tt.g, r3);
        for (std::size_t r4 = 0; r4 < N; ++r4) {
            IndexVector i4 = IndexVector::from_rank(tt.m, tt.g, r4);
            auto t = half_of((-a) + b + i3 + i4);
            if (!t) continue;
            Fe den = Lsum(tt, chi, i3, i4, zero, zero);
            if (den.is_zero()) continue;
            Fe num = Lsum(tt, chi, a + *t, b - *t, x, x) * Lsum(tt, chi, i3 - *t, i4 - *t, y, y);
            return num / den;
        }
    }
    return std::nullopt;
}

// u_a * v_b for the pair (u, v) = (x+y, x-y) determined by (x, y, zero); the
// translate-by-2-torsion variants extend coverage when plain relations have
// vanishing denominators (only relevant at m = 2 where they recover the
// symmetric part of the product).
std::optional<Fe> pair_product(const TwoTorsion& tt, const IndexVector& a, const IndexVector& b,
                               const AffinePoint& x, const AffinePoint& y,
                               const AffinePoint& zero) {
    const FieldPtr& spec = x.ctx->field();
    Fe acc = Fe::zero(spec);
    for (unsigned chi = 0; chi < (1u << tt.g); ++chi) {
        auto term = solve_uv_term(tt, chi, a, b, x, y, zero);
        if (!term) return std::nullopt;
        acc = acc + *term;
    }
    Fe inv2g = Fe(spec, (1u << tt.g) % spec->p()).inv();
    return acc * inv2g;
}

// Partial sums at m = 2: when a-b has odd support S, the characters acting
// nontrivially on span(S) have identically vanishing null factors, and the
// solvable ones only determine sum_{eta in span(S)} u_{a+eta} v_{b+eta}.
std::optional<Fe> pair_partial_sum(const TwoTorsion& tt, const IndexVector& a,
                                   const IndexVector& b, const AffinePoint& x,
                                   const AffinePoint& y, const AffinePoint& zero,
                                   unsigned odd_mask) {
    const FieldPtr& spec = x.ctx->field();
    const std::size_t N = x.c.size();
    Fe acc = Fe::zero(spec);
    unsigned solvable = 0;
    for (unsigned chi = 0; chi < (1u << tt.g); ++chi) {
        if (chi & odd_mask) continue; // structurally vanishing denominators
        bool done = false;
        for (std::size_t r3 = 0; r3 < N && !done; ++r3) {
            IndexVector i3 = IndexVector::from_rank(tt.m, tt.g, r3);
            for (std::size_t r4 = 0; r4 < N; ++r4) {
                IndexVector i4 = IndexVector::from_rank(tt.m, tt.g, r4);
                auto t = half_of((-a) + b + i3 + i4);
                if (!t) continue;
                Fe den = Lsum(tt, chi, i3, i4, zero, zero);
                if (den.is_zero()) continue;
                Fe num = Lsum(tt, chi, a + *t, b - *t, x, x) *
                         Lsum(tt, chi, i3 - *t, i4 - *t, y, y);
                acc = acc + num / den;
                done = true;
                break;
            }
        }
        if (!done) return std::nullopt;
        ++solvable;
    }
    return acc / Fe(spec, solvable % spec->p());
}

} // namespace

AffinePoint diff_add(const AffinePoint& x, const AffinePoint& y,
                     const AffinePoint& xmy, const AffinePoint& zero) {
    check_ctx(x, y);
    check_ctx(x, xmy);
    check_ctx(x, zero);
    const auto& ctx = *x.ctx;
    const TwoTorsion tt(ctx);
    const std::size_t N = x.c.size();
    std::vector<Fe> out(N, Fe::zero(ctx.field()));
    std::vector<bool> done(N, false);
    std::size_t remaining = N;

    // phase 1: u_a = (u_a v_b) / v_b over any index with nonzero denominator
    for (std::size_t ra = 0; ra < N && remaining; ++ra) {
        IndexVector a = IndexVector::from_rank(tt.m, tt.g, ra);
        for (std::size_t rb = 0; rb < N; ++rb) {
            if (xmy.c[rb].is_zero()) continue;
            IndexVector b = IndexVector::from_rank(tt.m, tt.g, rb);
            auto p = pair_product(tt, a, b, x, y, zero);
            if (!p) continue;
            out[ra] = *p / xmy.c[rb];
            done[ra] = true;
            --remaining;
            break;
        }
    }
    // phase 2 (m = 2): a single odd coordinate in a-b gives the two-term
    // relation u_a v_b + u_{a+e_k} v_{b+e_k} = T(a,b); solve once the partner
    // coordinate is known.
    bool progress = true;
    while (remaining && progress) {
        progress = false;
        for (std::size_t ra = 0; ra < N; ++ra) {
            if (done[ra]) continue;
            IndexVector a = IndexVector::from_rank(tt.m, tt.g, ra);
            for (unsigned k = 0; k < tt.g && !done[ra]; ++k) {
                IndexVector ek = tt.eta(1u << k);
                std::size_t partner = (a + ek).rank();
                if (!done[partner]) continue;
                for (std::size_t rb = 0; rb < N; ++rb) {
                    if (xmy.c[rb].is_zero()) continue;
                    IndexVector b = IndexVector::from_rank(tt.m, tt.g, rb);
                    IndexVector diff = a - b;
                    // need odd support exactly {k}
                    bool ok = true;
                    for (unsigned t = 0; t < tt.g; ++t) {
                        bool odd = diff.c[t] % 2 != 0;
                        if (odd != (t == k)) { ok = false; break; }
                    }
                    if (!ok) continue;
                    auto s = pair_partial_sum(tt, a, b, x, y, zero, 1u << k);
                    if (!s) continue;
                    out[ra] = (*s - out[partner] * xmy.c[(b + ek).rank()]) / xmy.c[rb];
                    done[ra] = true;
                    --remaining;
                    progress = true;
                    break;
                }
            }
        }
    }
    if (remaining) throw DegeneratePoint("diff_add: all denominators vanish");
    return AffinePoint(x.ctx, std::move(out));
}

AffinePoint three_way_add(const AffinePoint& xy, const AffinePoint& yz,
                          const AffinePoint& xz, const AffinePoint& x,
                          const AffinePoint& y, const AffinePoint& z,
                          const AffinePoint& zero) {
    check_ctx(xy, yz);
    check_ctx(xy, xz);
    check_ctx(xy, x);
    check_ctx(xy, y);
    check_ctx(xy, z);
    check_ctx(xy, zero);
    const auto& ctx = *xy.ctx;
    const TwoTorsion tt(ctx);
    const std::size_t N = xy.c.size();
    const FieldPtr& spec = ctx.field();
    const AffinePoint iy = inv_point(y), ix = inv_point(x), iz = inv_point(z);
    Fe inv2g = Fe(spec, (1u << tt.g) % spec->p()).inv();

    // tuple (0, x+y, x+z, y+z; x+y+z, -z, -y, -x): the unknown u sits in slot 5.
    // With i5 = a, i6 = b the first slots are i1 = a-t, i2 = b+t for free t,
    // and the position constraint forces i3+i4 = a-b.
    auto solve_term = [&](unsigned chi, const IndexVector& a, const IndexVector& b)
        -> std::optional<Fe> {
        for (std::size_t r3 = 0; r3 < N; ++r3) {
            IndexVector i3 = IndexVector::from_rank(tt.m, tt.g, r3);
            IndexVector i4 = a - b - i3;
            for (std::size_t rt = 0; rt < N; ++rt) {
                IndexVector t = IndexVector::from_rank(tt.m, tt.g, rt);
                Fe den = Lsum(tt, chi, i3 - t, i4 - t, iy, ix);
                if (den.is_zero()) continue;
                Fe num = Lsum(tt, chi, a - t, b + t, zero, xy) *
                         Lsum(tt, chi, i3, i4, xz, yz);
                return num / den;
            }
        }
        return std::nullopt;
    };

    std::vector<Fe> out(N, Fe::zero(spec));
    for (std::size_t ra = 0; ra < N; ++ra) {
        IndexVector a = IndexVector::from_rank(tt.m, tt.g, ra);
        bool ok = false;
        for (std::size_t rb = 0; rb < N && !ok; ++rb) {
            IndexVector b = IndexVector::from_rank(tt.m, tt.g, rb);
            if (iz.c[rb].is_zero()) continue;
            Fe acc = Fe::zero(spec);
            bool all = true;
            for (unsigned chi = 0; chi < (1u << tt.g) && all; ++chi) {
                auto term = solve_term(chi, a, b);
                if (!term) all = false;
                else acc = acc + *term;
            }
            if (!all) continue;
            out[ra] = acc * inv2g / iz.c[rb];
            ok = true;
        }
        if (!ok) throw DegeneratePoint("three_way_add: all denominators vanish");
    }
    return AffinePoint(xy.ctx, std::move(out));
}

namespace {

void ladder_step(LadderState& s, bool bit, const AffinePoint& x, const AffinePoint& y,
                 const AffinePoint& xy, const AffinePoint& zero) {
    if (!bit) {
        AffinePoint a1 = diff_add(s.kx, s.kx, zero, zero);
        AffinePoint a2 = diff_add(s.kx1, s.kx, x, zero);
        AffinePoint b = diff_add(s.kxy, s.kx, y, zero);
        AffinePoint c = diff_add(s.kxy1, s.kx, xy, zero);
        s = {std::move(a1), std::move(a2), std::move(b), std::move(c)};
    } else {
        AffinePoint a1 = diff_add(s.kx1, s.kx, x, zero);
        AffinePoint a2 = diff_add(s.kx1, s.kx1, zero, zero);
        AffinePoint b = diff_add(s.kxy1, s.kx, xy, zero);
        AffinePoint c = diff_add(s.kxy1, s.kx1, y, zero);
        s = {std::move(a1), std::move(a2), std::move(b), std::move(c)};
    }
}

} // namespace

AffinePoint scalar_mult(std::uint64_t ell, const AffinePoint& xy, const AffinePoint& x,
                        const AffinePoint& y, const AffinePoint& zero) {
    if (ell == 0) return y;
    if (ell == 1) return xy;
    LadderState s{zero, x, y, xy};
    int top = 63;
    while (top >= 0 && !((ell >> top) & 1)) --top;
    for (int b = top; b >= 0; --b) ladder_step(s, (ell >> b) & 1, x, y, xy, zero);
    return s.kxy;
}

std::vector<AffinePoint> normal_add(const AffinePoint& x, const AffinePoint& y,
                                    const AffinePoint& zero) {
    check_ctx(x, y);
    check_ctx(x, zero);
    const auto& ctx = *x.ctx;
    const TwoTorsion tt(ctx);
    const std::size_t N = x.c.size();
    const FieldPtr& spec = ctx.field();

    if (ctx.m() == 2) {
        if (ctx.g() != 1)
            throw PreconditionViolated("normal_add at m = 2 is implemented for g = 1");
        IndexVector i0 = IndexVector::from_rank(2, 1, 0), i1 = IndexVector::from_rank(2, 1, 1);
        auto A = pair_product(tt, i0, i0, x, y, zero); // u0 v0
        auto B = pair_product(tt, i1, i1, x, y, zero); // u1 v1
        auto C = pair_symmetric_product(tt, i0, i1, x, y, zero); // u0 v1 + u1 v0
        if (!A || !B || !C) throw DegeneratePoint("normal_add: degenerate products");
        // {u, v} = roots (z:w) of B z^2 - C z w + A w^2
        std::vector<AffinePoint> out;
        if (B->is_zero()) {
            out.emplace_back(x.ctx, std::vector<Fe>{Fe::one(spec), Fe::zero(spec)});
            if (C->is_zero()) {
                out.push_back(out.front());
            } else {
                out.emplace_back(x.ctx, std::vector<Fe>{*A, *C});
            }
            return out;
        }
        Fe disc = *C * *C - Fe(spec, 4) * *A * *B;
        Fe sq;
        try {
            sq = square_root(disc);
        } catch (const NotASquare&) {
            throw DegeneratePoint("normal_add: sum is not rational over the base field");
        }
        Fe two_b = Fe(spec, 2) * *B;
        out.emplace_back(x.ctx, std::vector<Fe>{(*C + sq) / two_b, Fe::one(spec)});
        out.emplace_back(x.ctx, std::vector<Fe>{(*C - sq) / two_b, Fe::one(spec)});
        return out;
    }

    // 4 | m: the full product matrix u_a v_b is available, so x+y and x-y are
    // individually determined.
    if (ctx.m() % 4 != 0) throw PreconditionViolated("normal_add needs even level");
    std::vector<std::vector<Fe>> P(N, std::vector<Fe>(N, Fe::zero(spec)));
    for (std::size_t ra = 0; ra < N; ++ra)
        for (std::size_t rb = 0; rb < N; ++rb) {
            auto p = pair_product(tt, IndexVector::from_rank(tt.m, tt.g, ra),
                                  IndexVector::from_rank(tt.m, tt.g, rb), x, y, zero);
            if (!p) throw DegeneratePoint("normal_add: degenerate product matrix");
            P[ra][rb] = *p;
        }
    std::size_t rr = N, cc = N;
    for (std::size_t ra = 0; ra < N && rr == N; ++ra)
        for (std::size_t rb = 0; rb < N; ++rb)
            if (!P[ra][rb].is_zero()) { rr = ra; cc = rb; break; }
    if (rr == N) throw DegeneratePoint("normal_add: zero product matrix");
    std::vector<Fe> u(N, Fe::zero(spec)), v(N, Fe::zero(spec));
    for (std::size_t ra = 0; ra < N; ++ra) u[ra] = P[ra][cc];
    for (std::size_t rb = 0; rb < N; ++rb) v[rb] = P[rr][rb];
    return {AffinePoint(x.ctx, std::move(u)), AffinePoint(x.ctx, std::move(v))};
}

AffinePoint linear_combination(const std::vector<std::uint64_t>& coeffs,
                               const std::vector<AffinePoint>& basis,
                               const std::map<std::pair<unsigned, unsigned>, AffinePoint>& chain,
                               const AffinePoint& zero) {
    const unsigned k = (unsigned)basis.size();
    if (coeffs.size() != k) throw PreconditionViolated("coefficient count != basis size");
    AffinePoint acc = zero;
    std::map<unsigned, AffinePoint> plus; // acc + e_j for pending j
    for (unsigned j = 0; j < k; ++j) plus.emplace(j, basis[j]);
    for (unsigned i = 0; i < k; ++i) {
        AffinePoint new_acc = scalar_mult(coeffs[i], plus.at(i), basis[i], acc, zero);
        for (unsigned j = i + 1; j < k; ++j) {
            auto it = chain.find({i, j});
            if (it == chain.end()) throw PreconditionViolated("missing chain lift");
            AffinePoint acc_ij = three_way_add(plus.at(i), it->second, plus.at(j),
                                               acc, basis[i], basis[j], zero);
            plus.at(j) = scalar_mult(coeffs[i], acc_ij, basis[i], plus.at(j), zero);
        }
        acc = std::move(new_acc);
    }
    return acc;
}

Fe weil_pairing(const AffinePoint& p, const AffinePoint& q, const AffinePoint& pq,
                std::uint64_t ell, const AffinePoint& zero) {
    AffinePoint s1 = scalar_mult(ell, pq, p, q, zero);
    auto alpha = proportionality_factor(s1, q);
    if (!alpha) throw NotTorsion("ladder does not return to Q after l steps");
    AffinePoint s2 = scalar_mult(ell, pq, q, p, zero);
    auto beta = proportionality_factor(s2, p);
    if (!beta) throw NotTorsion("ladder does not return to P after l steps");
    // normalize each ratio by the pure-multiple ladder scalar; this makes the
    // value independent of all four input lifts
    auto lp = proportionality_factor(scalar_mult(ell, p, p, zero, zero), zero);
    auto lq = proportionality_factor(scalar_mult(ell, q, q, zero, zero), zero);
    if (!lp || !lq) throw NotTorsion("inputs are not l-torsion");
    return (*alpha / *lp) / (*beta / *lq);
}

} // namespace theta
