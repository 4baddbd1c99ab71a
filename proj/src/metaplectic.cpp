#include "theta/metaplectic.hpp"

#include "theta/detail/smallmat.hpp"

#include <numeric>
#include <optional>

namespace theta {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using detail::SmallMat;
using detail::unit_inverse;

using Mat = SmallMat;

std::optional<Mat> mat_inverse(const Mat& m) { return detail::inverse(m); }

Mat block(const SymplecticMap& m, unsigned br, unsigned bc) {
    Mat r(m.n, m.g);
    for (unsigned i = 0; i < m.g; ++i)
        for (unsigned j = 0; j < m.g; ++j) r.at(i, j) = m.at(br * m.g + i, bc * m.g + j);
    return r;
}

SymplecticMap from_blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    const unsigned g = a.g;
    SymplecticMap m(a.n, g, std::vector<u32>(4 * g * g, 0));
    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = 0; j < g; ++j) {
            m.set(i, j, a.at(i, j));
            m.set(i, j + g, b.at(i, j));
            m.set(i + g, j, c.at(i, j));
            m.set(i + g, j + g, d.at(i, j));
        }
    return m;
}

SymplecticMap gen_matrix(u32 n, unsigned g, const SpGenerator& gen) {
    switch (gen.kind) {
    case SpGenerator::Kind::B: {
        Mat a(n, g);
        a.a = gen.mat;
        auto ainv = mat_inverse(a);
        if (!ainv) throw NotSymplectic("B-generator with singular block");
        return from_blocks(a, Mat(n, g), Mat(n, g), ainv->transpose());
    }
    case SpGenerator::Kind::S: {
        Mat c(n, g);
        c.a = gen.mat;
        return from_blocks(Mat::eye(n, g), Mat(n, g), c, Mat::eye(n, g));
    }
    case SpGenerator::Kind::H: {
        Mat z(n, g), i = Mat::eye(n, g);
        return from_blocks(z, i, i.neg(), z);
    }
    }
    throw PreconditionViolated("unknown generator kind");
}

SpGenerator genB(const Mat& a) { return SpGenerator{SpGenerator::Kind::B, a.a}; }
SpGenerator genS(const Mat& c) { return SpGenerator{SpGenerator::Kind::S, c.a}; }
SpGenerator genH() { return SpGenerator{SpGenerator::Kind::H, {}}; }

bool is_identity(const SymplecticMap& m) {
    for (unsigned i = 0; i < 2 * m.g; ++i)
        for (unsigned j = 0; j < 2 * m.g; ++j)
            if (m.at(i, j) != (i == j ? 1u % m.n : 0u)) return false;
    return true;
}

// appends to `word` generators gamma_1..gamma_k with M = gamma_1 ... gamma_k
void decompose_rec(const SymplecticMap& m, std::vector<SpGenerator>& word, int depth) {
    if (depth > 16) throw NotSymplectic("decomposition does not terminate");
    const u32 n = m.n;
    const unsigned g = m.g;
    if (is_identity(m)) return;
    Mat A = block(m, 0, 0), C = block(m, 1, 0);
    if (auto ainv = mat_inverse(A)) {
        // M = B(A) S(C1) [B(-1) H S(-B1) H]  with M1 = B(A^-1) M = [[1,B1],[C1,1+...]]
        SymplecticMap m1 = gen_matrix(n, g, genB(*ainv)).mul(m);
        Mat C1 = block(m1, 1, 0);
        if (!C1.is_symmetric()) throw NotSymplectic("C-block not symmetric after reduction");
        SymplecticMap m2 = gen_matrix(n, g, genS(C1.neg())).mul(m1);
        Mat B1 = block(m2, 0, 1);
        // m2 = [[1,B1],[0,1]] = B(-1) H S(-B1) H
        {
            SymplecticMap chk = gen_matrix(n, g, genB(Mat::eye(n, g).neg()))
                                    .mul(gen_matrix(n, g, genH()))
                                    .mul(gen_matrix(n, g, genS(B1.neg())))
                                    .mul(gen_matrix(n, g, genH()));
            if (!(chk.mat == m2.mat)) throw NotSymplectic("reduction left a non-unipotent tail");
        }
        word.push_back(genB(A));
        if (!C1.is_zero()) word.push_back(genS(C1));
        if (!B1.is_zero()) {
            word.push_back(genB(Mat::eye(n, g).neg()));
            word.push_back(genH());
            word.push_back(genS(B1.neg()));
            word.push_back(genH());
        }
        return;
    }
    if (mat_inverse(C)) {
        // M = H^-1 (H M) = B(-1) H (H M)
        SymplecticMap hm = gen_matrix(n, g, genH()).mul(m);
        word.push_back(genB(Mat::eye(n, g).neg()));
        word.push_back(genH());
        decompose_rec(hm, word, depth + 1);
        return;
    }
    // Rank pivot construction: U A V = diag(E, 0) with E nonsingular diagonal.
    // Then [[1,X],[0,1]] B(U) M B(V) has an invertible upper-left block for
    // X = diag(0_r, 1_{g-r}).
    Mat U = Mat::eye(n, g), V = Mat::eye(n, g), A0 = A;
    unsigned r = 0;
    for (; r < g; ++r) {
        // find a unit pivot in the remaining block
        unsigned pr = g, pc = g;
        for (unsigned i = r; i < g && pr == g; ++i)
            for (unsigned j = r; j < g; ++j)
                if (unit_inverse(A0.at(i, j), n)) { pr = i; pc = j; break; }
        if (pr == g) break;
        auto swap_rows = [&](Mat& mm, unsigned x, unsigned y) {
            for (unsigned c = 0; c < g; ++c) std::swap(mm.a[x * g + c], mm.a[y * g + c]);
        };
        auto swap_cols = [&](Mat& mm, unsigned x, unsigned y) {
            for (unsigned rr = 0; rr < g; ++rr) std::swap(mm.a[rr * g + x], mm.a[rr * g + y]);
        };
        if (pr != r) { swap_rows(A0, pr, r); swap_rows(U, pr, r); }
        if (pc != r) { swap_cols(A0, pc, r); swap_cols(V, pc, r); }
        u32 inv = *unit_inverse(A0.at(r, r), n);
        for (unsigned i = r + 1; i < g; ++i) {
            u32 f = (u32)((u64)A0.at(i, r) * inv % n);
            if (!f) continue;
            for (unsigned c = 0; c < g; ++c) {
                A0.at(i, c) = (u32)((A0.at(i, c) + (u64)(n - f) * A0.at(r, c)) % n);
                U.at(i, c) = (u32)((U.at(i, c) + (u64)(n - f) * U.at(r, c)) % n);
            }
        }
        for (unsigned j = r + 1; j < g; ++j) {
            u32 f = (u32)((u64)A0.at(r, j) * inv % n);
            if (!f) continue;
            for (unsigned rr = 0; rr < g; ++rr) {
                A0.at(rr, j) = (u32)((A0.at(rr, j) + (u64)(n - f) * A0.at(rr, r)) % n);
                V.at(rr, j) = (u32)((V.at(rr, j) + (u64)(n - f) * V.at(rr, r)) % n);
            }
        }
    }
    // remaining block must vanish (otherwise entries are zero divisors that no
    // unimodular move can clear at prime-power n; the symplectic complement
    // argument guarantees vanishing when M is symplectic)
    for (unsigned i = r; i < g; ++i)
        for (unsigned j = r; j < g; ++j)
            if (A0.at(i, j) % n && unit_inverse(A0.at(i, j), n))
                throw NotSymplectic("rank reduction failed");
    // Non-unit residue entries below the pivot block are nilpotent at
    // prime-power n, so the X-shift still makes the upper-left block a unit.
    Mat X(n, g);
    for (unsigned i = r; i < g; ++i) X.at(i, i) = 1;
    SymplecticMap conj = gen_matrix(n, g, genB(U)).mul(m).mul(gen_matrix(n, g, genB(V)));
    // [[1,X],[0,1]] = B(-1) H S(-X) H
    SymplecticMap shift = gen_matrix(n, g, genB(Mat::eye(n, g).neg()))
                              .mul(gen_matrix(n, g, genH()))
                              .mul(gen_matrix(n, g, genS(X.neg())))
                              .mul(gen_matrix(n, g, genH()));
    SymplecticMap reduced = shift.mul(conj);
    if (!mat_inverse(block(reduced, 0, 0)))
        throw NotSymplectic("pivot construction failed to produce an invertible block");
    auto uinv = mat_inverse(U), vinv = mat_inverse(V);
    // M = B(U^-1) shift^-1 reduced B(V^-1); shift^-1 = [[1,-X],[0,1]] = B(-1) H S(X) H
    word.push_back(genB(*uinv));
    word.push_back(genB(Mat::eye(n, g).neg()));
    word.push_back(genH());
    word.push_back(genS(X));
    word.push_back(genH());
    decompose_rec(reduced, word, depth + 1);
    word.push_back(genB(*vinv));
}

} // namespace

SymplecticMap GeneratorWord::replay() const {
    SymplecticMap acc = SymplecticMap::identity(n, g);
    for (const auto& gen : gens) acc = acc.mul(gen_matrix(n, g, gen));
    return acc;
}

GeneratorWord sp_decompose(const SymplecticMap& m) {
    if (!m.is_symplectic()) throw NotSymplectic("input matrix is not symplectic");
    GeneratorWord w;
    w.n = m.n;
    w.g = m.g;
    decompose_rec(m, w.gens, 0);
    SymplecticMap chk = w.replay();
    if (!(chk.mat == m.mat)) throw NotSymplectic("decomposition replay mismatch");
    return w;
}

namespace {

// square-root table s(i) for the S(C) action, completed from the seeds by
// s(i+j) = s(i) s(j) gamma_C(i)(j)
std::vector<Fe> sqrt_table(const CtxPtr& ctx, const Mat& C, const BranchChoices& branches) {
    const u32 m = ctx->m();
    const unsigned g = ctx->g();
    const Fe zm = ctx->zeta(m);
    auto gammaC = [&](const IndexVector& i, const IndexVector& j) {
        u64 e = 0;
        for (unsigned r = 0; r < g; ++r)
            for (unsigned c = 0; c < g; ++c) e += (u64)i.c[r] * C.at(r, c) % m * j.c[c] % m;
        return zm.pow((std::int64_t)(e % m));
    };
    std::vector<Fe> seeds;
    for (unsigned k = 0; k < g; ++k) {
        IndexVector ek = IndexVector::unit(m, g, k);
        Fe diag = gammaC(ek, ek);
        if (!branches.s_seeds.empty()) {
            Fe t = branches.s_seeds[k];
            if (t * t != diag) throw InconsistentBranch("seed^2 != gamma_C(e_k)(e_k)");
            seeds.push_back(t);
        } else {
            seeds.push_back(square_root(diag));
        }
    }
    const std::size_t N = ctx->coord_count();
    std::vector<Fe> s(N, Fe::zero(ctx->field()));
    s[0] = Fe::one(ctx->field());
    std::vector<bool> have(N, false);
    have[0] = true;
    // fill by repeatedly adding unit vectors in coordinate order
    for (unsigned k = 0; k < g; ++k) {
        IndexVector ek = IndexVector::unit(m, g, k);
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t rk = 0; rk < N; ++rk) {
                if (!have[rk]) continue;
                IndexVector i = IndexVector::from_rank(m, g, rk);
                std::size_t tgt = (i + ek).rank();
                if (have[tgt]) continue;
                s[tgt] = s[rk] * seeds[k] * gammaC(i, ek);
                have[tgt] = true;
                progress = true;
            }
        }
    }
    for (std::size_t rk = 0; rk < N; ++rk)
        if (!have[rk]) throw InconsistentBranch("sqrt table incomplete");
    return s;
}

} // namespace

void act_generator(CtxPtr& ctx, std::vector<AffinePoint>& points, const SpGenerator& gen,
                   const BranchChoices& branches) {
    const u32 m = ctx->m();
    const unsigned g = ctx->g();
    const std::size_t N = ctx->coord_count();
    const FieldPtr& spec = ctx->field();

    auto apply = [&](const std::vector<Fe>& in) {
        std::vector<Fe> out(N, Fe::zero(spec));
        switch (gen.kind) {
        case SpGenerator::Kind::B: {
            Mat A(m, g);
            A.a = gen.mat;
            for (std::size_t r = 0; r < N; ++r) {
                IndexVector i = IndexVector::from_rank(m, g, r);
                IndexVector ai = IndexVector::zero(m, g);
                for (unsigned rr = 0; rr < g; ++rr) {
                    u64 s = 0;
                    for (unsigned cc = 0; cc < g; ++cc) s += (u64)A.at(rr, cc) * i.c[cc] % m;
                    ai.c[rr] = (u32)(s % m);
                }
                out[r] = in[ai.rank()];
            }
            break;
        }
        case SpGenerator::Kind::S: {
            Mat C(m, g);
            C.a = gen.mat;
            if (!C.is_symmetric()) throw NotSymplectic("S-generator needs a symmetric block");
            auto s = sqrt_table(ctx, C, branches);
            for (std::size_t r = 0; r < N; ++r) out[r] = in[r] / s[r];
            break;
        }
        case SpGenerator::Kind::H: {
            const Fe zm = ctx->zeta(m);
            for (std::size_t r = 0; r < N; ++r) {
                IndexVector i = IndexVector::from_rank(m, g, r);
                Fe acc = Fe::zero(spec);
                for (std::size_t c = 0; c < N; ++c) {
                    IndexVector j = IndexVector::from_rank(m, g, c);
                    acc = acc + DualIndex(i).eval(j, zm) * in[c];
                }
                out[r] = acc;
            }
            break;
        }
        }
        return out;
    };

    std::vector<Fe> new_null = apply(ctx->null_point().c);
    CtxPtr next = ThetaContext::make(spec, g, m, std::move(new_null),
                                     ctx->zeta_order());
    std::vector<AffinePoint> new_points;
    new_points.reserve(points.size());
    for (const auto& pt : points) new_points.emplace_back(next, apply(pt.c));
    ctx = next;
    points = std::move(new_points);
}

std::pair<CtxPtr, std::vector<AffinePoint>>
act_symplectic(const CtxPtr& ctx, const SymplecticMap& m, std::vector<AffinePoint> points,
               const BranchChoices& branches) {
    if (m.n != ctx->m() || m.g != ctx->g())
        throw LevelMismatch("matrix level does not match context");
    GeneratorWord w = sp_decompose(m);
    CtxPtr cur = ctx;
    for (const auto& gen : w.gens) act_generator(cur, points, gen, branches);
    return {cur, std::move(points)};
}

AffinePoint act_k2(const AffinePoint& pt, const std::vector<bool>& c1_bits,
                   const std::vector<bool>& c2_bits) {
    const auto& ctx = *pt.ctx;
    const u32 m = ctx.m();
    const unsigned g = ctx.g();
    if (c1_bits.size() != g || c2_bits.size() != g)
        throw LevelMismatch("K(2) element needs g bits per side");
    IndexVector c1 = IndexVector::zero(m, g);
    IndexVector c2 = IndexVector::zero(m, g);
    for (unsigned k = 0; k < g; ++k) {
        if (c1_bits[k]) c1.c[k] = m / 2;
        if (c2_bits[k]) c2.c[k] = m / 2;
    }
    const Fe zm = ctx.zeta(m);
    std::vector<Fe> out(pt.c.size(), Fe::zero(ctx.field()));
    for (std::size_t r = 0; r < pt.c.size(); ++r) {
        IndexVector i = IndexVector::from_rank(m, g, r);
        out[r] = DualIndex(c2).eval(i, zm) * pt.c[(i - c1).rank()];
    }
    return AffinePoint(pt.ctx, std::move(out));
}

CtxPtr act_k2_ctx(const CtxPtr& ctx, const std::vector<bool>& c1_bits,
                  const std::vector<bool>& c2_bits) {
    AffinePoint nn = act_k2(ctx->null_point(), c1_bits, c2_bits);
    return ThetaContext::make(ctx->field(), ctx->g(), ctx->m(), std::move(nn.c),
                              ctx->zeta_order());
}

std::vector<AffinePoint> k2_orbit(const AffinePoint& pt) {
    const unsigned g = pt.ctx->g();
    std::vector<AffinePoint> out;
    for (unsigned b1 = 0; b1 < (1u << g); ++b1)
        for (unsigned b2 = 0; b2 < (1u << g); ++b2) {
            std::vector<bool> c1(g), c2(g);
            for (unsigned k = 0; k < g; ++k) {
                c1[k] = (b1 >> k) & 1;
                c2[k] = (b2 >> k) & 1;
            }
            out.push_back(act_k2(pt, c1, c2));
        }
    return out;
}

} // namespace theta
