#include "theta/indices.hpp"

#include <numeric>

namespace theta {

IndexVector::IndexVector(std::uint32_t n_, std::vector<std::uint32_t> c_)
    : n(n_), c(std::move(c_)) {
    if (n == 0) throw PreconditionViolated("level must be positive");
    for (auto& x : c) x %= n;
}

IndexVector IndexVector::zero(std::uint32_t n, unsigned g) {
    return IndexVector(n, std::vector<std::uint32_t>(g, 0));
}

IndexVector IndexVector::unit(std::uint32_t n, unsigned g, unsigned i) {
    auto v = zero(n, g);
    v.c[i] = 1 % n;
    return v;
}

bool IndexVector::is_zero() const {
    for (auto x : c)
        if (x) return false;
    return true;
}

IndexVector IndexVector::operator+(const IndexVector& o) const {
    if (n != o.n || c.size() != o.c.size()) throw LevelMismatch("index vectors differ in (n,g)");
    IndexVector r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = (c[i] + o.c[i]) % n;
    return r;
}

IndexVector IndexVector::operator-(const IndexVector& o) const {
    if (n != o.n || c.size() != o.c.size()) throw LevelMismatch("index vectors differ in (n,g)");
    IndexVector r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = (c[i] + n - o.c[i]) % n;
    return r;
}

IndexVector IndexVector::operator-() const {
    IndexVector r = *this;
    for (auto& x : r.c) x = (n - x) % n;
    return r;
}

IndexVector IndexVector::scaled(std::int64_t k) const {
    IndexVector r = *this;
    std::int64_t kk = ((k % (std::int64_t)n) + n) % n;
    for (auto& x : r.c) x = (std::uint32_t)(((std::uint64_t)x * (std::uint64_t)kk) % n);
    return r;
}

std::size_t IndexVector::rank() const {
    std::size_t r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * n + c[i];
    return r;
}

IndexVector IndexVector::from_rank(std::uint32_t n, unsigned g, std::size_t r) {
    std::vector<std::uint32_t> c(g);
    for (unsigned i = 0; i < g; ++i) {
        c[i] = (std::uint32_t)(r % n);
        r /= n;
    }
    return IndexVector(n, std::move(c));
}

std::uint32_t IndexVector::order() const {
    std::uint32_t ord = 1;
    for (auto x : c) {
        std::uint32_t o = n / std::gcd(n, x == 0 ? n : x);
        ord = (std::uint32_t)std::lcm(ord, o);
    }
    return ord;
}

std::uint32_t DualIndex::pair_exponent(const IndexVector& x) const {
    if (v.n != x.n || v.c.size() != x.c.size()) throw LevelMismatch("dual pairing across levels");
    std::uint64_t e = 0;
    for (size_t i = 0; i < x.c.size(); ++i) e += (std::uint64_t)v.c[i] * x.c[i];
    return (std::uint32_t)(e % v.n);
}

Fe DualIndex::eval(const IndexVector& x, const Fe& zeta_n) const {
    return zeta_n.pow(pair_exponent(x));
}

HeisenbergElement::HeisenbergElement(Fe a, IndexVector x_, DualIndex y_)
    : alpha(std::move(a)), x(std::move(x_)), y(std::move(y_)) {
    if (alpha.is_zero()) throw PreconditionViolated("Heisenberg scalar must be nonzero");
    if (x.n != y.n() || x.g() != y.g()) throw LevelMismatch("Heisenberg parts differ in (n,g)");
}

HeisenbergElement HeisenbergElement::identity(const FieldPtr& spec, std::uint32_t n, unsigned g) {
    return HeisenbergElement(Fe::one(spec), IndexVector::zero(n, g), DualIndex::zero(n, g));
}

HeisenbergElement heisenberg_mul(const HeisenbergElement& g1, const HeisenbergElement& g2,
                                 const Fe& zeta_n) {
    if (g1.x.n != g2.x.n || g1.x.g() != g2.x.g())
        throw LevelMismatch("Heisenberg product across levels");
    return HeisenbergElement(g1.alpha * g2.alpha * g2.y.eval(g1.x, zeta_n),
                             g1.x + g2.x, g1.y + g2.y);
}

HeisenbergElement heisenberg_inv(const HeisenbergElement& g, const Fe& zeta_n) {
    // (alpha, x, y)^-1 = (alpha^-1 y(x), -x, -y)
    return HeisenbergElement(g.alpha.inv() * g.y.eval(g.x, zeta_n), -g.x, -g.y);
}

HeisenbergElement heisenberg_pow(const HeisenbergElement& g, std::int64_t e, const Fe& zeta_n) {
    if (e < 0) return heisenberg_pow(heisenberg_inv(g, zeta_n), -e, zeta_n);
    // h^k = (alpha^k y(x)^{k(k-1)/2}, kx, ky)
    std::int64_t half = (e * (e - 1)) / 2;
    Fe a = g.alpha.pow(e) * g.y.eval(g.x, zeta_n).pow(half);
    return HeisenbergElement(a, g.x.scaled(e), g.y.scaled(e));
}

Fe commutator_pairing(const IndexVector& x1, const DualIndex& y1,
                      const IndexVector& x2, const DualIndex& y2, const Fe& zeta_n) {
    return y1.eval(x2, zeta_n) / y2.eval(x1, zeta_n);
}

std::function<HeisenbergElement(const HeisenbergElement&)>
phi_automorphism(const IndexVector& c1, const DualIndex& c2, const Fe& zeta_n) {
    return [c1, c2, zeta_n](const HeisenbergElement& h) {
        Fe e = commutator_pairing(c1, c2, h.x, h.y, zeta_n);
        return HeisenbergElement(h.alpha * e, h.x, h.y);
    };
}

IndexVector mu_inject(const IndexVector& x, std::uint32_t n) {
    if (n % x.n != 0) throw DivisibilityViolation("mu_{m,n} needs m | n");
    const std::uint32_t d = n / x.n;
    std::vector<std::uint32_t> c(x.c.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = (x.c[i] * d) % n;
    return IndexVector(n, std::move(c));
}

IndexVector nu_project(const IndexVector& x, std::uint32_t m) {
    if (x.n % m != 0) throw DivisibilityViolation("nu_{n,m} needs m | n");
    std::vector<std::uint32_t> c(x.c.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = x.c[i] % m;
    return IndexVector(m, std::move(c));
}

DualIndex hat_nu_inject(const DualIndex& y, std::uint32_t n) {
    return DualIndex(mu_inject(y.v, n));
}

DualIndex hat_mu_project(const DualIndex& y, std::uint32_t m) {
    return DualIndex(nu_project(y.v, m));
}

IndexVector rho_project(const IndexVector& x, std::uint32_t m) {
    // Z(n)/mu_{d,n}(Z(d)) with mu_{d,n}(Z(d)) = m*(Z/n)^g: residues mod m
    return nu_project(x, m);
}

IndexVector pi_project(const IndexVector& x, std::uint32_t d) {
    if (x.n % d != 0) throw DivisibilityViolation("pi_{n,d} needs d | n");
    std::vector<std::uint32_t> c(x.c.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = x.c[i] % d;
    return IndexVector(d, std::move(c));
}

HeisenbergElement level_map(const HeisenbergElement& h, LevelMapKind kind, std::uint32_t d) {
    switch (kind) {
    case LevelMapKind::E_d: {
        const std::uint32_t n = h.x.n * d;
        return HeisenbergElement(h.alpha.pow(d), mu_inject(h.x, n), hat_nu_inject(h.y, n));
    }
    case LevelMapKind::H_d: {
        if (h.x.n % d != 0) throw DivisibilityViolation("H_d needs d | n");
        const std::uint32_t m = h.x.n / d;
        return HeisenbergElement(h.alpha.pow(d), nu_project(h.x, m), hat_mu_project(h.y, m));
    }
    case LevelMapKind::D_d:
        return HeisenbergElement(h.alpha.pow((std::int64_t)d * d), h.x.scaled(d), h.y.scaled(d));
    }
    throw PreconditionViolated("unknown level map");
}

SymplecticMap::SymplecticMap(std::uint32_t n_, unsigned g_, std::vector<std::uint32_t> m)
    : n(n_), g(g_), mat(std::move(m)) {
    if (mat.size() != (size_t)4 * g * g) throw PreconditionViolated("matrix must be 2g x 2g");
    for (auto& x : mat) x %= n;
}

SymplecticMap SymplecticMap::identity(std::uint32_t n, unsigned g) {
    SymplecticMap m(n, g, std::vector<std::uint32_t>(4 * g * g, 0));
    for (unsigned i = 0; i < 2 * g; ++i) m.set(i, i, 1);
    return m;
}

bool SymplecticMap::is_symplectic() const {
    // J = [[0, I],[-I, 0]]; check M^T J M == J mod n
    auto J = [&](unsigned r, unsigned c) -> std::int64_t {
        if (r < g && c == r + g) return 1;
        if (r >= g && c == r - g) return -1;
        return 0;
    };
    for (unsigned a = 0; a < 2 * g; ++a) {
        for (unsigned b = 0; b < 2 * g; ++b) {
            std::int64_t s = 0;
            for (unsigned r = 0; r < 2 * g; ++r)
                for (unsigned c = 0; c < 2 * g; ++c)
                    s += (std::int64_t)at(r, a) * J(r, c) % n * at(c, b) % n;
            s %= n;
            std::int64_t want = J(a, b);
            if (((s - want) % n + n) % n != 0) return false;
        }
    }
    return true;
}

SymplecticMap SymplecticMap::mul(const SymplecticMap& o) const {
    if (n != o.n || g != o.g) throw LevelMismatch("symplectic maps at different levels");
    SymplecticMap r(n, g, std::vector<std::uint32_t>(4 * g * g, 0));
    for (unsigned i = 0; i < 2 * g; ++i)
        for (unsigned j = 0; j < 2 * g; ++j) {
            std::uint64_t s = 0;
            for (unsigned k = 0; k < 2 * g; ++k) s += (std::uint64_t)at(i, k) * o.at(k, j) % n;
            r.set(i, j, (std::uint32_t)(s % n));
        }
    return r;
}

SymplecticMap SymplecticMap::inverse() const {
    // M^-1 = J^-1 M^T J for symplectic M
    SymplecticMap r(n, g, std::vector<std::uint32_t>(4 * g * g, 0));
    auto tsgn = [&](unsigned r_, unsigned& rr, std::int64_t& s) {
        if (r_ < g) { rr = r_ + g; s = -1; } else { rr = r_ - g; s = 1; }
    };
    // (J^-1 M^T J)_{ij} = sum J^-1_{ik} M_{lk} J_{lj}; with J^-1 = -J both
    // factors are signed transpositions of the block index.
    for (unsigned i = 0; i < 2 * g; ++i)
        for (unsigned j = 0; j < 2 * g; ++j) {
            unsigned ii, jj;
            std::int64_t si, sj;
            tsgn(i, ii, si);   // (J^-1)_{i,ii} = si
            tsgn(j, jj, sj);   // J_{jj,j} = sj
            std::int64_t v = si * sj * (std::int64_t)at(jj, ii);
            r.set(i, j, (std::uint32_t)(((v % n) + n) % n));
        }
    return r;
}

std::pair<IndexVector, DualIndex> SymplecticMap::apply(const IndexVector& x, const DualIndex& y) const {
    if (x.n != n || x.g() != g) throw LevelMismatch("symplectic map applied across levels");
    std::vector<std::uint32_t> in(2 * g);
    for (unsigned i = 0; i < g; ++i) { in[i] = x.c[i]; in[g + i] = y.v.c[i]; }
    std::vector<std::uint32_t> out(2 * g, 0);
    for (unsigned i = 0; i < 2 * g; ++i) {
        std::uint64_t s = 0;
        for (unsigned j = 0; j < 2 * g; ++j) s += (std::uint64_t)at(i, j) * in[j] % n;
        out[i] = (std::uint32_t)(s % n);
    }
    IndexVector nx(n, std::vector<std::uint32_t>(out.begin(), out.begin() + g));
    DualIndex ny(n, std::vector<std::uint32_t>(out.begin() + g, out.end()));
    return {nx, ny};
}

Fe SemiCharacter::pair_value(const IndexVector& x, const DualIndex& y) const {
    auto [ix, iy] = psi_.apply(x, y);
    return iy.eval(ix, zeta_);
}

SemiCharacter::SemiCharacter(SymplecticMap psi, std::vector<Fe> values_on_basis, Fe zeta_n)
    : psi_(std::move(psi)), t_(std::move(values_on_basis)), zeta_(std::move(zeta_n)) {
    if (!psi_.is_symplectic()) throw NotSymplectic("semi-character needs a symplectic map");
    if (t_.size() != 2 * psi_.g) throw PreconditionViolated("need 2g basis values");
    const unsigned g = psi_.g;
    for (unsigned k = 0; k < 2 * g; ++k) {
        IndexVector vx = k < g ? IndexVector::unit(psi_.n, g, k) : IndexVector::zero(psi_.n, g);
        DualIndex vy = k < g ? DualIndex::zero(psi_.n, g) : DualIndex::unit(psi_.n, g, k - g);
        if (t_[k] * t_[k] != pair_value(vx, vy))
            throw InconsistentBranch("t_k^2 != psi(v_k)_2(psi(v_k)_1)");
    }
}

SemiCharacter SemiCharacter::symmetric(const SymplecticMap& psi, const FieldPtr& spec, const Fe& zeta_n) {
    (void)spec;
    const unsigned g = psi.g;
    std::vector<Fe> t;
    t.reserve(2 * g);
    SymplecticMap p = psi;
    for (unsigned k = 0; k < 2 * g; ++k) {
        IndexVector vx = k < g ? IndexVector::unit(psi.n, g, k) : IndexVector::zero(psi.n, g);
        DualIndex vy = k < g ? DualIndex::zero(psi.n, g) : DualIndex::unit(psi.n, g, k - g);
        auto [ix, iy] = p.apply(vx, vy);
        t.push_back(square_root(iy.eval(ix, zeta_n)));
    }
    return SemiCharacter(psi, std::move(t), zeta_n);
}

Fe SemiCharacter::eval(const IndexVector& x, const DualIndex& y) const {
    const unsigned g = psi_.g;
    const std::uint32_t n = psi_.n;
    const FieldPtr& spec = zeta_.spec();
    // accumulate basis vectors one at a time through the cocycle rule
    Fe val = Fe::one(spec);
    IndexVector cx = IndexVector::zero(n, g);
    DualIndex cy = DualIndex::zero(n, g);
    auto step = [&](const IndexVector& wx, const DualIndex& wy, const Fe& chi_w) {
        // chi(cur + w) = chi(cur) chi(w) [psi(w)_2(psi(cur)_1)] w_2(cur_1)^{-1}
        auto [px, py] = psi_.apply(cx, cy);
        auto [qx, qy] = psi_.apply(wx, wy);
        Fe f = qy.eval(px, zeta_);
        Fe b = wy.eval(cx, zeta_);
        val = val * chi_w * f / b;
        cx = cx + wx;
        cy = cy + wy;
    };
    for (unsigned k = 0; k < g; ++k) {
        IndexVector wx = IndexVector::unit(n, g, k);
        DualIndex wy = DualIndex::zero(n, g);
        for (std::uint32_t i = 0; i < x.c[k]; ++i) step(wx, wy, t_[k]);
    }
    for (unsigned k = 0; k < g; ++k) {
        IndexVector wx = IndexVector::zero(n, g);
        DualIndex wy = DualIndex::unit(n, g, k);
        for (std::uint32_t i = 0; i < y.v.c[k]; ++i) step(wx, wy, t_[g + k]);
    }
    return val;
}

} // namespace theta
