#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "theta/ff.hpp"

namespace theta {

/// Element of Z(n) = (1/n Z/Z)^g stored as residues mod n (index i <-> i/n).
struct IndexVector {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> c;

    IndexVector() = default;
    IndexVector(std::uint32_t n_, std::vector<std::uint32_t> c_);
    static IndexVector zero(std::uint32_t n, unsigned g);
    static IndexVector unit(std::uint32_t n, unsigned g, unsigned i);

    unsigned g() const { return (unsigned)c.size(); }
    bool is_zero() const;
    bool operator==(const IndexVector& o) const { return n == o.n && c == o.c; }
    bool operator!=(const IndexVector& o) const { return !(*this == o); }

    IndexVector operator+(const IndexVector& o) const;
    IndexVector operator-(const IndexVector& o) const;
    IndexVector operator-() const;
    IndexVector scaled(std::int64_t k) const;

    /// Mixed-radix rank, coordinate 0 fastest; fixed once and used everywhere
    /// (coordinate arrays, file formats).
    std::size_t rank() const;
    static IndexVector from_rank(std::uint32_t n, unsigned g, std::size_t r);

    /// additive order in (Z/nZ)^g
    std::uint32_t order() const;
};

/// Element of the dual group; the character acts through a fixed primitive
/// n-th root of unity: y(x) = zeta_n^{<y,x>}.
struct DualIndex {
    IndexVector v;

    DualIndex() = default;
    explicit DualIndex(IndexVector iv) : v(std::move(iv)) {}
    DualIndex(std::uint32_t n, std::vector<std::uint32_t> c) : v(n, std::move(c)) {}
    static DualIndex zero(std::uint32_t n, unsigned g) { return DualIndex(IndexVector::zero(n, g)); }
    static DualIndex unit(std::uint32_t n, unsigned g, unsigned i) { return DualIndex(IndexVector::unit(n, g, i)); }

    std::uint32_t n() const { return v.n; }
    unsigned g() const { return v.g(); }
    bool is_zero() const { return v.is_zero(); }
    bool operator==(const DualIndex& o) const { return v == o.v; }
    bool operator!=(const DualIndex& o) const { return !(*this == o); }

    DualIndex operator+(const DualIndex& o) const { return DualIndex(v + o.v); }
    DualIndex operator-(const DualIndex& o) const { return DualIndex(v - o.v); }
    DualIndex operator-() const { return DualIndex(-v); }
    DualIndex scaled(std::int64_t k) const { return DualIndex(v.scaled(k)); }

    /// pairing exponent <y,x> mod n
    std::uint32_t pair_exponent(const IndexVector& x) const;
    /// y(x) evaluated with the supplied primitive n-th root
    Fe eval(const IndexVector& x, const Fe& zeta_n) const;
};

/// Triple (alpha, x, y) in the level-n Heisenberg group G(n) with the twisted
/// product (a1,x1,y1)(a2,x2,y2) = (a1 a2 y2(x1), x1+x2, y1+y2).
struct HeisenbergElement {
    Fe alpha;
    IndexVector x;
    DualIndex y;

    HeisenbergElement() = default;
    HeisenbergElement(Fe a, IndexVector x_, DualIndex y_);
    static HeisenbergElement identity(const FieldPtr& spec, std::uint32_t n, unsigned g);
};

HeisenbergElement heisenberg_mul(const HeisenbergElement& g1, const HeisenbergElement& g2,
                                 const Fe& zeta_n);
HeisenbergElement heisenberg_inv(const HeisenbergElement& g, const Fe& zeta_n);
HeisenbergElement heisenberg_pow(const HeisenbergElement& g, std::int64_t e, const Fe& zeta_n);

/// Commutator pairing e_n((x1,y1),(x2,y2)) = y1(x2)/y2(x1).
Fe commutator_pairing(const IndexVector& x1, const DualIndex& y1,
                      const IndexVector& x2, const DualIndex& y2, const Fe& zeta_n);

/// Automorphism Phi(c) of G(n) for c in K(n): (alpha, x, y) ->
/// (alpha e_n(c,(x,y)), x, y).  Fixes the projection to K(n).
std::function<HeisenbergElement(const HeisenbergElement&)>
phi_automorphism(const IndexVector& c1, const DualIndex& c2, const Fe& zeta_n);

// --- canonical maps between levels (n = m*d as appropriate) ---

IndexVector mu_inject(const IndexVector& x, std::uint32_t n);    // Z(m) -> Z(n), *d
IndexVector nu_project(const IndexVector& x, std::uint32_t m);   // Z(n) -> Z(m), x -> d*x
DualIndex hat_nu_inject(const DualIndex& y, std::uint32_t n);    // Z^(m) -> Z^(n)
DualIndex hat_mu_project(const DualIndex& y, std::uint32_t m);   // Z^(n) -> Z^(m)
IndexVector rho_project(const IndexVector& x, std::uint32_t m);  // Z(n)/mu(Z(d)) ~ Z(m)
IndexVector pi_project(const IndexVector& x, std::uint32_t d);   // Z(n)/mu(Z(m)) ~ Z(d)

// --- Mumford level morphisms on Heisenberg elements ---

enum class LevelMapKind { E_d, H_d, D_d };
HeisenbergElement level_map(const HeisenbergElement& h, LevelMapKind kind, std::uint32_t d);

/// 2g x 2g matrix over Z/nZ in the canonical basis {v_k, v_{g+k}} of
/// K(n) = Z(n) x Z^(n); invariant M^T J M = J.
struct SymplecticMap {
    std::uint32_t n = 0;
    unsigned g = 0;
    std::vector<std::uint32_t> mat; // row-major, size (2g)^2

    SymplecticMap() = default;
    SymplecticMap(std::uint32_t n_, unsigned g_, std::vector<std::uint32_t> m);
    static SymplecticMap identity(std::uint32_t n, unsigned g);

    std::uint32_t at(unsigned r, unsigned c) const { return mat[r * 2 * g + c]; }
    void set(unsigned r, unsigned c, std::uint32_t v) { mat[r * 2 * g + c] = v % n; }

    bool is_symplectic() const;
    SymplecticMap mul(const SymplecticMap& o) const;
    SymplecticMap inverse() const; // via symplectic adjugate J^-1 M^T J

    /// image of (x, y) in K(n); columns act on coordinates of K(n)-vectors
    std::pair<IndexVector, DualIndex> apply(const IndexVector& x, const DualIndex& y) const;
};

/// Semi-character attached to a symplectic map: the unique chi with
/// chi(v_k) = t_k extended by the cocycle rule
/// chi(v+v') = chi(v) chi(v') [psi(v')_2(psi(v)_1)] v'_2(v_1)^{-1}.
class SemiCharacter {
public:
    /// signs: per basis vector either empty (use canonical square root) or a
    /// supplied value t_k.  Symmetric case enforces t_k^2 = psi(v_k)_2(psi(v_k)_1).
    SemiCharacter(SymplecticMap psi, std::vector<Fe> values_on_basis, Fe zeta_n);

    /// Build the symmetric semi-character with canonical branch choices.
    static SemiCharacter symmetric(const SymplecticMap& psi, const FieldPtr& spec, const Fe& zeta_n);

    const SymplecticMap& psi() const { return psi_; }
    const std::vector<Fe>& basis_values() const { return t_; }

    Fe eval(const IndexVector& x, const DualIndex& y) const;

private:
    SymplecticMap psi_;
    std::vector<Fe> t_;
    Fe zeta_;
    Fe pair_value(const IndexVector& x, const DualIndex& y) const; // psi(v)_2(psi(v)_1)
};

} // namespace theta
