#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "theta/errors.hpp"

namespace theta {

/// Description of F_{p^k}, p an odd prime.  For k > 1 the field is
/// F_p[t]/(modulus) with `modulus` a monic irreducible polynomial stored as
/// a little-endian coefficient list of length k+1.  Both primality of p and
/// irreducibility of the modulus are checked on construction.
class FieldSpec {
public:
    static std::shared_ptr<const FieldSpec> make(std::uint64_t p, unsigned k = 1,
                                                 std::vector<std::uint64_t> modulus = {});

    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    const std::vector<std::uint64_t>& order_factors() const { return factors_; } // distinct primes of q-1

    bool same(const FieldSpec& o) const {
        return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
    }

private:
    FieldSpec() = default;
    std::uint64_t p_ = 0;
    unsigned k_ = 1;
    std::uint64_t q_ = 0;
    std::vector<std::uint64_t> modulus_;   // empty when k == 1
    std::vector<std::uint64_t> factors_;   // distinct prime factors of q-1
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Element of F_{p^k}; value semantics, coefficients little-endian in the
/// extension generator, each reduced mod p.
class Fe {
public:
    Fe() = default;
    Fe(FieldPtr spec, std::uint64_t v);
    Fe(FieldPtr spec, std::vector<std::uint64_t> coeffs);

    static Fe zero(const FieldPtr& spec) { return Fe(spec, 0); }
    static Fe one(const FieldPtr& spec) { return Fe(spec, 1); }

    const FieldPtr& spec() const { return spec_; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool operator==(const Fe& o) const;
    bool operator!=(const Fe& o) const { return !(*this == o); }

    Fe operator+(const Fe& o) const;
    Fe operator-(const Fe& o) const;
    Fe operator-() const;
    Fe operator*(const Fe& o) const;
    Fe operator/(const Fe& o) const;   // throws DivisionByZero
    Fe inv() const;                    // throws DivisionByZero
    Fe pow(std::int64_t e) const;

    /// true when the little-endian coefficient list compares lexicographically
    /// smaller; the canonical-branch order used by square_root and root picks.
    bool encoding_less(const Fe& o) const;

    /// Rank of the element in the canonical enumeration (coeffs as base-p digits).
    std::uint64_t rank() const;
    static Fe from_rank(const FieldPtr& spec, std::uint64_t r);

private:
    FieldPtr spec_;
    std::vector<std::uint64_t> c_;
    void check_same(const Fe& o) const;
};

/// Multiplicative order of a (a != 0).
std::uint64_t element_order(const Fe& a);

/// Deterministic primitive root of unity of the given order: the first base g
/// in enumeration order such that g^((q-1)/order) has exact order `order`.
/// Throws NoSuchRoot when order does not divide q-1.
Fe primitive_root_of_unity(const FieldPtr& spec, std::uint64_t order);

/// Canonical square root: Tonelli-Shanks, returning the lexicographically
/// smaller of the two roots.  Throws NotASquare for non-residues.
Fe square_root(const Fe& a);

bool is_square(const Fe& a);

/// Smallest generator of F_q^* in enumeration order (cached per spec).
Fe field_generator(const FieldPtr& spec);

/// Brute-force discrete log base field_generator(spec); desk-scale fields only.
std::uint64_t discrete_log(const Fe& a);

/// All x with x^n = c, sorted by encoding.  Empty when c is not an n-th power.
std::vector<Fe> nth_roots(const Fe& c, std::uint64_t n);

} // namespace theta
