#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace theta::detail {

inline std::optional<std::uint32_t> unit_inverse(std::uint32_t x, std::uint32_t n) {
    x %= n;
    if (std::gcd((std::uint64_t)x, (std::uint64_t)n) != 1) return std::nullopt;
    std::int64_t t0 = 0, t1 = 1, r0 = n, r1 = x;
    while (r1) {
        std::int64_t q = r0 / r1, tmp;
        tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    return (std::uint32_t)((t0 % n + n) % n);
}

/// g x g matrix over Z/nZ, row-major.
struct SmallMat {
    std::uint32_t n;
    unsigned g;
    std::vector<std::uint32_t> a;
    SmallMat(std::uint32_t n_, unsigned g_) : n(n_), g(g_), a(g_ * g_, 0) {}
    std::uint32_t& at(unsigned r, unsigned c) { return a[r * g + c]; }
    std::uint32_t at(unsigned r, unsigned c) const { return a[r * g + c]; }
    static SmallMat eye(std::uint32_t n, unsigned g) {
        SmallMat m(n, g);
        for (unsigned i = 0; i < g; ++i) m.at(i, i) = 1 % n;
        return m;
    }
    SmallMat mul(const SmallMat& o) const {
        SmallMat r(n, g);
        for (unsigned i = 0; i < g; ++i)
            for (unsigned j = 0; j < g; ++j) {
                std::uint64_t s = 0;
                for (unsigned k = 0; k < g; ++k) s += (std::uint64_t)at(i, k) * o.at(k, j) % n;
                r.at(i, j) = (std::uint32_t)(s % n);
            }
        return r;
    }
    SmallMat transpose() const {
        SmallMat r(n, g);
        for (unsigned i = 0; i < g; ++i)
            for (unsigned j = 0; j < g; ++j) r.at(i, j) = at(j, i);
        return r;
    }
    SmallMat neg() const {
        SmallMat r(n, g);
        for (unsigned i = 0; i < g * g; ++i) r.a[i] = (n - a[i]) % n;
        return r;
    }
    bool is_zero() const {
        for (auto x : a)
            if (x) return false;
        return true;
    }
    bool is_symmetric() const {
        for (unsigned i = 0; i < g; ++i)
            for (unsigned j = 0; j < g; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }
};

/// Gauss-Jordan with unit pivots; nullopt when no inverse exists.
inline std::optional<SmallMat> inverse(const SmallMat& m) {
    const std::uint32_t n = m.n;
    const unsigned g = m.g;
    SmallMat a = m, inv = SmallMat::eye(n, g);
    for (unsigned col = 0; col < g; ++col) {
        unsigned piv = g;
        for (unsigned r = col; r < g; ++r)
            if (unit_inverse(a.at(r, col), n)) { piv = r; break; }
        if (piv == g) return std::nullopt;
        if (piv != col)
            for (unsigned c = 0; c < g; ++c) {
                std::swap(a.a[piv * g + c], a.a[col * g + c]);
                std::swap(inv.a[piv * g + c], inv.a[col * g + c]);
            }
        std::uint32_t pi = *unit_inverse(a.at(col, col), n);
        for (unsigned c = 0; c < g; ++c) {
            a.at(col, c) = (std::uint32_t)((std::uint64_t)a.at(col, c) * pi % n);
            inv.at(col, c) = (std::uint32_t)((std::uint64_t)inv.at(col, c) * pi % n);
        }
        for (unsigned r = 0; r < g; ++r) {
            if (r == col) continue;
            std::uint32_t f = a.at(r, col);
            if (!f) continue;
            for (unsigned c = 0; c < g; ++c) {
                a.at(r, c) = (std::uint32_t)((a.at(r, c) + (std::uint64_t)(n - f) * a.at(col, c)) % n);
                inv.at(r, c) = (std::uint32_t)((inv.at(r, c) + (std::uint64_t)(n - f) * inv.at(col, c)) % n);
            }
        }
    }
    return inv;
}

} // namespace theta::detail
