#include "theta/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace theta {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> fs;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// --- dense polynomial helpers over F_p (little-endian coefficient vectors) ---

std::vector<u64> poly_trim(std::vector<u64> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<u64> poly_mul(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (u128)a[i] * b[j]) % p;
    return poly_trim(std::move(r));
}

// remainder of a modulo monic m
std::vector<u64> poly_mod(std::vector<u64> a, const std::vector<u64>& m, u64 p) {
    a = poly_trim(std::move(a));
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        u64 lead = a.back();
        size_t shift = a.size() - 1 - dm;
        for (size_t i = 0; i <= dm; ++i) {
            u64 sub = mulmod(lead, m[i], p);
            u64& t = a[i + shift];
            t = (t + p - sub) % p;
        }
        a = poly_trim(std::move(a));
    }
    return a;
}

std::vector<u64> poly_powmod(std::vector<u64> base, u64 e, const std::vector<u64>& m, u64 p) {
    std::vector<u64> r = {1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

std::vector<u64> poly_gcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        // make b monic for the reduction
        u64 lead_inv = powmod(b.back(), p - 2, p);
        std::vector<u64> bm(b.size());
        for (size_t i = 0; i < b.size(); ++i) bm[i] = mulmod(b[i], lead_inv, p);
        auto r = poly_mod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// extended Euclid: returns u with u*a = gcd (mod m), gcd must be a unit constant
std::vector<u64> poly_invmod(const std::vector<u64>& a, const std::vector<u64>& m, u64 p) {
    // iterative xgcd over F_p[t]
    std::vector<u64> r0 = m, r1 = poly_trim(a);
    std::vector<u64> s0 = {}, s1 = {1};
    if (r1.empty()) throw DivisionByZero("inverse of zero polynomial");
    while (!r1.empty()) {
        // quotient of r0 by r1
        std::vector<u64> q;
        std::vector<u64> rem = r0;
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, 0);
            u64 lead_inv = powmod(r1.back(), p - 2, p);
            while (rem.size() >= r1.size() && !rem.empty()) {
                u64 c = mulmod(rem.back(), lead_inv, p);
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i) {
                    u64 sub = mulmod(c, r1[i], p);
                    u64& t = rem[i + shift];
                    t = (t + p - sub) % p;
                }
                rem = poly_trim(std::move(rem));
            }
        }
        std::vector<u64> qs1 = poly_mul(q, s1, p);
        std::vector<u64> s2 = s0;
        s2.resize(std::max(s2.size(), qs1.size()), 0);
        for (size_t i = 0; i < qs1.size(); ++i) s2[i] = (s2[i] + p - qs1[i]) % p;
        s2 = poly_trim(std::move(s2));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw DivisionByZero("element not invertible");
    u64 c_inv = powmod(r0[0], p - 2, p);
    std::vector<u64> out(s0.size());
    for (size_t i = 0; i < s0.size(); ++i) out[i] = mulmod(s0[i], c_inv, p);
    return out;
}

} // namespace

std::shared_ptr<const FieldSpec> FieldSpec::make(u64 p, unsigned k, std::vector<u64> modulus) {
    if (!is_prime(p) || p == 2)
        throw PreconditionViolated("p must be an odd prime, got " + std::to_string(p));
    if (k < 1) throw PreconditionViolated("extension degree must be >= 1");
    auto s = std::shared_ptr<FieldSpec>(new FieldSpec());
    s->p_ = p;
    s->k_ = k;
    if (k == 1) {
        if (!modulus.empty()) throw PreconditionViolated("modulus must be absent for k = 1");
    } else {
        if (modulus.size() != k + 1)
            throw PreconditionViolated("modulus must have degree k");
        for (auto& c : modulus) c %= p;
        if (modulus.back() != 1) throw PreconditionViolated("modulus must be monic");
        // irreducible iff gcd(modulus, t^{p^i} - t) = const for i = 1..k/2
        std::vector<u64> t = {0, 1};
        for (unsigned i = 1; i <= k / 2; ++i) {
            u64 pi = 1;
            for (unsigned j = 0; j < i; ++j) pi *= p;
            auto frob = poly_powmod(t, pi, modulus, p);
            // frob - t
            auto diff = frob;
            diff.resize(std::max<size_t>(diff.size(), 2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            diff = poly_trim(std::move(diff));
            auto g = poly_gcd(modulus, diff, p);
            if (g.size() != 1)
                throw PreconditionViolated("modulus is reducible over F_p");
        }
        s->modulus_ = std::move(modulus);
    }
    u64 q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    s->q_ = q;
    s->factors_ = prime_factors(q - 1);
    return s;
}

Fe::Fe(FieldPtr spec, u64 v) : spec_(std::move(spec)), c_(spec_->k(), 0) {
    c_[0] = v % spec_->p();
}

Fe::Fe(FieldPtr spec, std::vector<u64> coeffs) : spec_(std::move(spec)), c_(std::move(coeffs)) {
    if (c_.size() > spec_->k()) {
        // reduce by the modulus, then pad
        c_ = poly_mod(std::move(c_), spec_->modulus(), spec_->p());
    }
    for (auto& x : c_) x %= spec_->p();
    c_.resize(spec_->k(), 0);
}

void Fe::check_same(const Fe& o) const {
    if (!spec_ || !o.spec_ || !spec_->same(*o.spec_))
        throw LevelMismatch("field elements from different fields");
}

bool Fe::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 x) { return x == 0; });
}

bool Fe::operator==(const Fe& o) const {
    return spec_ && o.spec_ && spec_->same(*o.spec_) && c_ == o.c_;
}

Fe Fe::operator+(const Fe& o) const {
    check_same(o);
    Fe r = *this;
    const u64 p = spec_->p();
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] + o.c_[i]) % p;
    return r;
}

Fe Fe::operator-(const Fe& o) const {
    check_same(o);
    Fe r = *this;
    const u64 p = spec_->p();
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] + p - o.c_[i]) % p;
    return r;
}

Fe Fe::operator-() const {
    Fe r = *this;
    const u64 p = spec_->p();
    for (auto& x : r.c_) x = (p - x) % p;
    return r;
}

Fe Fe::operator*(const Fe& o) const {
    check_same(o);
    const u64 p = spec_->p();
    if (spec_->k() == 1) return Fe(spec_, mulmod(c_[0], o.c_[0], p));
    auto prod = poly_mod(poly_mul(c_, o.c_, p), spec_->modulus(), p);
    return Fe(spec_, std::move(prod));
}

Fe Fe::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    const u64 p = spec_->p();
    if (spec_->k() == 1) return Fe(spec_, powmod(c_[0], p - 2, p));
    return Fe(spec_, poly_invmod(c_, spec_->modulus(), p));
}

Fe Fe::operator/(const Fe& o) const { return *this * o.inv(); }

Fe Fe::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    Fe r = Fe::one(spec_);
    Fe b = *this;
    u64 ue = (u64)e;
    while (ue) {
        if (ue & 1) r = r * b;
        b = b * b;
        ue >>= 1;
    }
    return r;
}

bool Fe::encoding_less(const Fe& o) const {
    return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

u64 Fe::rank() const {
    u64 r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * spec_->p() + c_[i];
    return r;
}

Fe Fe::from_rank(const FieldPtr& spec, u64 r) {
    std::vector<u64> c(spec->k());
    for (unsigned i = 0; i < spec->k(); ++i) {
        c[i] = r % spec->p();
        r /= spec->p();
    }
    return Fe(spec, std::move(c));
}

u64 element_order(const Fe& a) {
    if (a.is_zero()) throw PreconditionViolated("order of zero");
    u64 ord = a.spec()->q() - 1;
    for (u64 f : a.spec()->order_factors()) {
        while (ord % f == 0 && a.pow((std::int64_t)(ord / f)) == Fe::one(a.spec()))
            ord /= f;
    }
    return ord;
}

Fe primitive_root_of_unity(const FieldPtr& spec, u64 order) {
    if (order == 0 || (spec->q() - 1) % order != 0)
        throw NoSuchRoot("order " + std::to_string(order) + " does not divide q-1");
    if (order == 1) return Fe::one(spec);
    // smallest element in enumeration order with exact order `order`
    for (u64 r = 2; r < spec->q(); ++r) {
        Fe z = Fe::from_rank(spec, r);
        if (z.is_zero()) continue;
        if (z.pow((std::int64_t)order) != Fe::one(spec)) continue;
        bool ok = true;
        for (u64 f : prime_factors(order)) {
            if (z.pow((std::int64_t)(order / f)) == Fe::one(spec)) { ok = false; break; }
        }
        if (ok) return z;
    }
    throw NoSuchRoot("no primitive root found");
}

bool is_square(const Fe& a) {
    if (a.is_zero()) return true;
    return a.pow((std::int64_t)((a.spec()->q() - 1) / 2)) == Fe::one(a.spec());
}

Fe square_root(const Fe& a) {
    const auto& spec = a.spec();
    if (a.is_zero()) return a;
    if (!is_square(a)) throw NotASquare("element is a non-residue");
    const u64 q = spec->q();
    // Tonelli-Shanks in the cyclic group of order q-1
    u64 s = 0, t = q - 1;
    while (t % 2 == 0) { t /= 2; ++s; }
    Fe r = a.pow((std::int64_t)((t + 1) / 2));
    if (s > 1) {
        // need a generator of the 2-Sylow subgroup
        Fe z = Fe::one(spec);
        for (u64 rank = 2; rank < q; ++rank) {
            Fe cand = Fe::from_rank(spec, rank);
            if (!cand.is_zero() && !is_square(cand)) { z = cand; break; }
        }
        Fe c = z.pow((std::int64_t)t);
        Fe tt = a.pow((std::int64_t)t);
        u64 m = s;
        while (tt != Fe::one(spec)) {
            u64 i = 0;
            Fe probe = tt;
            while (probe != Fe::one(spec)) { probe = probe * probe; ++i; }
            Fe b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = b * b;
            r = r * b;
            c = b * b;
            tt = tt * c;
            m = i;
        }
    }
    Fe other = -r;
    return r.encoding_less(other) ? r : other;
}

namespace {
std::mutex gen_mutex;
std::map<const FieldSpec*, Fe> gen_cache;
} // namespace

Fe field_generator(const FieldPtr& spec) {
    std::lock_guard<std::mutex> lk(gen_mutex);
    auto it = gen_cache.find(spec.get());
    if (it != gen_cache.end()) return it->second;
    for (u64 r = 2; r < spec->q(); ++r) {
        Fe g = Fe::from_rank(spec, r);
        if (g.is_zero()) continue;
        if (element_order(g) == spec->q() - 1) {
            gen_cache.emplace(spec.get(), g);
            return g;
        }
    }
    throw NoSuchRoot("no generator found");
}

u64 discrete_log(const Fe& a) {
    if (a.is_zero()) throw PreconditionViolated("dlog of zero");
    const Fe g = field_generator(a.spec());
    Fe acc = Fe::one(a.spec());
    for (u64 e = 0; e < a.spec()->q() - 1; ++e) {
        if (acc == a) return e;
        acc = acc * g;
    }
    throw PreconditionViolated("dlog not found");
}

std::vector<Fe> nth_roots(const Fe& c, u64 n) {
    if (n == 0) throw PreconditionViolated("nth_roots with n = 0");
    if (c.is_zero()) return {c};
    const u64 qm1 = c.spec()->q() - 1;
    const u64 s = discrete_log(c);
    const u64 g = std::gcd(n, qm1);
    if (s % g != 0) return {};
    // solve n*u == s (mod q-1)
    const u64 n1 = n / g, s1 = s / g, m1 = qm1 / g;
    // inverse of n1 mod m1
    u64 inv = 1;
    {
        std::int64_t t0 = 0, t1 = 1;
        std::int64_t r0 = (std::int64_t)m1, r1 = (std::int64_t)(n1 % m1);
        while (r1 != 0) {
            std::int64_t qq = r0 / r1;
            std::int64_t tmp = r0 - qq * r1; r0 = r1; r1 = tmp;
            tmp = t0 - qq * t1; t0 = t1; t1 = tmp;
        }
        inv = (u64)((t0 % (std::int64_t)m1 + (std::int64_t)m1) % (std::int64_t)m1);
        if (m1 == 1) inv = 0;
    }
    const u64 u0 = (u64)((u128)s1 * inv % (m1 == 0 ? 1 : m1));
    const Fe gen = field_generator(c.spec());
    std::vector<Fe> out;
    out.reserve(g);
    for (u64 j = 0; j < g; ++j) {
        u64 e = (u0 + (u128)j * m1) % qm1;
        out.push_back(gen.pow((std::int64_t)e));
    }
    std::sort(out.begin(), out.end(), [](const Fe& x, const Fe& y) { return x.encoding_less(y); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace theta
