#include "cmhk/poly.hpp"

#include <random>
#include <tuple>

namespace cmhk {

RatPoly rat_poly_monic(const RatPoly& a) {
    if (a.is_zero()) return a;
    Rat inv = 1 / a.lead();
    return inv * a;
}

RatPoly rat_poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        Rat inv = 1 / b.lead();
        auto [q, r] = RatPoly::divmod(a, b, inv);
        a = b;
        b = r;
    }
    return rat_poly_monic(a);
}

IntVec mod_trim(IntVec c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

IntVec mod_reduce(const IntVec& c, const Int& m) {
    IntVec r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = mod_floor(c[i], m);
    return mod_trim(std::move(r));
}

IntVec mod_from_rat(const RatPoly& f, const Int& m) {
    IntVec r(f.coeffs().size());
    for (size_t i = 0; i < r.size(); ++i) {
        const Rat& c = f.coeffs()[i];
        r[i] = mod_floor(Int(c.get_num()) * mod_inverse(Int(c.get_den()), m), m);
    }
    return mod_trim(std::move(r));
}

IntVec mod_add(const IntVec& a, const IntVec& b, const Int& m) {
    IntVec r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return mod_reduce(r, m);
}

IntVec mod_sub(const IntVec& a, const IntVec& b, const Int& m) {
    IntVec r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return mod_reduce(r, m);
}

IntVec mod_mul(const IntVec& a, const IntVec& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    IntVec r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return mod_reduce(r, m);
}

std::pair<IntVec, IntVec> mod_divmod(const IntVec& a, const IntVec& b0, const Int& m) {
    IntVec b = mod_reduce(b0, m);
    if (b.empty()) throw domain_error("mod_divmod by zero");
    Int inv = mod_inverse(b.back(), m);
    IntVec rem = mod_reduce(a, m);
    const size_t db = b.size() - 1;
    if (rem.size() <= db) return {{}, rem};
    IntVec quo(rem.size() - db, Int(0));
    for (size_t i = rem.size(); i-- > db;) {
        Int q = mod_floor(rem[i] * inv, m);
        if (q != 0) {
            quo[i - db] = q;
            for (size_t j = 0; j <= db; ++j) rem[i - db + j] = mod_floor(rem[i - db + j] - q * b[j], m);
        }
    }
    return {mod_trim(std::move(quo)), mod_trim(std::move(rem))};
}

IntVec mod_pow_mod(const IntVec& base, const Int& e, const IntVec& modulus, const Int& m) {
    IntVec r{Int(1)};
    IntVec b = mod_divmod(base, modulus, m).second;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mod_divmod(mod_mul(r, b, m), modulus, m).second;
        b = mod_divmod(mod_mul(b, b, m), modulus, m).second;
        k >>= 1;
    }
    return r;
}

IntVec mod_gcd(IntVec a, IntVec b, const Int& p) {
    a = mod_reduce(a, p);
    b = mod_reduce(b, p);
    while (!b.empty()) {
        IntVec r = mod_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Int inv = mod_inverse(a.back(), p);
        for (auto& c : a) c = mod_floor(c * inv, p);
    }
    return a;
}

std::tuple<IntVec, IntVec, IntVec> mod_xgcd(const IntVec& a, const IntVec& b, const Int& p) {
    IntVec r0 = mod_reduce(a, p), r1 = mod_reduce(b, p);
    IntVec s0{Int(1)}, s1{}, t0{}, t1{Int(1)};
    while (!r1.empty()) {
        auto [q, r] = mod_divmod(r0, r1, p);
        IntVec s = mod_sub(s0, mod_mul(q, s1, p), p);
        IntVec t = mod_sub(t0, mod_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (!r0.empty()) {
        Int inv = mod_inverse(r0.back(), p);
        for (auto& c : r0) c = mod_floor(c * inv, p);
        for (auto& c : s0) c = mod_floor(c * inv, p);
        for (auto& c : t0) c = mod_floor(c * inv, p);
    }
    return {r0, s0, t0};
}

IntVec mod_derivative(const IntVec& a, const Int& m) {
    if (a.size() <= 1) return {};
    IntVec r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mod_floor(Int(i) * a[i], m);
    return mod_trim(std::move(r));
}

IntVec mod_compose(const IntVec& f, const IntVec& g, const IntVec& modulus, const Int& m) {
    IntVec acc{};
    for (size_t i = f.size(); i-- > 0;) {
        acc = mod_mul(acc, g, m);
        acc = mod_add(acc, IntVec{f[i]}, m);
        acc = mod_divmod(acc, modulus, m).second;
    }
    return acc;
}

bool mod_is_irreducible(const IntVec& f, const Int& p) {
    // Rabin test: x^(p^n) == x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for prime q | n.
    int n = mod_degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    IntVec x{Int(0), Int(1)};
    IntVec xq = mod_pow_mod(x, pow_int(p, n), f, p);
    if (mod_trim(mod_sub(xq, x, p)) != IntVec{}) return false;
    for (auto& [q, e] : factor(Int(n))) {
        unsigned long k = static_cast<unsigned long>(n / q.get_si());
        IntVec xe = mod_pow_mod(x, pow_int(p, k), f, p);
        IntVec g = mod_gcd(mod_sub(xe, x, p), f, p);
        if (mod_degree(g) != 0) return false;
    }
    return true;
}

namespace {

// Equal-degree splitting (Cantor-Zassenhaus), f squarefree product of
// irreducibles of degree d over Z/p.
void edf(const IntVec& f, int d, const Int& p, std::mt19937_64& rng, std::vector<IntVec>& out) {
    int n = mod_degree(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    while (true) {
        IntVec a(static_cast<size_t>(n), Int(0));
        for (auto& c : a) c = Int(static_cast<unsigned long>(rng() % 1000003)) % p;
        a = mod_trim(std::move(a));
        if (mod_degree(a) < 1) continue;
        IntVec g = mod_gcd(a, f, p);
        if (mod_degree(g) > 0 && mod_degree(g) < n) {
            edf(g, d, p, rng, out);
            edf(mod_divmod(f, g, p).first, d, p, rng, out);
            return;
        }
        IntVec b;
        if (p == 2) {
            // Trace map over F_2: a + a^2 + a^4 + ... (2^(d-1) terms of the tower).
            IntVec t = a, acc = a;
            for (int i = 1; i < d; ++i) {
                t = mod_divmod(mod_mul(t, t, p), f, p).second;
                acc = mod_add(acc, t, p);
            }
            b = acc;
        } else {
            Int e = (pow_int(p, d) - 1) / 2;
            IntVec ap = mod_pow_mod(a, e, f, p);
            b = mod_sub(ap, IntVec{Int(1)}, p);
        }
        g = mod_gcd(b, f, p);
        if (mod_degree(g) > 0 && mod_degree(g) < n) {
            edf(g, d, p, rng, out);
            edf(mod_divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<IntVec> mod_factor_squarefree(const IntVec& f0, const Int& p, unsigned long seed) {
    IntVec f = mod_reduce(f0, p);
    if (mod_degree(f) < 1) throw domain_error("mod_factor_squarefree: constant input");
    {
        Int inv = mod_inverse(f.back(), p);
        for (auto& c : f) c = mod_floor(c * inv, p);
    }
    IntVec fp = mod_derivative(f, p);
    if (mod_degree(mod_gcd(f, fp, p)) != 0)
        throw domain_error("mod_factor_squarefree: input not squarefree mod p");

    std::mt19937_64 rng(seed);
    std::vector<IntVec> out;
    // Distinct-degree sieve.
    IntVec rem = f;
    IntVec x{Int(0), Int(1)};
    IntVec xp = x;
    for (int d = 1; mod_degree(rem) >= 2 * d; ++d) {
        xp = mod_pow_mod(xp, pow_int(p, 1), rem, p);
        IntVec g = mod_gcd(mod_sub(xp, x, p), rem, p);
        if (mod_degree(g) > 0) {
            edf(g, d, p, rng, out);
            rem = mod_divmod(rem, g, p).first;
            xp = mod_divmod(xp, rem, p).second;
        }
    }
    if (mod_degree(rem) > 0) out.push_back(rem);
    std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

}  // namespace cmhk
