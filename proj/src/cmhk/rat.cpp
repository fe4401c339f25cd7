#include "cmhk/rat.hpp"

#include <random>

namespace cmhk {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw parse_error("bad rational literal: " + s);
    if (r.get_den() == 0) throw parse_error("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    return r.get_str();
}

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

long vp(const Int& n, const Int& p) {
    if (n == 0) throw domain_error("vp of zero");
    Int m = abs(n);
    long v = 0;
    Int q, r;
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

long vp(const Rat& r0, const Int& p) {
    if (r0 == 0) throw domain_error("vp of zero");
    Rat r = r0;
    r.canonicalize();
    return vp(Int(r.get_num()), p) - vp(Int(r.get_den()), p);
}

Rat unit_part(const Rat& r0, const Int& p) {
    Rat r = r0;
    r.canonicalize();
    long v = vp(r, p);
    Rat u = r;
    Rat pr(p);
    if (v > 0)
        for (long i = 0; i < v; ++i) u /= pr;
    else
        for (long i = 0; i < -v; ++i) u *= pr;
    return u;
}

namespace {

Int pollard_brent(const Int& n, unsigned long seed) {
    // Brent's cycle variant of Pollard rho; n odd composite, not a prime power edge-case free.
    std::mt19937_64 rng(seed);
    while (true) {
        Int y = Int(rng() % 1000003) % n;
        Int c = Int(rng() % 1000003) % n;
        if (c == 0) c = 1;
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = mod_floor(y * y + c, n);
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = r - k;
                if (m < lim) lim = m;
                for (Int i = 0; i < lim; ++i) {
                    y = mod_floor(y * y + c, n);
                    q = mod_floor(q * (x - y), n);
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time.
            g = 1;
            while (g == 1) {
                ys = mod_floor(ys * ys + c, n);
                Int d = x - ys;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n && g != 1) return g;
        ++seed;
    }
}

void factor_into(const Int& n, std::map<Int, int>& out, unsigned long seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_brent(n, seed);
    factor_into(d, out, seed + 1);
    factor_into(n / d, out, seed + 1);
}

}  // namespace

std::map<Int, int> factor(const Int& n) {
    if (n == 0) throw domain_error("factor(0)");
    std::map<Int, int> out;
    Int m = abs(n);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
        Int pp(p);
        while (m % pp == 0) {
            out[pp] += 1;
            m /= pp;
        }
    }
    // Trial division up to 10^5, then rho for what is left.
    Int d(53);
    while (m > 1 && d * d <= m && d < 100000) {
        while (m % d == 0) {
            out[d] += 1;
            m /= d;
        }
        d += 2;
    }
    if (m > 1) {
        if (d * d > m)
            out[m] += 1;
        else
            factor_into(m, out, 0x9e3779b9UL);
    }
    return out;
}

Int squarefree_part(const Rat& r) {
    if (r == 0) throw domain_error("squarefree_part(0)");
    // a/b ~ a*b mod squares.
    Int n = Int(r.get_num()) * Int(r.get_den());
    int sign = (n < 0) ? -1 : 1;
    Int s(1);
    for (auto& [p, e] : factor(abs(n)))
        if (e % 2 == 1) s *= p;
    return sign * s;
}

int legendre_unit(const Rat& u0, const Int& p) {
    if (p == 2 || !is_prime(p)) throw domain_error("legendre_unit needs an odd prime");
    Rat u = u0;
    u.canonicalize();
    Int num = mod_floor(u.get_num(), p);
    Int den = mod_floor(u.get_den(), p);
    if (num == 0 || den == 0) throw domain_error("legendre_unit: not a p-unit");
    Int x = mod_floor(num * mod_inverse(den, p), p);
    return mpz_legendre(x.get_mpz_t(), p.get_mpz_t());
}

long mod8_unit(const Rat& u0) {
    Rat u = u0;
    u.canonicalize();
    Int num = u.get_num(), den = u.get_den();
    if (num % 2 == 0 || den % 2 == 0) throw domain_error("mod8_unit: not odd");
    Int x = mod_floor(num * mod_inverse(den, Int(8)), Int(8));
    return x.get_si();
}

Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("mod_inverse: not invertible");
    return r;
}

}  // namespace cmhk
