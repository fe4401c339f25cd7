#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace cmhk {

using Int = mpz_class;
using Rat = mpq_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Invalid mathematical input (singular form, dimension mismatch, ...).
struct domain_error : error {
    using error::error;
};
// A decision could not be certified at the working precision.
struct precision_error : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
// Internal consistency violated: two routes that must agree did not.
struct check_failure : error {
    using error::error;
};

// Parses "a/b" or "a"; denominator must be positive after canonicalization.
Rat parse_rat(const std::string& s);
std::string rat_to_string(const Rat& r);

bool is_prime(const Int& n);

// p-adic valuation of a nonzero integer / rational (v(p) = 1).
long vp(const Int& n, const Int& p);
long vp(const Rat& r, const Int& p);

// Unit part u with r = p^vp(r) * u, as an exact rational.
Rat unit_part(const Rat& r, const Int& p);

// Full factorization (trial division + Pollard-Brent rho).
std::map<Int, int> factor(const Int& n);

// Signed squarefree integer representing r modulo nonzero rational squares.
Int squarefree_part(const Rat& r);

// Legendre symbol of a rational p-unit at an odd prime.
int legendre_unit(const Rat& u, const Int& p);

// Residue of an odd rational mod 8 (for the 2-adic symbol formulas).
long mod8_unit(const Rat& u);

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Inverse of a mod m; throws domain_error if gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

}  // namespace cmhk
