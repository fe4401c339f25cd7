#pragma once

#include "cmhk/poly.hpp"

namespace cmhk {

// The finite field F_p[x]/(u), u monic irreducible mod p. Elements are
// polynomial representatives of degree < deg u with coefficients in [0, p).
class ResidueField {
public:
    ResidueField(Int p, IntVec modulus);

    const Int& p() const { return p_; }
    int degree() const { return mod_degree(u_); }
    Int order() const { return pow_int(p_, static_cast<unsigned long>(degree())); }
    const IntVec& modulus() const { return u_; }

    IntVec reduce(const IntVec& a) const { return mod_divmod(a, u_, p_).second; }
    IntVec add(const IntVec& a, const IntVec& b) const { return mod_add(a, b, p_); }
    IntVec sub(const IntVec& a, const IntVec& b) const { return mod_sub(a, b, p_); }
    IntVec mul(const IntVec& a, const IntVec& b) const { return reduce(mod_mul(a, b, p_)); }
    IntVec pow(const IntVec& a, const Int& e) const { return mod_pow_mod(a, e, u_, p_); }
    IntVec inverse(const IntVec& a) const;
    IntVec frobenius(const IntVec& a) const { return pow(a, p_); }

    bool is_zero(const IntVec& a) const { return reduce(a).empty(); }
    // Euler criterion; p may be 2 (every element of F_{2^f} is a square).
    bool is_square(const IntVec& a) const;
    // First non-square in the deterministic enumeration of representatives.
    IntVec first_non_square() const;

private:
    Int p_;
    IntVec u_;
};

}  // namespace cmhk
