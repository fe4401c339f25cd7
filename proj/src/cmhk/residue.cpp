#include "cmhk/residue.hpp"

namespace cmhk {

ResidueField::ResidueField(Int p, IntVec modulus) : p_(std::move(p)), u_(mod_reduce(modulus, p_)) {
    if (!is_prime(p_)) throw domain_error("residue field: p not prime");
    if (mod_degree(u_) < 1 || u_.back() != 1) throw domain_error("residue field: modulus must be monic");
    if (!mod_is_irreducible(u_, p_)) throw domain_error("residue field: modulus reducible mod p");
}

IntVec ResidueField::inverse(const IntVec& a) const {
    IntVec r = reduce(a);
    if (r.empty()) throw domain_error("residue field: inverse of zero");
    auto [g, s, t] = mod_xgcd(r, u_, p_);
    if (mod_degree(g) != 0) throw check_failure("residue field: gcd with irreducible modulus nontrivial");
    return reduce(s);
}

bool ResidueField::is_square(const IntVec& a) const {
    IntVec r = reduce(a);
    if (r.empty()) return true;
    if (p_ == 2) return true;  // squaring is bijective in characteristic 2
    Int e = (order() - 1) / 2;
    IntVec c = pow(r, e);
    return c == IntVec{Int(1)};
}

IntVec ResidueField::first_non_square() const {
    if (p_ == 2) throw domain_error("residue field: no non-squares in characteristic 2");
    // Enumerate representatives in lexicographic order of coefficient tuples.
    int d = degree();
    std::vector<long> digits(static_cast<size_t>(d), 0);
    long pl = static_cast<long>(p_.get_si());
    while (true) {
        bool done = true;
        for (size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < pl) {
                done = false;
                break;
            }
            digits[i] = 0;
        }
        if (done) throw check_failure("residue field: no non-square found");
        IntVec cand;
        for (long dgt : digits) cand.emplace_back(dgt);
        cand = mod_trim(std::move(cand));
        if (!is_square(cand)) return cand;
    }
}

}  // namespace cmhk
