#pragma once

#include "cmhk/poly.hpp"

namespace cmhk {

// Lifts a factorization of f mod p to mod p^precision.
//
// f must be monic with p-integral rational coefficients; the seed factors must
// be monic, pairwise coprime mod p, with product congruent to f mod p.
// Each output is congruent to its seed mod p and the product of the outputs is
// congruent to f mod p^precision. Coefficients are returned in [0, p^precision).
std::vector<IntVec> hensel_factor(const RatPoly& f, const std::vector<IntVec>& seeds, const Int& p,
                                  long precision);

// Single Newton-Hensel root lift: r0 a simple root of f mod p, returns the
// root mod p^precision.
Int hensel_root(const IntVec& f, const Int& r0, const Int& p, long precision);

}  // namespace cmhk
