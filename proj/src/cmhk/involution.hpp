#pragma once

#include "cmhk/tower.hpp"

namespace cmhk {

// An order-two ring automorphism of a tower, given by exact images of the two
// generators. Carries the derived data of the quadratic extension F/F_0:
// fixed and minus eigenspaces, ramification type, and the square-class
// generator delta with F = F_0(sqrt(delta)).
class Involution {
public:
    // Validates that the images define a ring automorphism of order two with
    // fixed space of dimension d/2; names the failed axiom otherwise.
    static Involution build(TowerPtr tower, const PadicElement& image_x, const PadicElement& image_y);

    const TowerPtr& tower() const { return tower_; }
    const RatMatrix& matrix() const { return mat_; }

    PadicElement apply(const PadicElement& a) const;

    // F/F_0 data. Ramified iff the induced involution on the residue field is
    // trivial.
    bool ramified() const { return ramified_; }
    int e0() const { return e0_; }
    int f0() const { return f0_; }

    // Exact rational coordinate bases (monomial coordinates) of the +1 / -1
    // eigenspaces.
    const std::vector<std::vector<Rat>>& fixed_basis() const { return fixed_basis_; }
    const std::vector<std::vector<Rat>>& minus_basis() const { return minus_basis_; }

    bool is_fixed(const PadicElement& a) const;

    // Deterministic nonzero z with z* = -z, and delta = z^2 in F_0.
    const PadicElement& minus_generator() const { return z_; }
    const PadicElement& delta() const { return delta_; }

    // Fixed-field presentation: a primitive element of F_0 over Q and its
    // minimal polynomial (degree d/2).
    const PadicElement& primitive_element() const { return primitive_; }
    const RatPoly& minimal_polynomial() const { return min_poly_; }

    // F_0-valuation of a nonzero fixed element (integer, v(p) = e0 scaling).
    long valuation_f0(const PadicElement& a) const;

    Involution rebase(const TowerPtr& t) const;  // same data on a rebuilt tower

private:
    Involution() = default;
    PadicElement apply_raw(const PadicElement& a, const RatMatrix& m) const;
    TowerPtr tower_;
    PadicElement img_x_, img_y_;
    RatMatrix mat_;
    long prec_adjust_ = 0;  // floor of the most negative entry valuation
    bool ramified_ = false;
    int e0_ = 0, f0_ = 0;
    std::vector<std::vector<Rat>> fixed_basis_, minus_basis_;
    PadicElement z_, delta_;
    PadicElement primitive_;
    RatPoly min_poly_;
};

}  // namespace cmhk
