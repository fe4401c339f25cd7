#pragma once

#include <limits>
#include <memory>
#include <optional>

#include "cmhk/matrix.hpp"
#include "cmhk/residue.hpp"

namespace cmhk {

inline constexpr long kExactPrecision = std::numeric_limits<long>::max();
inline constexpr long kDefaultPrecision = 50;

class UnramifiedLayer;
using LayerPtr = std::shared_ptr<const UnramifiedLayer>;

// Element of the unramified layer F_a = Q_p[x]/(U). Coordinates are exact
// rationals; prec < kExactPrecision marks a representative that is only
// trusted modulo p^prec (Frobenius images and their descendants).
class LayerElem {
public:
    LayerElem() = default;
    LayerElem(LayerPtr owner, std::vector<Rat> coords, long prec = kExactPrecision);

    const LayerPtr& owner() const { return owner_; }
    const std::vector<Rat>& coords() const { return c_; }
    long precision() const { return prec_; }
    bool exact() const { return prec_ == kExactPrecision; }

    bool is_exact_zero() const;
    // Zero at the working precision: every coordinate has vp >= prec.
    bool is_zero_at_precision() const;

    // min over nonzero coordinates of vp; nullopt for exact zero. Raises
    // precision_error when a truncated element cannot be separated from zero.
    std::optional<Rat> valuation() const;

    LayerElem frobenius() const;              // entrywise power of the layer Frobenius lift
    LayerElem frobenius_power(int k) const;   // phi^k
    LayerElem inverse() const;                // exact elements only

    friend LayerElem operator+(const LayerElem& a, const LayerElem& b);
    friend LayerElem operator-(const LayerElem& a, const LayerElem& b);
    friend LayerElem operator*(const LayerElem& a, const LayerElem& b);
    LayerElem operator-() const;
    friend bool operator==(const LayerElem& a, const LayerElem& b);

private:
    LayerPtr owner_;
    std::vector<Rat> c_;
    long prec_ = kExactPrecision;
};

// F_a = Q_p[x]/(U), U monic integral of degree f, irreducible mod p, carried
// with working precision N for the Frobenius lift.
class UnramifiedLayer : public std::enable_shared_from_this<UnramifiedLayer> {
public:
    static LayerPtr make(Int p, RatPoly unram_poly, long precision);

    const Int& p() const { return p_; }
    int f() const { return f_; }
    long precision() const { return precision_; }
    const RatPoly& unram_poly() const { return u_; }
    const ResidueField& residue_field() const { return *residue_; }

    LayerElem zero() const;
    LayerElem one() const;
    LayerElem from_rat(const Rat& r) const;
    LayerElem from_coords(std::vector<Rat> coords, long prec = kExactPrecision) const;
    LayerElem generator() const;  // the class of x
    // Image of the generator under the Frobenius lift, valid mod p^precision.
    LayerElem frobenius_generator_image() const;

    // Residue of a p-integral element in the residue field.
    IntVec residue(const LayerElem& a) const;

    LayerPtr rebuild(long new_precision) const;

private:
    UnramifiedLayer() = default;
    Int p_;
    int f_ = 0;
    RatPoly u_;
    long precision_ = 0;
    std::shared_ptr<ResidueField> residue_;
    IntVec frob_image_;  // coords of phi(x) in [0, p^N)
    friend class LayerElem;
};

class PadicTower;
using TowerPtr = std::shared_ptr<const PadicTower>;

// Element of the tower F = F_a[y]/(E), nested representation: coordinate i is
// the layer coefficient of y^i, 0 <= i < e.
class PadicElement {
public:
    PadicElement() = default;
    PadicElement(TowerPtr owner, std::vector<LayerElem> coords);

    const TowerPtr& owner() const { return owner_; }
    const std::vector<LayerElem>& coords() const { return c_; }
    long precision() const;
    bool exact() const { return precision() == kExactPrecision; }

    bool is_exact_zero() const;
    bool is_zero_at_precision() const;

    // Exact valuation in the v(p) = 1 normalization, values in (1/e)Z.
    // Distinct fractional parts of the y-digit layers make this exact for
    // exact elements; truncated elements raise precision_error near zero.
    std::optional<Rat> valuation() const;

    PadicElement inverse() const;  // exact elements only

    friend PadicElement operator+(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator-(const PadicElement& a, const PadicElement& b);
    friend PadicElement operator*(const PadicElement& a, const PadicElement& b);
    PadicElement operator-() const;
    friend bool operator==(const PadicElement& a, const PadicElement& b);

    PadicElement pow(long k) const;

private:
    TowerPtr owner_;
    std::vector<LayerElem> c_;
};

enum class Subfield { Base, UnramifiedLayer };

// A finite extension of Q_p presented as unramified layer (degree f) plus
// Eisenstein layer (degree e), with an exact global polynomial model
// Q[x, y]/(U(x), E(x, y)). Traces, norms and Gram matrices of exact elements
// are exact rationals; p-adic truncation enters only through the Frobenius
// lift and the residue/valuation decision procedures.
class PadicTower : public std::enable_shared_from_this<PadicTower> {
public:
    // eis_poly: monic of degree e over the layer; coefficient i is given by
    // f rational coordinates. Rejects non-Eisenstein data.
    static TowerPtr build(Int p, RatPoly unram_poly, std::vector<std::vector<Rat>> eis_coeffs,
                          long precision);

    const Int& p() const { return layer_->p(); }
    int e() const { return e_; }
    int f() const { return layer_->f(); }
    int degree() const { return e_ * layer_->f(); }
    long precision() const { return layer_->precision(); }
    const LayerPtr& layer() const { return layer_; }
    const std::vector<LayerElem>& eis_coeffs() const { return eis_; }

    PadicElement zero() const;
    PadicElement one() const;
    PadicElement from_rat(const Rat& r) const;
    PadicElement from_layer(const LayerElem& a) const;
    PadicElement from_coords(std::vector<LayerElem> coords) const;
    PadicElement from_rat_coords(const std::vector<std::vector<Rat>>& coords) const;
    PadicElement gen_x() const;  // unramified generator
    PadicElement gen_y() const;  // Eisenstein generator (uniformizer, v = 1/e)

    // Monomial basis x^j y^i in index order i*f + j.
    std::vector<PadicElement> monomial_basis() const;
    std::vector<Rat> to_rat_coords(const PadicElement& a) const;  // exact elements

    // Frobenius lift on the unramified layer; domain_error off the layer.
    PadicElement frobenius_lift(const PadicElement& a) const;

    // Trace and norm to the base or to the unramified layer, as trace and
    // determinant of the multiplication matrix.
    Rat trace_to_base(const PadicElement& a) const;
    Rat norm_to_base(const PadicElement& a) const;
    LayerElem trace_to_layer(const PadicElement& a) const;
    LayerElem norm_to_layer(const PadicElement& a) const;

    // Multiplication matrix on the rational monomial basis (exact elements).
    RatMatrix multiplication_matrix(const PadicElement& a) const;

    // Residue in the layer residue field; requires v(a) >= 0 and certainty at
    // the working precision.
    IntVec residue(const PadicElement& a) const;

    TowerPtr rebuild(long new_precision) const;

private:
    PadicTower() = default;
    LayerPtr layer_;
    int e_ = 0;
    std::vector<LayerElem> eis_;  // c_0 .. c_{e-1}, exact
    friend class PadicElement;
};

// Customization points for Poly/Matrix over layer elements.
LayerElem ring_zero_like(const LayerElem& x);
LayerElem ring_one_like(const LayerElem& x);
bool ring_is_zero(const LayerElem& x);

}  // namespace cmhk
