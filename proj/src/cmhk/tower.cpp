#include "cmhk/tower.hpp"

#include <algorithm>

namespace cmhk {

namespace {

long combine_prec(long a, long b) {
    return std::min(a, b);
}

Rat canonical(Rat r) {
    r.canonicalize();
    return r;
}

// Inverse of a modulo (U, p^N), a invertible mod (U, p); Newton lift of the
// mod-p inverse.
IntVec invert_mod_u(const IntVec& a, const IntVec& u, const Int& p, long n) {
    auto [g, s, t] = mod_xgcd(mod_divmod(a, u, p).second, u, p);
    if (mod_degree(g) != 0) throw domain_error("layer element not invertible mod p");
    IntVec inv = s;
    long k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        Int pk = pow_int(p, static_cast<unsigned long>(k));
        IntVec prod = mod_divmod(mod_mul(a, inv, pk), u, pk).second;
        IntVec two_minus = mod_sub(IntVec{Int(2)}, prod, pk);
        inv = mod_divmod(mod_mul(inv, two_minus, pk), u, pk).second;
    }
    return inv;
}

}  // namespace

// ---------------------------------------------------------------- LayerElem

LayerElem::LayerElem(LayerPtr owner, std::vector<Rat> coords, long prec)
    : owner_(std::move(owner)), c_(std::move(coords)), prec_(prec) {
    if (static_cast<int>(c_.size()) != owner_->f()) throw domain_error("layer element arity mismatch");
    for (auto& x : c_) x = canonical(x);
}

bool LayerElem::is_exact_zero() const {
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool LayerElem::is_zero_at_precision() const {
    if (exact()) return is_exact_zero();
    for (const Rat& x : c_)
        if (x != 0 && vp(x, owner_->p()) < prec_) return false;
    return true;
}

std::optional<Rat> LayerElem::valuation() const {
    std::optional<Rat> v;
    for (const Rat& x : c_) {
        if (x == 0) continue;
        Rat vx(vp(x, owner_->p()));
        if (!v || vx < *v) v = vx;
    }
    if (!exact()) {
        // Certified margin of 2 digits below the working precision.
        if (!v || *v > Rat(prec_ - 2))
            throw precision_error("layer valuation indistinguishable from zero at working precision");
    }
    return v;
}

LayerElem LayerElem::frobenius() const {
    const auto& L = *owner_;
    if (L.f() == 1) return *this;
    // Rational scalars are fixed exactly.
    bool scalar = true;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) scalar = false;
    if (scalar) return *this;
    // Non-integral elements: scale into the integers by a power of p first.
    long shift = 0;
    for (const Rat& ci : c_)
        if (ci != 0) shift = std::max(shift, -vp(ci, L.p()));
    Rat scale(1);
    for (long s = 0; s < shift; ++s) scale *= Rat(L.p());
    // Evaluate the coordinate polynomial at phi(x) mod (U, p^N).
    Int pN = pow_int(L.p(), static_cast<unsigned long>(L.precision()));
    IntVec u = mod_from_rat(L.u_, pN);
    IntVec acc{};
    IntVec img = L.frob_image_;
    for (size_t i = c_.size(); i-- > 0;) {
        acc = mod_divmod(mod_mul(acc, img, pN), u, pN).second;
        Rat ci = canonical(c_[i] * scale);
        if (ci != 0) {
            Int num = mod_floor(Int(ci.get_num()), pN);
            Int rep = mod_floor(num * mod_inverse(Int(ci.get_den()), pN), pN);
            acc = mod_add(acc, IntVec{rep}, pN);
        }
    }
    std::vector<Rat> coords(static_cast<size_t>(L.f()), Rat(0));
    for (size_t i = 0; i < acc.size(); ++i) coords[i] = canonical(Rat(acc[i]) / scale);
    long prec = std::min(prec_, L.precision() - shift);
    if (prec < 8) throw precision_error("frobenius: precision exhausted by denominator scaling");
    return LayerElem(owner_, std::move(coords), prec);
}

LayerElem LayerElem::frobenius_power(int k) const {
    LayerElem r = *this;
    int m = ((k % owner_->f()) + owner_->f()) % owner_->f();
    for (int i = 0; i < m; ++i) r = r.frobenius();
    return r;
}

LayerElem LayerElem::inverse() const {
    if (!exact()) throw precision_error("inverse of a truncated layer element");
    if (is_exact_zero()) throw domain_error("inverse of zero");
    // Solve a * z = 1 by linear algebra over Q in the power basis.
    const auto& L = *owner_;
    int f = L.f();
    RatMatrix m(static_cast<size_t>(f), static_cast<size_t>(f), Rat(0));
    LayerElem pw = L.one();
    for (int j = 0; j < f; ++j) {
        LayerElem col = *this * pw;
        for (int i = 0; i < f; ++i) m(static_cast<size_t>(i), static_cast<size_t>(j)) = col.coords()[i];
        pw = pw * L.generator();
    }
    std::vector<Rat> rhs(static_cast<size_t>(f), Rat(0));
    rhs[0] = 1;
    return LayerElem(owner_, rat_solve(m, rhs));
}

LayerElem operator+(const LayerElem& a, const LayerElem& b) {
    if (a.owner_ != b.owner_) throw domain_error("layer mismatch");
    std::vector<Rat> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = canonical(a.c_[i] + b.c_[i]);
    return LayerElem(a.owner_, std::move(c), combine_prec(a.prec_, b.prec_));
}

LayerElem operator-(const LayerElem& a, const LayerElem& b) {
    if (a.owner_ != b.owner_) throw domain_error("layer mismatch");
    std::vector<Rat> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = canonical(a.c_[i] - b.c_[i]);
    return LayerElem(a.owner_, std::move(c), combine_prec(a.prec_, b.prec_));
}

LayerElem LayerElem::operator-() const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = canonical(-c_[i]);
    return LayerElem(owner_, std::move(c), prec_);
}

LayerElem operator*(const LayerElem& a, const LayerElem& b) {
    if (a.owner_ != b.owner_) throw domain_error("layer mismatch");
    const auto& L = *a.owner_;
    const int f = L.f();
    std::vector<Rat> prod(static_cast<size_t>(2 * f - 1), Rat(0));
    for (int i = 0; i < f; ++i) {
        if (a.c_[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < f; ++j)
            prod[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
    }
    // Reduce modulo the monic U.
    const auto& u = L.unram_poly().coeffs();
    for (int k = 2 * f - 2; k >= f; --k) {
        Rat lead = prod[static_cast<size_t>(k)];
        if (lead == 0) continue;
        prod[static_cast<size_t>(k)] = 0;
        for (int j = 0; j < f; ++j) prod[static_cast<size_t>(k - f + j)] -= lead * u[static_cast<size_t>(j)];
    }
    prod.resize(static_cast<size_t>(f));
    return LayerElem(a.owner_, std::move(prod), combine_prec(a.prec_, b.prec_));
}

bool operator==(const LayerElem& a, const LayerElem& b) {
    return (a - b).is_zero_at_precision();
}

LayerElem ring_zero_like(const LayerElem& x) {
    return x.owner()->zero();
}
LayerElem ring_one_like(const LayerElem& x) {
    return x.owner()->one();
}
bool ring_is_zero(const LayerElem& x) {
    return x.is_zero_at_precision();
}

// ----------------------------------------------------------- UnramifiedLayer

LayerPtr UnramifiedLayer::make(Int p, RatPoly unram_poly, long precision) {
    if (!is_prime(p)) throw domain_error("tower: p must be prime");
    if (precision < 8) throw domain_error("tower: precision too small");
    if (unram_poly.is_zero() || unram_poly.lead() != 1)
        throw domain_error("tower: unramified polynomial must be monic");
    for (const Rat& c : unram_poly.coeffs())
        if (c.get_den() != 1) throw domain_error("tower: unramified polynomial must be integral");

    auto layer = std::shared_ptr<UnramifiedLayer>(new UnramifiedLayer());
    layer->p_ = p;
    layer->f_ = unram_poly.degree();
    layer->u_ = unram_poly;
    layer->precision_ = precision;
    IntVec umodp = mod_from_rat(unram_poly, p);
    if (mod_degree(umodp) != layer->f_ || !mod_is_irreducible(umodp, p))
        throw domain_error("tower: unramified polynomial reducible mod p");
    layer->residue_ = std::make_shared<ResidueField>(p, umodp);

    // Frobenius lift: Newton iteration for the root of U congruent to x^p.
    if (layer->f_ == 1) {
        layer->frob_image_ = IntVec{mod_floor(Int(-unram_poly.coeffs()[0].get_num()),
                                              pow_int(p, static_cast<unsigned long>(precision)))};
    } else {
        IntVec u = mod_from_rat(unram_poly, pow_int(p, static_cast<unsigned long>(precision)));
        IntVec r = mod_pow_mod(IntVec{Int(0), Int(1)}, p, mod_from_rat(unram_poly, p), p);
        RatPoly du = unram_poly.derivative();
        long k = 1;
        IntVec uk = mod_from_rat(unram_poly, p);
        IntVec dr = mod_compose(mod_from_rat(du, p), r, uk, p);
        IntVec inv = invert_mod_u(dr, uk, p, 1);
        while (k < precision) {
            k = std::min(2 * k, precision);
            Int pk = pow_int(p, static_cast<unsigned long>(k));
            uk = mod_from_rat(unram_poly, pk);
            IntVec ur = mod_compose(mod_from_rat(unram_poly, pk), r, uk, pk);
            IntVec corr = mod_divmod(mod_mul(ur, inv, pk), uk, pk).second;
            r = mod_sub(r, corr, pk);
            IntVec dur = mod_compose(mod_from_rat(du, pk), r, uk, pk);
            IntVec prod = mod_divmod(mod_mul(dur, inv, pk), uk, pk).second;
            inv = mod_divmod(mod_mul(inv, mod_sub(IntVec{Int(2)}, prod, pk), pk), uk, pk).second;
        }
        layer->frob_image_ = r;
    }
    return layer;
}

LayerElem UnramifiedLayer::zero() const {
    return LayerElem(shared_from_this(), std::vector<Rat>(static_cast<size_t>(f_), Rat(0)));
}
LayerElem UnramifiedLayer::one() const {
    return from_rat(Rat(1));
}
LayerElem UnramifiedLayer::from_rat(const Rat& r) const {
    std::vector<Rat> c(static_cast<size_t>(f_), Rat(0));
    c[0] = r;
    return LayerElem(shared_from_this(), std::move(c));
}
LayerElem UnramifiedLayer::from_coords(std::vector<Rat> coords, long prec) const {
    return LayerElem(shared_from_this(), std::move(coords), prec);
}
LayerElem UnramifiedLayer::generator() const {
    std::vector<Rat> c(static_cast<size_t>(f_), Rat(0));
    if (f_ == 1)
        c[0] = -u_.coeffs()[0];
    else
        c[1] = 1;
    return LayerElem(shared_from_this(), std::move(c));
}
LayerElem UnramifiedLayer::frobenius_generator_image() const {
    std::vector<Rat> c(static_cast<size_t>(f_), Rat(0));
    for (size_t i = 0; i < frob_image_.size(); ++i) c[i] = Rat(frob_image_[i]);
    return LayerElem(shared_from_this(), std::move(c), precision_);
}

IntVec UnramifiedLayer::residue(const LayerElem& a) const {
    IntVec r;
    for (const Rat& c : a.coords()) {
        if (c == 0) {
            r.push_back(Int(0));
            continue;
        }
        if (vp(c, p_) < 0) throw domain_error("residue of a non-integral layer element");
        Int num = mod_floor(Int(c.get_num()), p_);
        r.push_back(mod_floor(num * mod_inverse(Int(c.get_den()), p_), p_));
    }
    return mod_trim(std::move(r));
}

LayerPtr UnramifiedLayer::rebuild(long new_precision) const {
    return make(p_, u_, new_precision);
}

// --------------------------------------------------------------- PadicTower

TowerPtr PadicTower::build(Int p, RatPoly unram_poly, std::vector<std::vector<Rat>> eis_coeffs,
                           long precision) {
    auto layer = UnramifiedLayer::make(std::move(p), std::move(unram_poly), precision);
    auto tower = std::shared_ptr<PadicTower>(new PadicTower());
    tower->layer_ = layer;
    tower->e_ = static_cast<int>(eis_coeffs.size());
    if (tower->e_ < 1) throw domain_error("tower: Eisenstein layer must have positive degree");
    for (auto& coeffs : eis_coeffs) tower->eis_.push_back(layer->from_coords(std::move(coeffs)));
    // Eisenstein conditions, exact: v(c_i) >= 1 for all i, v(c_0) = 1.
    for (int i = 0; i < tower->e_; ++i) {
        auto v = tower->eis_[static_cast<size_t>(i)].valuation();
        if (i == 0) {
            if (!v || *v != 1)
                throw domain_error("tower: constant Eisenstein coefficient must have valuation exactly 1");
        } else if (v && *v < 1) {
            throw domain_error("tower: Eisenstein coefficient of valuation < 1");
        }
    }
    return tower;
}

PadicElement PadicTower::zero() const {
    std::vector<LayerElem> c(static_cast<size_t>(e_), layer_->zero());
    return PadicElement(shared_from_this(), std::move(c));
}
PadicElement PadicTower::one() const {
    return from_rat(Rat(1));
}
PadicElement PadicTower::from_rat(const Rat& r) const {
    std::vector<LayerElem> c(static_cast<size_t>(e_), layer_->zero());
    c[0] = layer_->from_rat(r);
    return PadicElement(shared_from_this(), std::move(c));
}
PadicElement PadicTower::from_layer(const LayerElem& a) const {
    std::vector<LayerElem> c(static_cast<size_t>(e_), layer_->zero());
    c[0] = a;
    return PadicElement(shared_from_this(), std::move(c));
}
PadicElement PadicTower::from_coords(std::vector<LayerElem> coords) const {
    return PadicElement(shared_from_this(), std::move(coords));
}
PadicElement PadicTower::from_rat_coords(const std::vector<std::vector<Rat>>& coords) const {
    if (static_cast<int>(coords.size()) != e_) throw domain_error("element arity mismatch");
    std::vector<LayerElem> c;
    for (auto& v : coords) c.push_back(layer_->from_coords(v));
    return PadicElement(shared_from_this(), std::move(c));
}
PadicElement PadicTower::gen_x() const {
    return from_layer(layer_->generator());
}
PadicElement PadicTower::gen_y() const {
    if (e_ == 1) return from_layer(-eis_[0]);  // y = -c_0, the ramified layer is trivial
    std::vector<LayerElem> c(static_cast<size_t>(e_), layer_->zero());
    c[1] = layer_->one();
    return PadicElement(shared_from_this(), std::move(c));
}

std::vector<PadicElement> PadicTower::monomial_basis() const {
    std::vector<PadicElement> basis;
    PadicElement ypow = one();
    for (int i = 0; i < e_; ++i) {
        PadicElement xpow = ypow;
        for (int j = 0; j < f(); ++j) {
            basis.push_back(xpow);
            if (j + 1 < f()) xpow = xpow * gen_x();
        }
        if (i + 1 < e_) ypow = ypow * gen_y();
    }
    return basis;
}

std::vector<Rat> PadicTower::to_rat_coords(const PadicElement& a) const {
    if (!a.exact()) throw precision_error("rational coordinates of a truncated element");
    std::vector<Rat> out;
    for (const auto& le : a.coords())
        for (const Rat& r : le.coords()) out.push_back(r);
    return out;
}

PadicElement PadicTower::frobenius_lift(const PadicElement& a) const {
    for (size_t i = 1; i < a.coords().size(); ++i)
        if (!a.coords()[i].is_zero_at_precision())
            throw domain_error("frobenius_lift: element not in the unramified layer");
    return from_layer(a.coords()[0].frobenius());
}

RatMatrix PadicTower::multiplication_matrix(const PadicElement& a) const {
    if (!a.exact()) throw precision_error("multiplication matrix of a truncated element");
    int d = degree();
    auto basis = monomial_basis();
    RatMatrix m(static_cast<size_t>(d), static_cast<size_t>(d), Rat(0));
    for (int j = 0; j < d; ++j) {
        std::vector<Rat> col = to_rat_coords(a * basis[static_cast<size_t>(j)]);
        for (int i = 0; i < d; ++i) m(static_cast<size_t>(i), static_cast<size_t>(j)) = col[static_cast<size_t>(i)];
    }
    return m;
}

Rat PadicTower::trace_to_base(const PadicElement& a) const {
    return trace(multiplication_matrix(a));
}
Rat PadicTower::norm_to_base(const PadicElement& a) const {
    return det(multiplication_matrix(a));
}

namespace {

Matrix<LayerElem> layer_mult_matrix(const PadicTower& t, const PadicElement& a) {
    int e = t.e();
    Matrix<LayerElem> m(static_cast<size_t>(e), static_cast<size_t>(e), t.layer()->zero());
    PadicElement pw = t.one();
    for (int j = 0; j < e; ++j) {
        PadicElement col = a * pw;
        for (int i = 0; i < e; ++i) m(static_cast<size_t>(i), static_cast<size_t>(j)) = col.coords()[static_cast<size_t>(i)];
        if (j + 1 < e) pw = pw * t.gen_y();
    }
    return m;
}

}  // namespace

LayerElem PadicTower::trace_to_layer(const PadicElement& a) const {
    return trace(layer_mult_matrix(*this, a));
}
LayerElem PadicTower::norm_to_layer(const PadicElement& a) const {
    return det(layer_mult_matrix(*this, a));
}

IntVec PadicTower::residue(const PadicElement& a) const {
    auto v = a.valuation();
    if (v && *v < 0) throw domain_error("residue of a non-integral element");
    // Higher y-digits have positive valuation; only coordinate 0 survives.
    return layer_->residue(a.coords()[0]);
}

TowerPtr PadicTower::rebuild(long new_precision) const {
    std::vector<std::vector<Rat>> eis;
    for (const auto& c : eis_) eis.push_back(c.coords());
    return build(p(), layer_->unram_poly(), std::move(eis), new_precision);
}

// ------------------------------------------------------------- PadicElement

PadicElement::PadicElement(TowerPtr owner, std::vector<LayerElem> coords)
    : owner_(std::move(owner)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != owner_->e()) throw domain_error("element arity mismatch");
}

long PadicElement::precision() const {
    long p = kExactPrecision;
    for (const auto& le : c_) p = combine_prec(p, le.precision());
    return p;
}

bool PadicElement::is_exact_zero() const {
    for (const auto& le : c_)
        if (!le.is_exact_zero()) return false;
    return true;
}

bool PadicElement::is_zero_at_precision() const {
    for (const auto& le : c_)
        if (!le.is_zero_at_precision()) return false;
    return true;
}

std::optional<Rat> PadicElement::valuation() const {
    const int e = owner_->e();
    std::optional<Rat> best;
    for (int i = 0; i < e; ++i) {
        const auto& le = c_[static_cast<size_t>(i)];
        if (le.is_exact_zero()) continue;
        auto v = le.valuation();  // may raise precision_error for truncated digits
        Rat step(i, e);
        step.canonicalize();
        Rat total = *v + step;
        if (!best || total < *best) best = total;
    }
    return best;
}

PadicElement operator+(const PadicElement& a, const PadicElement& b) {
    if (a.owner_ != b.owner_) throw domain_error("tower mismatch");
    std::vector<LayerElem> c;
    for (size_t i = 0; i < a.c_.size(); ++i) c.push_back(a.c_[i] + b.c_[i]);
    return PadicElement(a.owner_, std::move(c));
}
PadicElement operator-(const PadicElement& a, const PadicElement& b) {
    if (a.owner_ != b.owner_) throw domain_error("tower mismatch");
    std::vector<LayerElem> c;
    for (size_t i = 0; i < a.c_.size(); ++i) c.push_back(a.c_[i] - b.c_[i]);
    return PadicElement(a.owner_, std::move(c));
}
PadicElement PadicElement::operator-() const {
    std::vector<LayerElem> c;
    for (const auto& le : c_) c.push_back(-le);
    return PadicElement(owner_, std::move(c));
}

PadicElement operator*(const PadicElement& a, const PadicElement& b) {
    if (a.owner_ != b.owner_) throw domain_error("tower mismatch");
    const auto& t = *a.owner_;
    const int e = t.e();
    std::vector<LayerElem> prod(static_cast<size_t>(2 * e - 1), t.layer()->zero());
    for (int i = 0; i < e; ++i) {
        if (a.c_[static_cast<size_t>(i)].is_exact_zero()) continue;
        for (int j = 0; j < e; ++j)
            prod[static_cast<size_t>(i + j)] =
                prod[static_cast<size_t>(i + j)] + a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
    }
    // y^e = -(c_0 + c_1 y + ... + c_{e-1} y^{e-1})
    for (int k = 2 * e - 2; k >= e; --k) {
        LayerElem lead = prod[static_cast<size_t>(k)];
        if (lead.is_exact_zero()) continue;
        prod[static_cast<size_t>(k)] = t.layer()->zero();
        for (int j = 0; j < e; ++j)
            prod[static_cast<size_t>(k - e + j)] =
                prod[static_cast<size_t>(k - e + j)] - lead * t.eis_coeffs()[static_cast<size_t>(j)];
    }
    prod.resize(static_cast<size_t>(e), t.layer()->zero());
    return PadicElement(a.owner_, std::move(prod));
}

bool operator==(const PadicElement& a, const PadicElement& b) {
    return (a - b).is_zero_at_precision();
}

PadicElement PadicElement::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    PadicElement acc = owner_->one();
    PadicElement base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

PadicElement PadicElement::inverse() const {
    if (!exact()) throw precision_error("inverse of a truncated element");
    if (is_exact_zero()) throw domain_error("inverse of zero");
    const auto& t = *owner_;
    RatMatrix m = t.multiplication_matrix(*this);
    std::vector<Rat> rhs(static_cast<size_t>(t.degree()), Rat(0));
    rhs[0] = 1;
    std::vector<Rat> sol = rat_solve(m, rhs);
    std::vector<LayerElem> c;
    int f = t.f();
    for (int i = 0; i < t.e(); ++i) {
        std::vector<Rat> li(sol.begin() + i * f, sol.begin() + (i + 1) * f);
        c.push_back(t.layer()->from_coords(std::move(li)));
    }
    return PadicElement(owner_, std::move(c));
}

}  // namespace cmhk
