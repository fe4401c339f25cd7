#include "cmhk/involution.hpp"

#include <random>

namespace cmhk {

namespace {

PadicElement from_flat_coords(const PadicTower& t, const std::vector<Rat>& flat) {
    std::vector<std::vector<Rat>> nested;
    int f = t.f();
    for (int i = 0; i < t.e(); ++i)
        nested.emplace_back(flat.begin() + i * f, flat.begin() + (i + 1) * f);
    return t.from_rat_coords(nested);
}

// Minimal polynomial over Q of an exact element, by the first linear relation
// among its powers.
RatPoly minimal_polynomial_of(const PadicTower& t, const PadicElement& a) {
    int d = t.degree();
    std::vector<std::vector<Rat>> powers;
    PadicElement pw = t.one();
    powers.push_back(t.to_rat_coords(pw));
    for (int k = 1; k <= d; ++k) {
        pw = pw * a;
        powers.push_back(t.to_rat_coords(pw));
        // Solve c_0 v_0 + ... + c_{k-1} v_{k-1} = -v_k if possible.
        RatMatrix m(static_cast<size_t>(d), static_cast<size_t>(k), Rat(0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < k; ++j)
                m(static_cast<size_t>(i), static_cast<size_t>(j)) = powers[static_cast<size_t>(j)][static_cast<size_t>(i)];
        std::vector<Rat> rhs(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) rhs[static_cast<size_t>(i)] = -powers[static_cast<size_t>(k)][static_cast<size_t>(i)];
        try {
            std::vector<Rat> sol = rat_solve(m, rhs);
            sol.push_back(Rat(1));
            return RatPoly(std::move(sol));
        } catch (const domain_error&) {
            continue;  // no relation at degree k yet
        }
    }
    throw check_failure("minimal polynomial: no relation up to the field degree");
}

}  // namespace

Involution Involution::build(TowerPtr tower, const PadicElement& image_x, const PadicElement& image_y) {
    const PadicTower& t = *tower;
    if (!image_x.exact() || !image_y.exact())
        throw domain_error("involution: generator images must be exact");
    Involution inv;
    inv.tower_ = tower;
    inv.img_x_ = image_x;
    inv.img_y_ = image_y;

    // Ring-map axiom: U(x*) = 0 and E*(y*) = 0, where E* twists the layer
    // coefficients through the x-image.
    const RatPoly& u = t.layer()->unram_poly();
    PadicElement ux = t.zero();
    {
        PadicElement acc = t.zero();
        for (size_t i = u.coeffs().size(); i-- > 0;) acc = acc * image_x + t.from_rat(u.coeffs()[i]);
        ux = acc;
    }
    if (!ux.is_exact_zero()) throw domain_error("involution: image of x is not a root of the unramified polynomial");

    auto star_layer = [&](const LayerElem& c) {
        // c is a polynomial in x; evaluate at the image of x.
        PadicElement acc = t.zero();
        for (size_t i = c.coords().size(); i-- > 0;) acc = acc * image_x + t.from_rat(c.coords()[i]);
        return acc;
    };
    {
        // E*(y*) = y*^e + sum star(c_i) y*^i
        PadicElement val = t.zero();
        PadicElement pw = t.one();
        for (int i = 0; i < t.e(); ++i) {
            val = val + star_layer(t.eis_coeffs()[static_cast<size_t>(i)]) * pw;
            pw = pw * image_y;
        }
        val = val + pw;  // pw = y*^e
        if (!val.is_exact_zero())
            throw domain_error("involution: image of y is not a root of the conjugated Eisenstein polynomial");
    }

    // Matrix on the monomial basis.
    int d = t.degree();
    auto basis_images = [&]() {
        std::vector<PadicElement> imgs;
        PadicElement ypw = t.one();
        for (int i = 0; i < t.e(); ++i) {
            PadicElement cur = ypw;
            for (int j = 0; j < t.f(); ++j) {
                imgs.push_back(cur);
                if (j + 1 < t.f()) cur = cur * image_x;
            }
            if (i + 1 < t.e()) ypw = ypw * image_y;
        }
        return imgs;
    }();
    RatMatrix m(static_cast<size_t>(d), static_cast<size_t>(d), Rat(0));
    for (int j = 0; j < d; ++j) {
        auto col = t.to_rat_coords(basis_images[static_cast<size_t>(j)]);
        for (int i = 0; i < d; ++i) m(static_cast<size_t>(i), static_cast<size_t>(j)) = col[static_cast<size_t>(i)];
    }
    inv.mat_ = m;

    RatMatrix ident = RatMatrix::identity(static_cast<size_t>(d), Rat(1));
    if (m == ident) throw domain_error("involution: map is the identity (non-trivial axiom)");
    if (!(m * m == ident)) throw domain_error("involution: map does not have order two");

    // Eigenspaces.
    inv.fixed_basis_ = rat_kernel(m - ident);
    inv.minus_basis_ = rat_kernel(m + ident);
    if (static_cast<int>(inv.fixed_basis_.size()) != d / 2)
        throw domain_error("involution: fixed subspace does not have dimension d/2");
    if (static_cast<int>(inv.minus_basis_.size()) != d / 2)
        throw check_failure("involution: eigenspace dimensions inconsistent");

    long adj = 0;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) adj = std::min(adj, vp(m(i, j), t.p()));
    inv.prec_adjust_ = adj;

    // Ramification type from the residue action: x is a unit for f >= 2, and
    // the residue field is generated by its class.
    if (t.f() == 1) {
        inv.ramified_ = true;
    } else {
        IntVec rx = t.residue(t.gen_x());
        IntVec rsx = t.residue(image_x);
        inv.ramified_ = (rx == rsx);
    }
    if (inv.ramified_) {
        if (t.e() % 2 != 0) throw check_failure("involution: ramified quadratic with odd e");
        inv.e0_ = t.e() / 2;
        inv.f0_ = t.f();
    } else {
        if (t.f() % 2 != 0) throw check_failure("involution: unramified quadratic with odd f");
        inv.e0_ = t.e();
        inv.f0_ = t.f() / 2;
    }

    // Deterministic minus-eigenvector and delta = z^2 in F_0.
    inv.z_ = from_flat_coords(t, inv.minus_basis_[0]);
    inv.delta_ = inv.z_ * inv.z_;

    // Primitive element of the fixed field: w + w* for w = x + y, then y*y,
    // then seeded small combinations of the fixed basis.
    std::vector<PadicElement> candidates;
    {
        PadicElement w = t.gen_x() + t.gen_y();
        candidates.push_back(w + inv.apply_raw(w, m));
        candidates.push_back(t.gen_y() * inv.apply_raw(t.gen_y(), m));
        std::mt19937_64 rng(0x5eedULL);
        for (int tr = 0; tr < 40; ++tr) {
            std::vector<Rat> flat(static_cast<size_t>(d), Rat(0));
            for (auto& b : inv.fixed_basis_) {
                long cscale = static_cast<long>(rng() % 7) - 3;
                for (int i = 0; i < d; ++i) flat[static_cast<size_t>(i)] += Rat(cscale) * b[static_cast<size_t>(i)];
            }
            candidates.push_back(from_flat_coords(t, flat));
        }
    }
    bool found = false;
    for (auto& cand : candidates) {
        if (cand.is_exact_zero()) continue;
        RatPoly mp = minimal_polynomial_of(t, cand);
        if (mp.degree() == d / 2) {
            inv.primitive_ = cand;
            inv.min_poly_ = mp;
            found = true;
            break;
        }
    }
    if (!found) throw check_failure("involution: no primitive element of the fixed field found");
    return inv;
}

PadicElement Involution::apply(const PadicElement& a) const {
    return apply_raw(a, mat_);
}

PadicElement Involution::apply_raw(const PadicElement& a, const RatMatrix& m) const {
    const PadicTower& t = *(a.owner());
    int d = t.degree(), f = t.f();
    // Flat coordinates (works for truncated elements too; precision follows).
    std::vector<Rat> flat;
    long prec = a.precision();
    for (const auto& le : a.coords())
        for (const Rat& r : le.coords()) flat.push_back(r);
    std::vector<Rat> out(static_cast<size_t>(d), Rat(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (m(static_cast<size_t>(i), static_cast<size_t>(j)) != 0)
                out[static_cast<size_t>(i)] += m(static_cast<size_t>(i), static_cast<size_t>(j)) * flat[static_cast<size_t>(j)];
    long nprec = (prec == kExactPrecision) ? kExactPrecision : prec + prec_adjust_;
    std::vector<LayerElem> coords;
    for (int i = 0; i < t.e(); ++i) {
        std::vector<Rat> li(out.begin() + i * f, out.begin() + (i + 1) * f);
        coords.push_back(t.layer()->from_coords(std::move(li), nprec));
    }
    return t.from_coords(std::move(coords));
}

bool Involution::is_fixed(const PadicElement& a) const {
    return (apply(a) - a).is_zero_at_precision();
}

long Involution::valuation_f0(const PadicElement& a) const {
    auto v = a.valuation();
    if (!v) throw domain_error("F_0 valuation of zero");
    Rat scaled = *v * Rat(e0_);
    scaled.canonicalize();
    if (scaled.get_den() != 1) throw check_failure("fixed element with non-integral F_0 valuation");
    return scaled.get_num().get_si();
}

Involution Involution::rebase(const TowerPtr& t) const {
    auto lift = [&](const PadicElement& a) {
        std::vector<std::vector<Rat>> nested;
        for (const auto& le : a.coords()) nested.push_back(le.coords());
        return t->from_rat_coords(nested);
    };
    return build(t, lift(img_x_), lift(img_y_));
}

}  // namespace cmhk
