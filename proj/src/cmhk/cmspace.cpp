#include "cmhk/cmspace.hpp"

namespace cmhk {

CMQuadraticSpace CMQuadraticSpace::make(TowerPtr tower, Involution star, PadicElement gauge) {
    if (!gauge.exact()) throw domain_error("cm space: gauge must be exact");
    if (gauge.is_exact_zero()) throw domain_error("cm space: gauge must be nonzero");
    if (!star.is_fixed(gauge)) throw domain_error("cm space: gauge not fixed by the involution");
    return CMQuadraticSpace{std::move(tower), std::move(star), std::move(gauge)};
}

QuadraticFormQ trace_form_gram(const CMQuadraticSpace& space) {
    return trace_form_gram(space, space.tower->monomial_basis());
}

QuadraticFormQ trace_form_gram(const CMQuadraticSpace& space, const std::vector<PadicElement>& basis) {
    const PadicTower& t = *space.tower;
    size_t d = static_cast<size_t>(t.degree());
    if (basis.size() != d) throw domain_error("trace form: basis size mismatch");
    RatMatrix g(d, d, Rat(0));
    std::vector<PadicElement> starred;
    starred.reserve(d);
    for (const auto& b : basis) starred.push_back(space.star.apply(b));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) {
            Rat v = t.trace_to_base(space.gauge * starred[i] * basis[j]) / 2;
            g(i, j) = v;
            g(j, i) = v;
        }
    try {
        return QuadraticFormQ(std::move(g));
    } catch (const domain_error&) {
        throw domain_error("trace form degenerate: zero gauge or broken model");
    }
}

bool adjoint_check(const RatMatrix& gram, const RatMatrix& action_x, const RatMatrix& action_y,
                   const RatMatrix& star_matrix) {
    auto holds = [&](const RatMatrix& m) {
        RatMatrix conj = star_matrix * m * star_matrix;  // multiplication by g*
        return m.transpose() * gram == gram * conj;
    };
    return holds(action_x) && holds(action_y);
}

PadicElement gauge_recover(const TowerPtr& tower, const Involution& star, const RatMatrix& gram,
                           const RatMatrix& action_x, const RatMatrix& action_y) {
    const PadicTower& t = *tower;
    size_t d = static_cast<size_t>(t.degree());
    if (gram.rows() != d) throw domain_error("gauge_recover: dimension mismatch");
    if (!adjoint_check(gram, action_x, action_y, star.matrix()))
        throw domain_error("gauge_recover: adjoint law fails for the given action");

    // Matrix of multiplication by a tower element, as a polynomial in the
    // generator actions.
    auto action_of = [&](const PadicElement& elem) {
        RatMatrix acc(d, d, Rat(0));
        RatMatrix ypow = RatMatrix::identity(d, Rat(1));
        for (int i = 0; i < t.e(); ++i) {
            const LayerElem& le = elem.coords()[static_cast<size_t>(i)];
            RatMatrix xpow = ypow;
            for (int j = 0; j < t.f(); ++j) {
                const Rat& c = le.coords()[static_cast<size_t>(j)];
                if (c != 0) {
                    RatMatrix scaled = xpow.map([&](const Rat& v) { return Rat(v * c); });
                    acc = acc + scaled;
                }
                if (j + 1 < t.f()) xpow = action_x * xpow;
            }
            if (i + 1 < t.e()) ypow = action_y * ypow;
        }
        return acc;
    };

    // Fixed-field basis as tower elements.
    std::vector<PadicElement> f0_basis;
    for (const auto& flat : star.fixed_basis()) {
        std::vector<std::vector<Rat>> nested;
        for (int i = 0; i < t.e(); ++i)
            nested.emplace_back(flat.begin() + i * t.f(), flat.begin() + (i + 1) * t.f());
        f0_basis.push_back(t.from_rat_coords(nested));
    }
    size_t h = f0_basis.size();

    // Solve sum_l a_l Tr_{F0/Q}(t_l t_k) = b(v0, t_k v0).
    RatMatrix pairing(h, h, Rat(0));
    for (size_t l = 0; l < h; ++l)
        for (size_t k = 0; k < h; ++k)
            pairing(l, k) = t.trace_to_base(f0_basis[l] * f0_basis[k]) / 2;
    std::vector<Rat> rhs(h, Rat(0));
    for (size_t k = 0; k < h; ++k) {
        RatMatrix mk = action_of(f0_basis[k]);
        // b(e_0, mk e_0) = (gram * mk)(0, 0)
        Rat acc(0);
        for (size_t j = 0; j < d; ++j) acc += gram(0, j) * mk(j, 0);
        rhs[k] = acc;
    }
    std::vector<Rat> sol;
    try {
        sol = rat_solve(pairing.transpose(), rhs);
    } catch (const domain_error&) {
        throw check_failure("gauge_recover: singular trace pairing (broken model)");
    }
    PadicElement a = t.zero();
    for (size_t l = 0; l < h; ++l) a = a + f0_basis[l] * t.from_rat(sol[l]);
    if (a.is_exact_zero()) throw check_failure("gauge_recover: recovered zero gauge");
    return a;
}

CMClass cm_classify(const CMQuadraticSpace& space) {
    return is_norm(space.gauge, space.star) ? CMClass::trivial : CMClass::nontrivial;
}

CMCompareReport cm_compare(const CMQuadraticSpace& s1, const CMQuadraticSpace& s2) {
    if (s1.tower != s2.tower) throw domain_error("cm_compare: spaces live over different towers");
    CMCompareReport rep;
    PadicElement ratio = s1.gauge * s2.gauge.inverse();
    rep.isomorphic = is_norm(ratio, s1.star);

    QuadraticFormQ f1 = trace_form_gram(s1);
    QuadraticFormQ f2 = trace_form_gram(s2);
    rep.disc_equal = (f1.discriminant() == f2.discriminant());
    if (!rep.disc_equal)
        throw check_failure("cm_compare: trace-form discriminants differ for a common (F,*)");
    PlaceQ pl = PlaceQ::prime(s1.tower->p());
    rep.eps_p_1 = epsilon(f1, pl);
    rep.eps_p_2 = epsilon(f2, pl);
    if (rep.isomorphic != (rep.eps_p_1 == rep.eps_p_2))
        throw check_failure("cm_compare: gauge-norm test disagrees with the Hasse invariants");
    return rep;
}

}  // namespace cmhk
