#pragma once

#include "cmhk/normres.hpp"
#include "cmhk/qform.hpp"

namespace cmhk {

// One-dimensional F-vector space with a quadratic form whose adjoint law is
// the involution; determined up to isomorphism by the gauge class in
// F_0^x / N(F^x).
struct CMQuadraticSpace {
    TowerPtr tower;
    Involution star;
    PadicElement gauge;  // nonzero, exact, fixed by star

    static CMQuadraticSpace make(TowerPtr tower, Involution star, PadicElement gauge);
};

// Gram matrix of q(v) = Tr_{F0/Q}(a N(v)) on the given Q-basis of the tower:
// Gram(i,j) = (1/2) Tr_{F/Q}(a e_i* e_j). Defaults to the monomial basis.
QuadraticFormQ trace_form_gram(const CMQuadraticSpace& space);
QuadraticFormQ trace_form_gram(const CMQuadraticSpace& space, const std::vector<PadicElement>& basis);

// Adjoint law b(g x, y) = b(x, g* y) for both tower generators, given the
// Gram matrix, the generator action matrices, and the involution matrix on
// the same basis. False is a report, not an error.
bool adjoint_check(const RatMatrix& gram, const RatMatrix& action_x, const RatMatrix& action_y,
                   const RatMatrix& star_matrix);

// Recovers the gauge class from a Gram matrix and generator actions: the
// unique a in F_0 with b(v0, t v0) = Tr_{F0/Q}(a t) for all t in F_0, with
// v0 the first basis vector. Changing basis moves a by a norm, so only the
// class is contractual.
PadicElement gauge_recover(const TowerPtr& tower, const Involution& star, const RatMatrix& gram,
                           const RatMatrix& action_x, const RatMatrix& action_y);

enum class CMClass { trivial, nontrivial };
CMClass cm_classify(const CMQuadraticSpace& space);

struct CMCompareReport {
    bool isomorphic = false;
    bool disc_equal = false;
    int eps_p_1 = 0, eps_p_2 = 0;
};
// Isomorphism of two spaces over the same (F, *): gauge-ratio norm test,
// cross-checked against the rational-form invariants at p. A disagreement
// between the two routes is a check_failure, never a report.
CMCompareReport cm_compare(const CMQuadraticSpace& s1, const CMQuadraticSpace& s2);

}  // namespace cmhk
