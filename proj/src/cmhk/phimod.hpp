#pragma once

#include "cmhk/filtered.hpp"
#include "cmhk/polygon.hpp"
#include "cmhk/tower.hpp"

namespace cmhk {

// Semilinear Frobenius module over the unramified layer with a Hodge jump
// multiset. The Newton polygon lives on the linearized phi^f with slopes
// divided by f, in the v(p) = 1 normalization.
struct FilteredPhiModule {
    LayerPtr layer;
    Matrix<LayerElem> frob;                         // invertible r x r
    std::vector<std::pair<long, long>> hodge_jumps;  // (weight, multiplicity)
    bool cm_symmetric_tag = false;                   // arises from a symmetric filtered-CM space

    int rank() const { return static_cast<int>(frob.rows()); }

    static FilteredPhiModule make(LayerPtr layer, Matrix<LayerElem> frob,
                                  std::vector<std::pair<long, long>> hodge_jumps,
                                  bool cm_symmetric_tag = false);
};

// Entrywise Frobenius of a layer matrix.
Matrix<LayerElem> frobenius_matrix(const Matrix<LayerElem>& m);

// A phi(A) ... phi^{f-1}(A): the matrix of the linear operator phi^f.
Matrix<LayerElem> phi_power_matrix(const FilteredPhiModule& d);

LowerPolygon newton_polygon_module(const FilteredPhiModule& d);
LowerPolygon hodge_polygon(const FilteredPhiModule& d);

enum class Admissibility { certified_admissible, certified_inadmissible, unknown };

struct AdmissibilityCertificate {
    Admissibility verdict = Admissibility::unknown;
    std::string reason;
};

// Weak-admissibility certificate:
//   certified_inadmissible  when the polygon heights differ or Newton dips
//                           below Hodge;
//   certified_admissible    when heights match, Newton >= Hodge, and the
//                           Newton polygon is a single segment through no
//                           interior lattice point (no subobject can
//                           violate the bound), or via the F-equivariant
//                           route for tagged modules (flat polygons);
//   unknown                 otherwise - an honest output, since enumerating
//                           subobjects is out of reach.
AdmissibilityCertificate admissibility_certificate(const FilteredPhiModule& d);

// Equivalence with the weight calculus: identity Frobenius on a basis fixed
// by phi, Hodge jumps = weight multiset; requires a symmetric space.
FilteredPhiModule from_filtered_cm(const FilteredCMSpace& v, LayerPtr layer);

// Rank of a layer-entried matrix by Gaussian elimination (exact entries).
size_t layer_rank(Matrix<LayerElem> m);

}  // namespace cmhk
