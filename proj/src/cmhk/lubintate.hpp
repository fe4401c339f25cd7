#pragma once

#include "cmhk/phimod.hpp"

namespace cmhk {

// The rank-ef filtered phi-module attached to the uniformizer of a tower:
// block Frobenius matrix built from the companion matrix of the Eisenstein
// polynomial, Hodge jumps {0: ef-1, 1: 1}.
struct LubinTateModule {
    TowerPtr tower;
    FilteredPhiModule module;
    Matrix<LayerElem> companion;  // e x e companion of the Eisenstein polynomial
};

LubinTateModule build_D_pi(const TowerPtr& tower);

// Diag(M, phi M, ..., phi^{f-1} M) of an e x e layer matrix.
Matrix<LayerElem> f_action_embed(const Matrix<LayerElem>& m, int f);

struct LTStructureReport {
    bool commutation_ok = false;      // M~ A = A phi(M~) for M in {C, C^2, C+1}
    bool pi_equals_phi_f = false;     // phi^f matrix = Diag(C, phi C, ...)
    bool negative_control_ok = false; // a non-commuting M fails the identity (vacuous for e = 1)
    bool pass = false;
    std::string detail;
};
LTStructureReport verify_structure(const LubinTateModule& lt, unsigned long seed = 0);

struct LTPolygonReport {
    LowerPolygon newton, hodge;
    bool newton_ok = false;       // single slope 1/(ef) with multiplicity ef
    bool hodge_ok = false;        // {0: ef-1, 1: 1}
    bool det_valuation_ok = false;  // v(det phi^f) = f
    bool certificate_ok = false;    // certified_admissible
    bool pass = false;
    std::string detail;
};
LTPolygonReport verify_polygons(const LubinTateModule& lt);

// Dimension over the layer of the space of e x e layer matrices commuting
// with the companion matrix (cyclicity gives e).
size_t commutant_dimension(const Matrix<LayerElem>& companion);

// The orbit of the first basis vector under the joint algebra generated by
// the pi-action and the layer spans the module.
bool cyclic_vector_spans(const LubinTateModule& lt);

}  // namespace cmhk
