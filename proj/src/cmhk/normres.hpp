#pragma once

#include "cmhk/involution.hpp"

namespace cmhk {

// Exact square test in the tower: even valuation plus a certified unit-part
// test (residue character for odd p, Hensel bound pi^(2e+1) for p = 2).
bool is_square(const PadicElement& x);

// Norm-group membership x in N_{F/F_0}(F^x) for the quadratic extension cut
// out by the involution. Case split:
//   unramified F/F_0      -> parity of the F_0-valuation,
//   ramified, p odd       -> tame symbol via the residue character,
//   ramified, p = 2       -> rational Hilbert symbol when F_0 = Q_p, else a
//                            certified digit search at the Hensel margin.
// x must lie in the fixed field.
bool is_norm(const PadicElement& x, const Involution& star);

enum class ReciprocitySymbol { identity, star };
// Image of x under the reciprocity map F_0^x -> Gal(F/F_0).
ReciprocitySymbol reciprocity_symbol(const PadicElement& x, const Involution& star);

struct DworkWitnessReport {
    std::vector<Rat> u_coords;  // layer coordinates of the selected unit
    bool frobenius_negates = false;  // phi^f(c) = -c for c = sqrt(u)
    bool cc_star_is_u = false;       // c c* = u under the ramified extension of *
    bool u_not_norm = false;         // is_norm(u) = false
    bool pass = false;
    std::string detail;
};
// The finite shadow of the Dwork reciprocity computation for a tame ramified
// quadratic extension with pi* = -pi: picks a non-square-residue unit u of
// F_0, models c = sqrt(u) in the unramified quadratic extension of the layer,
// and verifies phi^f(c) = -c, c c* = u, and that u is not a norm.
DworkWitnessReport dwork_tame_witness(const Involution& star);

// Wrapper applying the single retry-at-doubled-precision policy to a
// computation that may throw precision_error.
template <class F>
auto with_precision_retry(const TowerPtr& tower, F&& run) {
    try {
        return run(tower);
    } catch (const precision_error&) {
        TowerPtr wider = tower->rebuild(2 * tower->precision());
        return run(wider);
    }
}

}  // namespace cmhk
