#include "cmhk/lubintate.hpp"

#include <random>
#include <sstream>

namespace cmhk {

namespace {

Matrix<LayerElem> companion_of_eisenstein(const PadicTower& t) {
    int e = t.e();
    Matrix<LayerElem> c(static_cast<size_t>(e), static_cast<size_t>(e), t.layer()->zero());
    for (int i = 0; i + 1 < e; ++i) c(static_cast<size_t>(i) + 1, static_cast<size_t>(i)) = t.layer()->one();
    for (int i = 0; i < e; ++i)
        c(static_cast<size_t>(i), static_cast<size_t>(e) - 1) = -t.eis_coeffs()[static_cast<size_t>(i)];
    return c;
}

}  // namespace

LubinTateModule build_D_pi(const TowerPtr& tower) {
    const PadicTower& t = *tower;
    int e = t.e(), f = t.f(), r = e * f;
    Matrix<LayerElem> c = companion_of_eisenstein(t);
    Matrix<LayerElem> a(static_cast<size_t>(r), static_cast<size_t>(r), t.layer()->zero());
    // top-right e x e block = C; identity block of size e(f-1) below-left
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j)
            a(static_cast<size_t>(i), static_cast<size_t>(e * (f - 1) + j)) = c(static_cast<size_t>(i), static_cast<size_t>(j));
    for (int i = 0; i < e * (f - 1); ++i) a(static_cast<size_t>(e + i), static_cast<size_t>(i)) = t.layer()->one();

    std::vector<std::pair<long, long>> jumps;
    if (r > 1) jumps.push_back({0, r - 1});
    jumps.push_back({1, 1});
    FilteredPhiModule mod = FilteredPhiModule::make(t.layer(), std::move(a), std::move(jumps));
    return LubinTateModule{tower, std::move(mod), std::move(c)};
}

Matrix<LayerElem> f_action_embed(const Matrix<LayerElem>& m, int f) {
    size_t e = m.rows();
    if (m.cols() != e) throw domain_error("f_action_embed: square input required");
    Matrix<LayerElem> big(e * static_cast<size_t>(f), e * static_cast<size_t>(f),
                          ring_zero_like(m(0, 0)));
    Matrix<LayerElem> block = m;
    for (int k = 0; k < f; ++k) {
        for (size_t i = 0; i < e; ++i)
            for (size_t j = 0; j < e; ++j)
                big(static_cast<size_t>(k) * e + i, static_cast<size_t>(k) * e + j) = block(i, j);
        if (k + 1 < f) block = frobenius_matrix(block);
    }
    return big;
}

namespace {

bool commutes_semilinearly(const Matrix<LayerElem>& mtilde, const Matrix<LayerElem>& a) {
    return mtilde * a == a * frobenius_matrix(mtilde);
}

bool matrices_commute(const Matrix<LayerElem>& x, const Matrix<LayerElem>& y) {
    return x * y == y * x;
}

}  // namespace

LTStructureReport verify_structure(const LubinTateModule& lt, unsigned long seed) {
    const PadicTower& t = *lt.tower;
    int e = t.e(), f = t.f();
    LTStructureReport rep;
    const Matrix<LayerElem>& c = lt.companion;
    const Matrix<LayerElem>& a = lt.module.frob;

    Matrix<LayerElem> ident = Matrix<LayerElem>::identity(static_cast<size_t>(e), t.layer()->one());
    std::vector<Matrix<LayerElem>> gens{c, c * c, c + ident};
    rep.commutation_ok = true;
    for (const auto& m : gens)
        if (!commutes_semilinearly(f_action_embed(m, f), a)) rep.commutation_ok = false;

    rep.pi_equals_phi_f = (phi_power_matrix(lt.module) == f_action_embed(c, f));

    if (e == 1) {
        rep.negative_control_ok = true;  // every 1x1 matrix commutes; control is vacuous
    } else {
        std::mt19937_64 rng(seed ^ 0xD1571ULL);
        rep.negative_control_ok = false;
        for (int tries = 0; tries < 64 && !rep.negative_control_ok; ++tries) {
            Matrix<LayerElem> m(static_cast<size_t>(e), static_cast<size_t>(e), t.layer()->zero());
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < e; ++j)
                    m(static_cast<size_t>(i), static_cast<size_t>(j)) =
                        t.layer()->from_rat(Rat(static_cast<long>(rng() % 7) - 3));
            if (matrices_commute(m, c)) continue;
            if (!commutes_semilinearly(f_action_embed(m, f), a)) rep.negative_control_ok = true;
        }
    }

    rep.pass = rep.commutation_ok && rep.pi_equals_phi_f && rep.negative_control_ok;
    std::ostringstream d;
    d << "commutation " << (rep.commutation_ok ? "ok" : "FAIL") << "; pi = phi^f "
      << (rep.pi_equals_phi_f ? "ok" : "FAIL") << "; negative control "
      << (rep.negative_control_ok ? "ok" : "FAIL");
    rep.detail = d.str();
    if (!rep.pass) throw check_failure("lubin-tate structure: " + rep.detail);
    return rep;
}

LTPolygonReport verify_polygons(const LubinTateModule& lt) {
    const PadicTower& t = *lt.tower;
    int e = t.e(), f = t.f(), r = e * f;
    LTPolygonReport rep;
    rep.newton = newton_polygon_module(lt.module);
    rep.hodge = hodge_polygon(lt.module);

    Rat expected_slope(1, static_cast<long>(r));
    expected_slope.canonicalize();
    auto segs = rep.newton.segments();
    rep.newton_ok = (segs.size() == 1 && segs[0].slope == expected_slope && segs[0].length == r);

    auto hsegs = rep.hodge.segments();
    if (r == 1) {
        rep.hodge_ok = (hsegs.size() == 1 && hsegs[0].slope == 1 && hsegs[0].length == 1);
    } else {
        rep.hodge_ok = (hsegs.size() == 2 && hsegs[0].slope == 0 && hsegs[0].length == r - 1 &&
                        hsegs[1].slope == 1 && hsegs[1].length == 1);
    }

    LayerElem dphi = det(phi_power_matrix(lt.module));
    rep.det_valuation_ok = (dphi.valuation().value() == Rat(f));

    auto cert = admissibility_certificate(lt.module);
    rep.certificate_ok = (cert.verdict == Admissibility::certified_admissible);

    rep.pass = rep.newton_ok && rep.hodge_ok && rep.det_valuation_ok && rep.certificate_ok;
    std::ostringstream d;
    d << "newton " << (rep.newton_ok ? "ok" : "FAIL") << "; hodge " << (rep.hodge_ok ? "ok" : "FAIL")
      << "; det valuation " << (rep.det_valuation_ok ? "ok" : "FAIL") << "; certificate "
      << (rep.certificate_ok ? "ok" : "FAIL") << " (" << cert.reason << ")";
    rep.detail = d.str();
    return rep;
}

size_t commutant_dimension(const Matrix<LayerElem>& companion) {
    size_t e = companion.rows();
    LayerElem zero = ring_zero_like(companion(0, 0));
    // MC - CM = 0: e^2 equations in e^2 unknowns over the layer field.
    Matrix<LayerElem> sys(e * e, e * e, zero);
    for (size_t i = 0; i < e; ++i)
        for (size_t j = 0; j < e; ++j) {
            size_t eq = i * e + j;
            // (MC)_{ij} = sum_k M_{ik} C_{kj}; (CM)_{ij} = sum_k C_{ik} M_{kj}
            for (size_t k = 0; k < e; ++k) {
                sys(eq, i * e + k) = sys(eq, i * e + k) + companion(k, j);
                sys(eq, k * e + j) = sys(eq, k * e + j) - companion(i, k);
            }
        }
    return e * e - layer_rank(sys);
}

bool cyclic_vector_spans(const LubinTateModule& lt) {
    const PadicTower& t = *lt.tower;
    int r = t.e() * t.f();
    Matrix<LayerElem> pi_action = f_action_embed(lt.companion, t.f());
    // Orbit of e_1 under powers of the pi-action, over the layer.
    Matrix<LayerElem> orbit(static_cast<size_t>(r), static_cast<size_t>(r), t.layer()->zero());
    std::vector<LayerElem> v(static_cast<size_t>(r), t.layer()->zero());
    v[0] = t.layer()->one();
    for (int k = 0; k < r; ++k) {
        for (int i = 0; i < r; ++i) orbit(static_cast<size_t>(i), static_cast<size_t>(k)) = v[static_cast<size_t>(i)];
        // v <- pi_action * v
        std::vector<LayerElem> nv(static_cast<size_t>(r), t.layer()->zero());
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                nv[static_cast<size_t>(i)] =
                    nv[static_cast<size_t>(i)] + pi_action(static_cast<size_t>(i), static_cast<size_t>(j)) * v[static_cast<size_t>(j)];
        v = std::move(nv);
    }
    return layer_rank(orbit) == static_cast<size_t>(r);
}

}  // namespace cmhk
